#include <doctest.h>

#include "shiftkit/cover.hpp"
#include "shiftkit/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

using namespace shiftkit;

namespace {

const Alphabet kBin = Alphabet::binary();

SftSpec golden_mean() { return SftSpec(kBin, {parse_word(kBin, "11")}); }
SftSpec h3() {
    return SftSpec(kBin, {parse_word(kBin, "11"), parse_word(kBin, "1001")});
}

// Membership by plain avoidance, with no defining words attached, so scans
// must rediscover the forbidden set breadth-first.  Valid for golden mean and
// h3: their forbidden words start and end with 1, so padding with 0s extends
// any avoiding word bi-infinitely.
SubshiftOracle member_only(const SftSpec& spec, int horizon) {
    std::vector<Word> words = spec.forbidden.words();
    return SubshiftOracle(spec.alphabet(), horizon, "member_only",
                          [words](const Word& w) { return avoids(w, words); });
}

bool subset_of(const std::vector<Word>& small, const std::vector<Word>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

TEST_CASE("oracle membership from a forbidden set") {
    SubshiftOracle o = oracle_from_spec(golden_mean(), 8);
    CHECK(o.horizon() == 8);
    CHECK(o.member(Word{}));
    CHECK(o.member(parse_word(kBin, "0101")));
    CHECK_FALSE(o.member(parse_word(kBin, "011")));
    CHECK(o.member_extend(parse_word(kBin, "0100")));
    CHECK_FALSE(o.member_extend(parse_word(kBin, "011")));
    CHECK_THROWS_AS(o.member(parse_word(kBin, "010101010")), Error);  // beyond horizon
    REQUIRE(o.defining_words().has_value());
    CHECK(*o.defining_words() == golden_mean().forbidden);
    o.spot_check_factor_closed();
}

TEST_CASE("forbidden word recovery agrees across routes") {
    // direct route: the oracle carries its defining words
    SubshiftOracle fast = oracle_from_spec(h3(), 10);
    ForbiddenSet via_fast = forbidden_up_to(fast, 6);
    // breadth-first route from bare membership
    ForbiddenSet via_bfs = forbidden_up_to(member_only(h3(), 10), 6);
    CHECK(via_fast == via_bfs);
    CHECK(via_fast == h3().forbidden);

    CHECK(forbidden_up_to(member_only(golden_mean(), 8), 5) == golden_mean().forbidden);
    // cut below the word length: nothing found yet
    CHECK(forbidden_up_to(fast, 3) == ForbiddenSet(kBin, {parse_word(kBin, "11")}));
    CHECK(forbidden_up_to(fast, 1).words().empty());
}

TEST_CASE("oracle slices match the sft language") {
    for (const SftSpec& spec : {golden_mean(), h3()}) {
        SubshiftOracle o = oracle_from_spec(spec, 8);
        for (int n = 1; n <= 6; ++n) CHECK(oracle_slice(o, n) == language_slice(spec, n));
    }
}

TEST_CASE("scan caps are enforced") {
    ScanOptions tight;
    tight.level_cap = 3;
    SubshiftOracle o = member_only(golden_mean(), 8);
    CHECK_THROWS_AS(forbidden_up_to(o, 6, tight), CapExceeded);
    CHECK_THROWS_AS(oracle_slice(o, 6, tight), CapExceeded);
}

TEST_CASE("cover stages nest and stabilize") {
    for (const char* name : {"golden_mean", "h1", "h3", "sturmian"}) {
        CAPTURE(name);
        SubshiftOracle o =
            make_builtin_oracle(name, {{"horizon", "10"}});
        for (int n = 1; n <= 6; ++n) {
            CoverStage lo = cover_stage(o, n), hi = cover_stage(o, n + 1);
            CHECK(lo.n == n);
            for (int len = 1; len <= 5; ++len) {
                auto big = language_slice(lo.spec, len);
                auto small = language_slice(hi.spec, len);
                CHECK(subset_of(small, big));
                CHECK(subset_of(oracle_slice(o, len), small));  // X stays inside
            }
        }
    }
    // SFT oracles collapse onto the shift once every forbidden word is seen
    SubshiftOracle gh = oracle_from_spec(h3(), 10);
    CoverStage saturated = cover_stage(gh, 5);
    CHECK(saturated.spec == h3());
    CHECK(stage_equal(gh, 4, 3));
    CHECK_FALSE(stage_equal(gh, 3, 1));
}

TEST_CASE("language stability scan") {
    SubshiftOracle gm = oracle_from_spec(golden_mean(), 10);
    LanguageScan s = language_stability_scan(gm, 10);
    CHECK(s.horizon == 10);
    CHECK(s.break_lengths == std::vector<int>{2});
    REQUIRE(s.runs.size() == 2);
    CHECK(s.runs[0] == std::pair<int, int>(1, 1));
    CHECK(s.runs[1] == std::pair<int, int>(2, 10));

    SubshiftOracle st = make_builtin_oracle("sturmian", {{"horizon", "8"}});
    LanguageScan ss = language_stability_scan(st, 8);
    CHECK(std::find(ss.break_lengths.begin(), ss.break_lengths.end(), 2) !=
          ss.break_lengths.end());
    CHECK(std::find(ss.break_lengths.begin(), ss.break_lengths.end(), 3) !=
          ss.break_lengths.end());
    // runs tile [1, horizon] and break exactly at the recorded lengths
    int expect_next = 1;
    for (auto [a, b] : ss.runs) {
        CHECK(a == expect_next);
        CHECK(b >= a);
        expect_next = b + 1;
        if (a > 1)
            CHECK(std::find(ss.break_lengths.begin(), ss.break_lengths.end(), a) !=
                  ss.break_lengths.end());
    }
    CHECK(expect_next == 9);
}

TEST_CASE("entropy stability scan on the golden mean") {
    SubshiftOracle o = oracle_from_spec(golden_mean(), 10);
    EntropyScan scan = entropy_stability_scan(o, 0.1, 4, 1, 8);
    REQUIRE(scan.rows.size() == 8);
    // X_1 is the full shift, X_2 onward is the golden mean itself
    const EntropyScanRow& r1 = scan.rows[0];
    CHECK_FALSE(r1.stages_equal);
    CHECK(std::abs(r1.drop - 0.211935355500341862) < 1e-11);
    CHECK(r1.s_m_words == 2);
    CHECK(r1.corollary_ok);
    for (size_t i = 1; i < scan.rows.size(); ++i) {
        const EntropyScanRow& r = scan.rows[i];
        CHECK_FALSE(r.skipped);
        CHECK(r.stages_equal);
        CHECK(r.drop == 0.0);
        CHECK(r.within_threshold);
        CHECK(std::abs(r.h_m - std::log((1.0 + std::sqrt(5.0)) / 2.0)) < 1e-11);
    }
    CHECK_THROWS_AS(entropy_stability_scan(o, 0.1, 4, 1, 10), Error);  // horizon too small
}

TEST_CASE("zero drop coincides with equal stages") {
    for (const char* name : {"golden_mean", "h1", "h3", "sturmian"}) {
        CAPTURE(name);
        SubshiftOracle o = make_builtin_oracle(name, {{"horizon", "9"}});
        EntropyScan scan = entropy_stability_scan(o, 0.1, 4, 1, 7);
        for (const EntropyScanRow& r : scan.rows) {
            if (r.skipped) continue;
            CAPTURE(r.m);
            CHECK((std::abs(r.drop) < 1e-10) == r.stages_equal);
            bool expect_within = r.drop <= 0.0 || std::log(r.drop) < r.threshold_log;
            CHECK(r.within_threshold == expect_within);
            if (!r.stages_equal) CHECK(r.corollary_ok);
        }
    }
}

TEST_CASE("period stability certificates") {
    SubshiftOracle o = oracle_from_spec(golden_mean(), 24);
    auto cert = period_stability_scan(o, 3, 21, 6);
    REQUIRE(cert.has_value());
    CHECK(cert->kind == "period");
    CHECK(cert->m == 3);
    CHECK(cert->n == 2);
    CHECK(cert->p == 1);
    REQUIRE(cert->witness.size() == 1);
    CHECK(cert->witness[0].period_word == parse_word(kBin, "0"));
    CHECK(verify_certificate(o, *cert));

    StabilityCertificate bad = *cert;
    bad.witness[0] = PeriodicOrbit(parse_word(kBin, "01"));
    CHECK_FALSE(verify_certificate(o, bad));
    bad = *cert;
    bad.n = 1;
    CHECK_FALSE(verify_certificate(o, bad));

    std::string j = certificate_json(*cert, o.alphabet());
    StabilityCertificate back = certificate_from_json(j, o.alphabet());
    CHECK(back.kind == cert->kind);
    CHECK(back.m == cert->m);
    CHECK(back.n == cert->n);
    CHECK(back.p == cert->p);
    CHECK(back.witness == cert->witness);
    CHECK(back.oracle_provenance == cert->oracle_provenance);
    CHECK(back.n_max == cert->n_max);
    CHECK(back.p_max == cert->p_max);
    CHECK(verify_certificate(o, back));
}

TEST_CASE("stage orbits") {
    SubshiftOracle o = oracle_from_spec(golden_mean(), 12);
    auto full = stage_orbits(o, 1, 1);  // X_1 is the full shift
    REQUIRE(full.size() == 2);
    auto fixed = stage_orbits(o, 2, 1);
    REQUIRE(fixed.size() == 1);
    CHECK(fixed[0].period_word == parse_word(kBin, "0"));
    CHECK(stage_orbits(o, 2, 2).size() == 1);
}

TEST_CASE("builtin oracle registry") {
    auto names = builtin_oracle_names();
    for (const char* want : {"golden_mean", "full_shift", "h1", "h2", "h3", "sturmian",
                             "x3_stage", "product"})
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
    CHECK_THROWS_AS(make_builtin_oracle("nope"), Error);
    CHECK_THROWS_AS(make_builtin_oracle("golden_mean", {{"bogus", "1"}}), Error);
    CHECK_THROWS_AS(make_builtin_oracle("golden_mean", {{"horizon", "ten"}}), Error);

    SubshiftOracle full = make_builtin_oracle("full_shift", {{"alphabet_size", "3"}});
    CHECK(full.alphabet().size() == 3);
    CHECK(full.member(parse_word(full.alphabet(), "0120")));

    SubshiftOracle h2 = make_builtin_oracle("h2", {{"horizon", "6"}});
    CHECK_FALSE(h2.member(parse_word(kBin, "11")));
    CHECK(h2.member(parse_word(kBin, "101")));
}

TEST_CASE("oracle spec text forms") {
    SubshiftOracle b = parse_oracle_spec("builtin: golden_mean\nhorizon: 10\n");
    CHECK(b.horizon() == 10);
    CHECK_FALSE(b.member(parse_word(kBin, "110")));

    SubshiftOracle e = parse_oracle_spec(
        "# comment line\n"
        "alphabet: 01\n"
        "horizon: 8\n"
        "forbidden:\n"
        "11\n"
        "1001  # trailing comment\n");
    REQUIRE(e.defining_words().has_value());
    CHECK(*e.defining_words() == h3().forbidden);
    CHECK(e.horizon() == 8);

    // marker line is optional
    SubshiftOracle e2 = parse_oracle_spec("alphabet: 01\n11\n");
    CHECK(*e2.defining_words() == golden_mean().forbidden);
    CHECK(e2.horizon() == 24);

    CHECK_THROWS_AS(parse_oracle_spec("builtin: golden_mean\nhorizon: 8\nhorizon: 9\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_oracle_spec("builtin: golden_mean\n11\n"), ParseError);
    CHECK_THROWS_AS(parse_oracle_spec("horizon: 8\n11\n"), ParseError);  // no alphabet

    const char* path = "oracle_spec_roundtrip.txt";
    {
        std::ofstream out(path);
        out << "builtin: h3\nhorizon: 9\n";
    }
    SubshiftOracle loaded = load_oracle(path);
    CHECK(loaded.horizon() == 9);
    CHECK_FALSE(loaded.member(parse_word(kBin, "1001")));
    std::remove(path);
}
