#include "shiftkit/constructions.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

namespace shiftkit {

QuadraticIrrational::QuadraticIrrational(BigInt a_, BigInt b_, BigInt c_, BigInt d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (c == 0) throw Error("quadratic irrational: zero denominator");
    if (d < 0) throw Error("quadratic irrational: negative radicand");
    if (c < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    if (b == 0) {
        d = 0;
    } else if (mpz_perfect_square_p(d.get_mpz_t())) {
        BigInt r;
        mpz_sqrt(r.get_mpz_t(), d.get_mpz_t());
        a += b * r;
        b = 0;
        d = 0;
    }
}

bool QuadraticIrrational::is_rational() const { return b == 0; }

int QuadraticIrrational::sign() const {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    BigInt lhs = a * a, rhs = b * b * d;
    if (lhs == rhs) return 0;
    if (sa > 0) return lhs > rhs ? 1 : -1;  // a > 0, b < 0
    return rhs > lhs ? 1 : -1;              // a < 0, b > 0
}

double QuadraticIrrational::approx() const {
    return (a.get_d() + b.get_d() * std::sqrt(d.get_d())) / c.get_d();
}

QuadraticIrrational QuadraticIrrational::plus_int(const BigInt& n) const {
    return QuadraticIrrational(a + n * c, b, c, d);
}

QuadraticIrrational QuadraticIrrational::times_int(const BigInt& n) const {
    return QuadraticIrrational(a * n, b * n, c, d);
}

QuadraticIrrational QuadraticIrrational::operator+(const QuadraticIrrational& o) const {
    BigInt dd;
    if (b == 0)
        dd = o.d;
    else if (o.b == 0)
        dd = d;
    else if (d == o.d)
        dd = d;
    else
        throw Error("quadratic irrational: mixed radicands");
    return QuadraticIrrational(a * o.c + o.a * c, b * o.c + o.b * c, c * o.c, dd);
}

BigInt QuadraticIrrational::floor() const {
    BigInt m(std::floor(approx()));
    while (plus_int(-m).sign() < 0) --m;
    while (plus_int(-(m + 1)).sign() >= 0) ++m;
    return m;
}

SturmianParams SturmianParams::defaults() {
    return make_sturmian_params(QuadraticIrrational(3, -1, 2, 5),
                                QuadraticIrrational(0, 0, 1, 0));
}

SturmianParams make_sturmian_params(QuadraticIrrational slope,
                                    QuadraticIrrational intercept) {
    if (slope.is_rational()) throw Error("sturmian slope must be irrational");
    if (slope.times_int(3).plus_int(-1).sign() <= 0)
        throw Error("sturmian slope must exceed 1/3");
    if (slope.times_int(2).plus_int(-1).sign() >= 0)
        throw Error("sturmian slope must be below 1/2");
    if (intercept.b != 0 && intercept.d != slope.d)
        throw Error("sturmian intercept must share the slope radicand");
    return SturmianParams{std::move(slope), std::move(intercept)};
}

namespace {

BigInt mech_floor(const SturmianParams& p, long long n) {
    return (p.slope.times_int(BigInt(static_cast<long>(n))) + p.intercept).floor();
}

// Streams y(start), y(start+1), ... reusing the previous floor.
class MechStream {
public:
    MechStream(const SturmianParams& p, long long start)
        : p_(p), n_(start), prev_(mech_floor(p, start)) {}

    Symbol next() {
        BigInt nf = mech_floor(p_, n_ + 1);
        BigInt diff = nf - prev_;
        if (diff < 0 || diff > 1) throw InternalCheckFailed("mechanical letter out of range");
        prev_ = std::move(nf);
        ++n_;
        return diff == 1 ? 1u : 0u;
    }

private:
    const SturmianParams& p_;
    long long n_;
    BigInt prev_;
};

}  // namespace

Word sturmian_letters(const SturmianParams& p, long long i_from, long long i_to) {
    if (i_from > i_to) throw Error("sturmian_letters: empty range");
    std::vector<Symbol> out;
    out.reserve(static_cast<size_t>(i_to - i_from + 1));
    MechStream stream(p, i_from);
    for (long long n = i_from; n <= i_to; ++n) out.push_back(stream.next());
    return Word(std::move(out));
}

Word type1_word(const SturmianParams& p, int n) {
    if (n < 1) throw Error("type1_word: n must be >= 1");
    Word ones(std::vector<Symbol>{1, 1, 1});
    return ones + sturmian_letters(p, 1, 4LL * n) + ones;
}

bool factor_absent(const Word& w, const SturmianParams& p, uint64_t slide_cap) {
    if (w.empty()) return false;
    for (Symbol s : w.letters)
        if (s > 1) throw Error("factor_absent: word not binary");
    const size_t n = w.size();
    std::set<std::vector<Symbol>> factors;
    std::vector<Symbol> window;
    window.reserve(n);
    MechStream stream(p, 1);
    for (size_t i = 0; i < n; ++i) window.push_back(stream.next());
    uint64_t slides = 0;
    while (true) {
        if (window == w.letters) return false;
        factors.insert(window);
        if (factors.size() == n + 1) return true;  // factor set complete, w not in it
        if (++slides > slide_cap)
            throw CapExceeded("factor_absent: slide cap hit before the factor set completed");
        window.erase(window.begin());
        window.push_back(stream.next());
    }
}

Word ray_window(const SturmianParams& p, const Word& w, long long lo, long long hi) {
    if (lo > hi) throw Error("ray_window: empty range");
    const long long len = static_cast<long long>(w.size());
    std::vector<Symbol> out;
    out.reserve(static_cast<size_t>(hi - lo + 1));
    if (lo <= 0) {
        long long top = std::min(hi, 0LL);
        Word left = sturmian_letters(p, 1 + lo, 1 + top);
        out.insert(out.end(), left.letters.begin(), left.letters.end());
    }
    for (long long i = std::max(lo, 1LL); i <= std::min(hi, len); ++i)
        out.push_back(w[static_cast<size_t>(i - 1)]);
    if (hi >= len + 1) {
        long long bottom = std::max(lo, len + 1);
        Word right = sturmian_letters(p, bottom - len, hi - len);
        out.insert(out.end(), right.letters.begin(), right.letters.end());
    }
    return Word(std::move(out));
}

namespace {

struct QualifyingOrbit {
    PeriodicOrbit orbit;
    int period = 0;
};

// Least minimal period, then lexicographically least orbit, whose cyclic
// word contains pattern and avoids exclude.
std::optional<QualifyingOrbit> find_qualifying_orbit(const SftSpec& current,
                                                     const Word& pattern,
                                                     const Word& exclude, int period_cap) {
    for (int q = 1; q <= period_cap; ++q) {
        for (const auto& orb : periodic_orbits_direct(current, q)) {
            if (cyclic_occurrences(pattern, orb.period_word) == 0) continue;
            if (!exclude.empty() && cyclic_occurrences(exclude, orb.period_word) != 0)
                continue;
            return QualifyingOrbit{orb, q};
        }
    }
    return std::nullopt;
}

}  // namespace

EliminationResult eliminate_periodic_stage(const SftSpec& current, const Word& pattern,
                                           bool pattern_suffix, int mult,
                                           const SturmianParams& p, const Word& exclude,
                                           long long chain_len,
                                           const EliminationCaps& caps) {
    if (pattern.empty()) throw Error("eliminate_periodic_stage: empty pattern");
    if (mult < 1) throw Error("eliminate_periodic_stage: multiplier must be >= 1");
    auto q = find_qualifying_orbit(current, pattern, exclude, caps.period_cap);
    if (!q)
        throw Error("eliminate_periodic_stage: no qualifying orbit with period <= " +
                    std::to_string(caps.period_cap));

    const Word& base = q->orbit.period_word;
    const int period = q->period;
    int offset = -1;
    for (int i = 0; i < period && offset < 0; ++i) {
        bool hit = true;
        for (size_t j = 0; j < pattern.size(); ++j) {
            if (base[(i + j) % period] != pattern[j]) {
                hit = false;
                break;
            }
        }
        if (hit) offset = i;
    }
    size_t copies = (pattern.size() + period - 1) / static_cast<size_t>(period);
    if (copies == 0) copies = 1;
    Word unit = base.rotated(static_cast<size_t>(offset)).repeated(copies);

    int k = 0;
    for (int trial = 1; trial <= caps.repeat_cap; ++trial) {
        if (factor_absent(unit.repeated(static_cast<size_t>(trial)), p)) {
            k = trial;
            break;
        }
    }
    if (k == 0)
        throw CapExceeded("eliminate_periodic_stage: repeat cap hit in the factor search");
    const long long ulen = static_cast<long long>(unit.size());
    // The repeat count also clears the chain-length rule: k more copies stay
    // absent from the mechanical word, so raising k preserves the certificate.
    if (pattern_suffix) {
        if (ulen * k <= chain_len) k = static_cast<int>(chain_len / ulen) + 1;
    } else {
        if (ulen * mult * k <= chain_len)
            k = static_cast<int>(chain_len / (ulen * mult)) + 1;
    }

    EliminationStep step;
    step.pattern = pattern;
    step.exclude = exclude;
    step.orbit = base;
    step.orbit_period = period;
    step.unit = unit;
    step.repeats = k;
    step.multiplier = mult;
    step.pattern_suffix = pattern_suffix;
    step.chain_len = chain_len;
    step.emitted = unit.repeated(static_cast<size_t>(mult) * static_cast<size_t>(k));
    if (pattern_suffix) step.emitted = step.emitted + pattern;

    std::vector<Word> words = current.forbidden.words();
    words.push_back(step.emitted);
    return EliminationResult{std::move(step), SftSpec(current.alphabet(), std::move(words))};
}

namespace {

struct CleanScan {
    bool found = false;
    int from = 0;
};

// Least n such that every cover stage in [n, horizon] of `prev` has no
// orbit of period <= p_max whose cyclic word hits a forbidden word of prev.
CleanScan period_clean_from(const SftSpec& prev, int horizon, int p_max) {
    auto dirty = [&](int n) {
        std::vector<Word> filtered;
        for (const auto& w : prev.forbidden.words())
            if (static_cast<int>(w.size()) <= n) filtered.push_back(w);
        SftSpec stage(prev.alphabet(), std::move(filtered));
        for (int q = 1; q <= p_max; ++q) {
            for (const auto& orb : periodic_orbits_direct(stage, q)) {
                for (const auto& f : prev.forbidden.words())
                    if (cyclic_occurrences(f, orb.period_word) != 0) return true;
            }
        }
        return false;
    };
    CleanScan cs;
    for (int n = horizon; n >= 1; --n) {
        if (dirty(n)) break;
        cs.found = true;
        cs.from = n;
    }
    return cs;
}

}  // namespace

SubshiftOracle StageOracleBuild::oracle() const {
    auto words = std::make_shared<const std::vector<Word>>(spec.forbidden.words());
    auto member = [words](const Word& w) { return avoids(w, *words); };
    // With the prefix already admissible, only suffix-aligned occurrences
    // can be new.
    auto extend = [words](const Word& w) {
        for (const auto& f : *words) {
            if (f.size() > w.size()) continue;
            size_t off = w.size() - f.size();
            bool hit = true;
            for (size_t j = 0; j < f.size(); ++j) {
                if (w[off + j] != f[j]) {
                    hit = false;
                    break;
                }
            }
            if (hit) return false;
        }
        return true;
    };
    std::string prov = "x3_stage{stage=" + std::to_string(stage) +
                       ",mult=" + std::to_string(mult) +
                       ",type1<=" + std::to_string(caps.type1_max_len) +
                       ",horizon=" + std::to_string(horizon) + "}";
    SubshiftOracle o(spec.alphabet(), horizon, prov, member);
    o.with_defining_words(spec.forbidden);
    o.with_extend(extend);
    return o;
}

StageOracleBuild build_stage_oracle(int stage, int mult, const SturmianParams& p,
                                    const StageCaps& caps, int horizon) {
    if (stage < 0) throw Error("build_stage_oracle: stage must be >= 0");
    if (horizon < 1) throw Error("build_stage_oracle: horizon must be >= 1");
    StageOracleBuild b;
    b.stage = stage;
    b.mult = mult;
    b.horizon = horizon;
    b.params = p;
    b.caps = caps;
    for (int n = 1; 4 * n + 6 <= caps.type1_max_len; ++n)
        b.type1.push_back(type1_word(p, n));

    Alphabet bin = Alphabet::binary();
    SftSpec cur(bin, b.type1);
    EliminationCaps ecaps{caps.period_cap, caps.repeat_cap};

    auto run_step = [&](const std::string& family, int index, const Word& pattern,
                        const Word& exclude, bool suffix, long long chain) {
        EliminationResult res;
        try {
            res = eliminate_periodic_stage(cur, pattern, suffix, mult, p, exclude, chain,
                                           ecaps);
        } catch (const Error& e) {
            throw Error("stage " + std::to_string(stage) + " family " + family +
                        " step " + std::to_string(index) + ": " + e.what());
        }
        StageLedgerEntry entry;
        entry.family = family;
        entry.index = index;
        entry.step = std::move(res.step);
        cur = std::move(res.spec);
        b.steps.push_back(std::move(entry));
    };

    const Word w11 = parse_word(bin, "11");
    const Word w00 = parse_word(bin, "00");
    const Word w000 = parse_word(bin, "000");
    const Word w01 = parse_word(bin, "01");

    if (stage >= 1) {
        long long chain = 0;
        for (int i = 0; i < caps.steps_11; ++i) {
            run_step("11", i, w11, {}, true, chain);
            chain = static_cast<long long>(b.steps.back().step.emitted.size());
        }
    }
    if (stage >= 2) {
        long long chain = 0;
        for (int i = 0; i < caps.steps_00; ++i) {
            run_step("00", i, w00, w000, true, chain);
            chain = static_cast<long long>(b.steps.back().step.emitted.size());
        }
    }
    if (stage >= 3) {
        run_step("000", 0, w01, {}, false, 0);
        long long prev_len = static_cast<long long>(b.steps.back().step.emitted.size());
        for (int t = 1; t + 3 <= stage; ++t) {
            auto q = find_qualifying_orbit(cur, w000, {}, caps.period_cap);
            if (!q)
                throw Error("stage " + std::to_string(stage) + " family 000 step " +
                            std::to_string(t) + ": no qualifying orbit");
            CleanScan cs = period_clean_from(cur, horizon, q->period);
            long long chain = prev_len;
            if (cs.found) chain = std::max(chain, static_cast<long long>(cs.from) + t);
            run_step("000", t, w000, {}, false, chain);
            b.steps.back().clean_from = cs.found ? cs.from : -1;
            b.steps.back().clean_found = cs.found;
            prev_len = static_cast<long long>(b.steps.back().step.emitted.size());
        }
    }
    b.spec = std::move(cur);
    return b;
}

namespace {

nlohmann::ordered_json qi_json(const QuadraticIrrational& q) {
    return {{"a", q.a.get_str()}, {"b", q.b.get_str()}, {"c", q.c.get_str()},
            {"d", q.d.get_str()}};
}

QuadraticIrrational qi_from_json(const nlohmann::json& j) {
    return QuadraticIrrational(BigInt(j.at("a").get<std::string>()),
                               BigInt(j.at("b").get<std::string>()),
                               BigInt(j.at("c").get<std::string>()),
                               BigInt(j.at("d").get<std::string>()));
}

}  // namespace

std::string stage_ledger_json(const StageOracleBuild& b) {
    const Alphabet bin = Alphabet::binary();
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["kind"] = "stage-oracle";
    j["stage"] = b.stage;
    j["mult"] = b.mult;
    j["horizon"] = b.horizon;
    j["slope"] = qi_json(b.params.slope);
    j["intercept"] = qi_json(b.params.intercept);
    j["caps"] = {{"type1_max_len", b.caps.type1_max_len},
                 {"steps_11", b.caps.steps_11},
                 {"steps_00", b.caps.steps_00},
                 {"period_cap", b.caps.period_cap},
                 {"repeat_cap", b.caps.repeat_cap}};
    auto type1 = nlohmann::ordered_json::array();
    for (const auto& w : b.type1) type1.push_back(format_word(bin, w));
    j["type1"] = type1;
    auto steps = nlohmann::ordered_json::array();
    for (const auto& e : b.steps) {
        nlohmann::ordered_json s;
        s["family"] = e.family;
        s["index"] = e.index;
        s["pattern"] = format_word(bin, e.step.pattern);
        s["exclude"] = format_word(bin, e.step.exclude);
        s["orbit"] = format_word(bin, e.step.orbit);
        s["orbit_period"] = e.step.orbit_period;
        s["unit"] = format_word(bin, e.step.unit);
        s["repeats"] = e.step.repeats;
        s["multiplier"] = e.step.multiplier;
        s["pattern_suffix"] = e.step.pattern_suffix;
        s["chain_len"] = e.step.chain_len;
        s["clean_from"] = e.clean_from;
        s["clean_found"] = e.clean_found;
        s["word"] = format_word(bin, e.step.emitted);
        steps.push_back(std::move(s));
    }
    j["steps"] = steps;
    return j.dump(2) + "\n";
}

StageOracleBuild replay_stage_ledger(const std::string& json) {
    const Alphabet bin = Alphabet::binary();
    nlohmann::json j = nlohmann::json::parse(json);
    if (j.value("schema", 0) != 1 || j.value("kind", "") != "stage-oracle")
        throw ParseError("stage ledger: unsupported schema or kind");
    StageOracleBuild b;
    b.stage = j.at("stage").get<int>();
    b.mult = j.at("mult").get<int>();
    b.horizon = j.at("horizon").get<int>();
    b.params = make_sturmian_params(qi_from_json(j.at("slope")),
                                    qi_from_json(j.at("intercept")));
    const auto& caps = j.at("caps");
    b.caps.type1_max_len = caps.at("type1_max_len").get<int>();
    b.caps.steps_11 = caps.at("steps_11").get<int>();
    b.caps.steps_00 = caps.at("steps_00").get<int>();
    b.caps.period_cap = caps.at("period_cap").get<int>();
    b.caps.repeat_cap = caps.at("repeat_cap").get<int>();

    int n = 1;
    for (const auto& t : j.at("type1")) {
        Word recorded = parse_word(bin, t.get<std::string>());
        if (recorded != type1_word(b.params, n))
            throw ParseError("stage ledger: type1 word " + std::to_string(n) +
                             " does not match its parameters");
        b.type1.push_back(std::move(recorded));
        ++n;
    }

    std::vector<Word> collected = b.type1;
    for (const auto& s : j.at("steps")) {
        StageLedgerEntry e;
        e.family = s.at("family").get<std::string>();
        e.index = s.at("index").get<int>();
        e.step.pattern = parse_word(bin, s.at("pattern").get<std::string>());
        e.step.exclude = parse_word(bin, s.at("exclude").get<std::string>());
        e.step.orbit = parse_word(bin, s.at("orbit").get<std::string>());
        e.step.orbit_period = s.at("orbit_period").get<int>();
        e.step.unit = parse_word(bin, s.at("unit").get<std::string>());
        e.step.repeats = s.at("repeats").get<int>();
        e.step.multiplier = s.at("multiplier").get<int>();
        e.step.pattern_suffix = s.at("pattern_suffix").get<bool>();
        e.step.chain_len = s.at("chain_len").get<long long>();
        e.clean_from = s.at("clean_from").get<int>();
        e.clean_found = s.at("clean_found").get<bool>();
        e.step.emitted = parse_word(bin, s.at("word").get<std::string>());

        Word rebuilt = e.step.unit.repeated(static_cast<size_t>(e.step.multiplier) *
                                            static_cast<size_t>(e.step.repeats));
        if (e.step.pattern_suffix) rebuilt = rebuilt + e.step.pattern;
        if (rebuilt != e.step.emitted)
            throw ParseError("stage ledger: step " + std::to_string(b.steps.size()) +
                             " word does not match its template");
        collected.push_back(e.step.emitted);
        b.steps.push_back(std::move(e));
    }
    b.spec = SftSpec(bin, std::move(collected));
    return b;
}

SftSpec reference_sft(const std::string& name) {
    Alphabet bin = Alphabet::binary();
    if (name == "h1") return SftSpec(bin, {parse_word(bin, "111")});
    if (name == "h2") return SftSpec(bin, {parse_word(bin, "11")});
    if (name == "h3") return SftSpec(bin, {parse_word(bin, "11"), parse_word(bin, "1001")});
    throw Error("reference_sft: unknown name " + name);
}

SubshiftOracle product_with_full_shift(const SubshiftOracle& o) {
    const Alphabet& a = o.alphabet();
    std::vector<std::string> names;
    names.reserve(a.size() * 2);
    for (Symbol i = 0; i < a.size(); ++i) {
        names.push_back(a.name(i) + "0");
        names.push_back(a.name(i) + "1");
    }
    Alphabet prod(std::move(names));
    auto base = std::make_shared<SubshiftOracle>(o);
    auto project = [](const Word& w) {
        std::vector<Symbol> proj(w.size());
        for (size_t i = 0; i < w.size(); ++i) proj[i] = w[i] / 2;
        return Word(std::move(proj));
    };
    auto member = [base, project](const Word& w) { return base->member(project(w)); };
    auto extend = [base, project](const Word& w) {
        return base->member_extend(project(w));
    };
    SubshiftOracle po(std::move(prod), o.horizon(),
                      "product{" + o.provenance() + " x full2}", member);
    po.with_extend(extend);
    return po;
}

}  // namespace shiftkit
