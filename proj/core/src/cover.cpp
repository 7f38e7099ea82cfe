#include "shiftkit/cover.hpp"

#include "shiftkit/bounds.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace shiftkit {

SubshiftOracle::SubshiftOracle(Alphabet a, int horizon, std::string provenance, MemberFn member)
    : alphabet_(std::move(a)),
      horizon_(horizon),
      provenance_(std::move(provenance)),
      member_(std::move(member)) {
    if (horizon_ < 1) throw Error("oracle horizon must be >= 1");
}

bool SubshiftOracle::member(const Word& w) const {
    if (static_cast<int>(w.size()) > horizon_)
        throw Error("oracle query of length " + std::to_string(w.size()) +
                    " exceeds horizon " + std::to_string(horizon_));
    for (Symbol s : w.letters)
        if (s >= alphabet_.size()) throw Error("oracle query letter outside alphabet");
    return member_(w);
}

bool SubshiftOracle::member_extend(const Word& w) const {
    if (extend_) {
        if (static_cast<int>(w.size()) > horizon_)
            throw Error("oracle query exceeds horizon");
        return extend_(w);
    }
    return member(w);
}

SubshiftOracle& SubshiftOracle::with_defining_words(ForbiddenSet f) {
    defining_words_ = std::move(f);
    return *this;
}

SubshiftOracle& SubshiftOracle::with_extend(MemberFn f) {
    extend_ = std::move(f);
    return *this;
}

void SubshiftOracle::spot_check_factor_closed(uint64_t seed, int samples) const {
    std::mt19937_64 rng(seed);
    const int max_len = std::min(horizon_, 12);
    for (int trial = 0; trial < samples; ++trial) {
        // Grow a random admissible word by single-letter extension.
        Word w;
        int target = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_len));
        for (int t = 0; t < target; ++t) {
            std::vector<Symbol> options;
            for (Symbol s = 0; s < alphabet_.size(); ++s)
                if (member_extend(w.appended(s))) options.push_back(s);
            if (options.empty()) break;
            w = w.appended(options[rng() % options.size()]);
        }
        if (w.empty()) continue;
        for (size_t pos = 0; pos < w.size(); ++pos) {
            for (size_t len = 1; pos + len <= w.size(); ++len) {
                if (!member(w.subword(pos, len)))
                    throw InternalCheckFailed("oracle not factor-closed at subword of " +
                                              std::to_string(w.size()) + "-letter sample");
            }
        }
    }
}

SubshiftOracle oracle_from_spec(const SftSpec& spec, int horizon) {
    auto graph = std::make_shared<VertexShift>(recode(spec));
    const int order = graph->order;
    auto member = [graph, order](const Word& w) {
        if (w.empty()) return !graph->states.empty();
        if (w.size() < static_cast<size_t>(order)) {
            // w is admissible iff it is a prefix of some admissible block:
            // states are sorted, so check the first state >= w.
            auto it = std::lower_bound(graph->states.begin(), graph->states.end(), w);
            return it != graph->states.end() && it->subword(0, w.size()) == w;
        }
        auto cur = graph->state_index(w.subword(0, order));
        if (!cur) return false;
        for (size_t t = 1; t + order <= w.size(); ++t) {
            auto next = graph->state_index(w.subword(t, order));
            if (!next) return false;
            const auto& row = graph->succ[*cur];
            if (!std::binary_search(row.begin(), row.end(), *next)) return false;
            cur = next;
        }
        return true;
    };
    SubshiftOracle o(spec.alphabet(), horizon,
                     "sft{" + serialize_forbidden(spec.forbidden) + "}", member);
    o.with_defining_words(spec.forbidden);
    return o;
}

namespace {

// Packed word codes for level sets: positional base-|A| value plus a length
// marker; valid while |A|^len fits in 64 bits.
struct LevelCodec {
    uint64_t base;
    explicit LevelCodec(size_t alphabet) : base(alphabet) {}
    bool fits(int len) const {
        double v = 1;
        for (int i = 0; i < len; ++i) {
            v *= static_cast<double>(base);
            if (v > 9e18) return false;
        }
        return true;
    }
    uint64_t encode(const Word& w) const {
        uint64_t code = 0;
        for (Symbol s : w.letters) code = code * base + s;
        return code;
    }
    Word decode(uint64_t code, int len) const {
        std::vector<Symbol> letters(len);
        for (int i = len - 1; i >= 0; --i) {
            letters[i] = static_cast<Symbol>(code % base);
            code /= base;
        }
        return Word(std::move(letters));
    }
};

// One BFS pass collecting minimal forbidden words of length <= n.
ForbiddenSet forbidden_by_bfs(const SubshiftOracle& o, int n, const ScanOptions& opts) {
    const Alphabet& a = o.alphabet();
    LevelCodec codec(a.size());
    if (!codec.fits(n))
        throw CapExceeded("forbidden_up_to: horizon too deep for packed scan");
    std::vector<Word> minimal;

    std::vector<uint64_t> level;  // sorted codes of admissible words of current length
    for (Symbol s = 0; s < a.size(); ++s) {
        Word w(std::vector<Symbol>{s});
        if (o.member(w))
            level.push_back(codec.encode(w));
        else
            minimal.push_back(w);
    }
    std::sort(level.begin(), level.end());

    uint64_t tail_mod = 1;  // base^(len-1), maintained across levels
    for (int len = 2; len <= n; ++len) {
        tail_mod *= codec.base;
        std::vector<uint64_t> next;
        for (uint64_t code : level) {
            Word w = codec.decode(code, len - 1);
            for (Symbol s = 0; s < a.size(); ++s) {
                Word ws = w.appended(s);
                uint64_t wcode = codec.encode(ws);
                if (o.member_extend(ws)) {
                    next.push_back(wcode);
                    continue;
                }
                // ws minus last = w is admissible; minimal iff ws minus
                // first is admissible too.
                uint64_t suffix = wcode % tail_mod;
                if (std::binary_search(level.begin(), level.end(), suffix))
                    minimal.push_back(ws);
            }
        }
        if (next.size() > opts.level_cap)
            throw CapExceeded("forbidden_up_to: level cap exceeded at length " +
                              std::to_string(len));
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    return ForbiddenSet(a, std::move(minimal));
}

}  // namespace

ForbiddenSet forbidden_up_to(const SubshiftOracle& o, int n, const ScanOptions& opts) {
    if (n < 1) throw Error("forbidden_up_to: n must be >= 1");
    if (n > o.horizon()) throw Error("forbidden_up_to: n exceeds oracle horizon");
    if (o.defining_words()) {
        std::vector<Word> keep;
        for (const auto& w : o.defining_words()->words())
            if (static_cast<int>(w.size()) <= n) keep.push_back(w);
        return ForbiddenSet(o.alphabet(), std::move(keep));
    }
    return forbidden_by_bfs(o, n, opts);
}

std::vector<Word> oracle_slice(const SubshiftOracle& o, int n, const ScanOptions& opts) {
    if (n < 0) throw Error("oracle_slice: n must be >= 0");
    if (n > o.horizon()) throw Error("oracle_slice: n exceeds oracle horizon");
    std::vector<Word> level{Word{}};
    for (int len = 1; len <= n; ++len) {
        std::vector<Word> next;
        for (const auto& w : level)
            for (Symbol s = 0; s < o.alphabet().size(); ++s) {
                Word ws = w.appended(s);
                if (o.member_extend(ws)) next.push_back(std::move(ws));
            }
        if (next.size() > opts.level_cap)
            throw CapExceeded("oracle_slice: level cap exceeded at length " +
                              std::to_string(len));
        level = std::move(next);  // stays sorted: parents sorted, symbols ascend
    }
    return level;
}

CoverStage cover_stage(const SubshiftOracle& o, int n, const ScanOptions& opts) {
    return CoverStage{n, SftSpec(forbidden_up_to(o, n, opts))};
}

bool stage_equal(const SubshiftOracle& o, int n, int j, const ScanOptions& opts) {
    if (j < 0) throw Error("stage_equal: j must be >= 0");
    if (j == 0) return true;
    ForbiddenSet f = forbidden_up_to(o, n + j, opts);
    for (const auto& w : f.words())
        if (static_cast<int>(w.size()) > n) return false;
    return true;
}

LanguageScan language_stability_scan(const SubshiftOracle& o, int horizon,
                                     const ScanOptions& opts) {
    if (horizon < 1) throw Error("language_stability_scan: horizon must be >= 1");
    ForbiddenSet f = forbidden_up_to(o, horizon, opts);
    LanguageScan scan;
    scan.horizon = horizon;
    std::set<int> breaks;
    for (const auto& w : f.words())
        if (w.size() >= 2) breaks.insert(static_cast<int>(w.size()));
    scan.break_lengths.assign(breaks.begin(), breaks.end());
    int run_start = 1;
    for (int b : scan.break_lengths) {
        // X_{b-1} != X_b: run of equal stages ends at b-1.
        if (b - 1 >= run_start) scan.runs.emplace_back(run_start, b - 1);
        run_start = b;
    }
    scan.runs.emplace_back(run_start, horizon);
    return scan;
}

EntropyScan entropy_stability_scan(const SubshiftOracle& o, double eps, int ell, int j,
                                   int m_max, const ScanOptions& opts) {
    if (j < 1) throw Error("entropy_stability_scan: j must be >= 1");
    if (m_max + j > o.horizon()) throw Error("entropy_stability_scan: horizon too small");
    EntropyScan scan;
    scan.eps = eps;
    scan.ell = ell;
    scan.j = j;
    ForbiddenSet all = forbidden_up_to(o, m_max + j, opts);
    auto stage_spec = [&](int n) {
        std::vector<Word> keep;
        for (const auto& w : all.words())
            if (static_cast<int>(w.size()) <= n) keep.push_back(w);
        return SftSpec(o.alphabet(), std::move(keep));
    };
    for (int m = 1; m <= m_max; ++m) {
        EntropyScanRow row;
        row.m = m;
        SftSpec sm = stage_spec(m), smj = stage_spec(m + j);
        VertexShift vm, vmj;
        try {
            vm = recode(sm);
            vmj = recode(smj);
            if (vm.states.empty() || vmj.states.empty()) {
                row.skipped = true;
                row.skip_reason = "empty stage";
            }
        } catch (const CapExceeded& e) {
            row.skipped = true;
            row.skip_reason = e.what();
        }
        if (!row.skipped) {
            row.h_m = scc_entropy(vm);
            row.h_mj = scc_entropy(vmj);
            row.drop = row.h_m - row.h_mj;
            row.s_m_words = static_cast<long long>(language_slice(vm, m).size());
            row.recode_states = static_cast<long long>(vm.size());
            row.threshold_log = cover_threshold_log(eps, ell, j, static_cast<int>(row.s_m_words));
            // thresholds underflow double range quickly, so compare in logs;
            // a non-positive drop is below any (positive) threshold
            row.within_threshold =
                row.drop <= 0.0 || std::log(row.drop) < row.threshold_log;
            row.stages_equal = sm.forbidden == smj.forbidden;
            if (!row.stages_equal) {
                row.corollary_log = cover_drop_bound_log(
                    row.s_m_words, j + 1, static_cast<int>(o.alphabet().size()));
                row.corollary_ok =
                    row.drop > 0.0 && std::log(row.drop) >= row.corollary_log;
            }
        }
        scan.rows.push_back(std::move(row));
    }
    return scan;
}

std::vector<PeriodicOrbit> stage_orbits(const SubshiftOracle& o, int n, int p,
                                        const ScanOptions& opts) {
    CoverStage stage = cover_stage(o, n, opts);
    VertexShift v = recode(stage.spec);
    return enumerate_min_periodic(v, p);
}

std::optional<StabilityCertificate> period_stability_scan(const SubshiftOracle& o, int m,
                                                          int n_max, int p_max,
                                                          const ScanOptions& opts) {
    if (m < 1) throw Error("period_stability_scan: m must be >= 1");
    if (n_max + m > o.horizon()) throw Error("period_stability_scan: horizon too small");
    ForbiddenSet all = forbidden_up_to(o, n_max + m, opts);
    auto stage_spec = [&](int n) {
        std::vector<Word> keep;
        for (const auto& w : all.words())
            if (static_cast<int>(w.size()) <= n) keep.push_back(w);
        return SftSpec(o.alphabet(), std::move(keep));
    };
    for (int p = 1; p <= p_max; ++p) {
        for (int n = 1; n <= n_max; ++n) {
            auto orbits_n = periodic_orbits_direct(stage_spec(n), p);
            if (orbits_n.empty()) continue;
            auto orbits_nm = periodic_orbits_direct(stage_spec(n + m), p);
            if (orbits_n == orbits_nm) {
                StabilityCertificate cert;
                cert.kind = "period";
                cert.m = m;
                cert.n = n;
                cert.p = p;
                cert.witness = orbits_n;
                cert.oracle_provenance = o.provenance();
                cert.n_max = n_max;
                cert.p_max = p_max;
                return cert;
            }
        }
    }
    return std::nullopt;
}

bool verify_certificate(const SubshiftOracle& o, const StabilityCertificate& cert,
                        const ScanOptions& opts) {
    if (cert.kind != "period") throw Error("verify_certificate: unknown kind " + cert.kind);
    auto orbits_n = stage_orbits(o, cert.n, cert.p, opts);
    auto orbits_nm = stage_orbits(o, cert.n + cert.m, cert.p, opts);
    return !orbits_n.empty() && orbits_n == orbits_nm && orbits_n == cert.witness;
}

std::string certificate_json(const StabilityCertificate& cert, const Alphabet& a) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["kind"] = cert.kind;
    j["m"] = cert.m;
    j["n"] = cert.n;
    j["p"] = cert.p;
    auto witness = nlohmann::ordered_json::array();
    for (const auto& orbit : cert.witness) witness.push_back(format_word(a, orbit.period_word));
    j["witness_orbits"] = witness;
    j["oracle"] = cert.oracle_provenance;
    j["scan"] = {{"n_max", cert.n_max}, {"p_max", cert.p_max}};
    return j.dump(2) + "\n";
}

StabilityCertificate certificate_from_json(const std::string& text, const Alphabet& a) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.value("schema", 0) != 1) throw ParseError("certificate: unsupported schema");
    StabilityCertificate cert;
    cert.kind = j.at("kind").get<std::string>();
    cert.m = j.at("m").get<int>();
    cert.n = j.at("n").get<int>();
    cert.p = j.at("p").get<int>();
    for (const auto& w : j.at("witness_orbits"))
        cert.witness.push_back(PeriodicOrbit(parse_word(a, w.get<std::string>())));
    cert.oracle_provenance = j.value("oracle", "");
    if (j.contains("scan")) {
        cert.n_max = j["scan"].value("n_max", 0);
        cert.p_max = j["scan"].value("p_max", 0);
    }
    return cert;
}

}  // namespace shiftkit
