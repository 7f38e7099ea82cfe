#pragma once

#include "shiftkit/sft.hpp"
#include "shiftkit/spectral.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shiftkit {

// Bounded-horizon admissibility predicate for a subshift.  The predicate is
// factor-closed: member(w) implies member of every subword.  Oracles backed
// by an explicit forbidden set carry it for fast minimal-word extraction.
class SubshiftOracle {
public:
    using MemberFn = std::function<bool(const Word&)>;

    SubshiftOracle(Alphabet a, int horizon, std::string provenance, MemberFn member);

    bool member(const Word& w) const;
    // Same answer as member(w), callable when w minus its last letter is
    // already known admissible; implementations may shortcut.
    bool member_extend(const Word& w) const;

    int horizon() const { return horizon_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::string& provenance() const { return provenance_; }
    const std::optional<ForbiddenSet>& defining_words() const { return defining_words_; }

    SubshiftOracle& with_defining_words(ForbiddenSet f);
    SubshiftOracle& with_extend(MemberFn f);

    // Seeded spot check that sampled admissible words have admissible
    // subwords; throws InternalCheckFailed on violation.
    void spot_check_factor_closed(uint64_t seed = 12345, int samples = 200) const;

private:
    Alphabet alphabet_;
    int horizon_;
    std::string provenance_;
    MemberFn member_;
    MemberFn extend_;
    std::optional<ForbiddenSet> defining_words_;
};

// True language membership of an SFT (includes bi-infinite extendability).
SubshiftOracle oracle_from_spec(const SftSpec& spec, int horizon);

struct ScanOptions {
    size_t level_cap = 4'000'000;  // max admissible words kept per length
};

// Minimal forbidden words of length <= n: non-members whose two maximal
// proper subwords are members.  Oracles carrying their defining words answer
// directly; otherwise breadth-first growth over admissible words.
ForbiddenSet forbidden_up_to(const SubshiftOracle& o, int n, const ScanOptions& opts = {});

// Admissible words of length n, sorted; grown letter by letter.
std::vector<Word> oracle_slice(const SubshiftOracle& o, int n, const ScanOptions& opts = {});

struct CoverStage {
    int n = 0;
    SftSpec spec;
};
// Stage X_n of the SFT cover: forbid the minimal forbidden words of length <= n.
CoverStage cover_stage(const SubshiftOracle& o, int n, const ScanOptions& opts = {});

// X_n == X_{n+j}, decided by absence of minimal forbidden words with length
// in (n, n+j].
bool stage_equal(const SubshiftOracle& o, int n, int j, const ScanOptions& opts = {});

struct LanguageScan {
    int horizon = 0;
    std::vector<int> break_lengths;          // L with X_{L-1} != X_L
    std::vector<std::pair<int, int>> runs;   // maximal [a, b] with X_a == ... == X_b
};
LanguageScan language_stability_scan(const SubshiftOracle& o, int horizon,
                                     const ScanOptions& opts = {});

struct EntropyScanRow {
    int m = 0;
    bool skipped = false;
    std::string skip_reason;
    double h_m = 0, h_mj = 0;
    double drop = 0;
    long long s_m_words = 0;    // |L_m(X_m)|, the count entering the threshold
    long long recode_states = 0;  // recoded graph size, reported for reference
    double threshold_log = 0;
    bool within_threshold = false;
    bool stages_equal = true;
    double corollary_log = 0;  // lower bound on the drop when stages differ
    bool corollary_ok = true;
};
struct EntropyScan {
    double eps = 0;
    int ell = 0, j = 0;
    std::vector<EntropyScanRow> rows;
};
EntropyScan entropy_stability_scan(const SubshiftOracle& o, double eps, int ell, int j,
                                   int m_max, const ScanOptions& opts = {});

struct StabilityCertificate {
    std::string kind;  // "period"
    int m = 0;         // requested stage gap
    int n = 0, p = 0;  // certified stage and period
    std::vector<PeriodicOrbit> witness;
    std::string oracle_provenance;
    int n_max = 0, p_max = 0;
};

// First (p, n) in p-major order with a nonempty matching set of
// minimal-period-p orbits in stages X_n and X_{n+m}.
std::optional<StabilityCertificate> period_stability_scan(const SubshiftOracle& o, int m,
                                                          int n_max, int p_max,
                                                          const ScanOptions& opts = {});

// Recomputes both stages' orbit sets and compares with the embedded witness.
bool verify_certificate(const SubshiftOracle& o, const StabilityCertificate& cert,
                        const ScanOptions& opts = {});

std::string certificate_json(const StabilityCertificate& cert, const Alphabet& a);
StabilityCertificate certificate_from_json(const std::string& text, const Alphabet& a);

// Orbits of minimal period p in cover stage X_n.
std::vector<PeriodicOrbit> stage_orbits(const SubshiftOracle& o, int n, int p,
                                        const ScanOptions& opts = {});

}  // namespace shiftkit
