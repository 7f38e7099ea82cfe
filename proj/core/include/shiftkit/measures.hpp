#pragma once

#include "shiftkit/blockcodes.hpp"
#include "shiftkit/cover.hpp"
#include "shiftkit/exactint.hpp"
#include "shiftkit/spectral.hpp"

#include <string>
#include <vector>

namespace shiftkit {

// Uniform measure on the set of points of one exact minimal period: each of
// the period * |orbits| points carries equal mass.
struct AtomicPeriodicMeasure {
    int period = 0;
    std::vector<PeriodicOrbit> orbits;  // sorted, unique, minimal period == period
    long long total_points = 0;         // period * orbits.size()
};
AtomicPeriodicMeasure atomic_measure(std::vector<PeriodicOrbit> orbits);

// (sum over orbits of cyclic occurrences of w) / total_points, exact.
Rational atomic_cylinder(const AtomicPeriodicMeasure& mu, const Word& w);

// Image of an atomic measure under a block code.  image_words keeps the
// full-length (uncanonicalized) image of each source orbit so cylinder
// values of the image measure stay exact even when orbits collapse.
struct Pushforward {
    int period = 0;
    long long total_points = 0;
    std::vector<Word> image_words;            // one per source orbit, length = period
    std::vector<PeriodicOrbit> image_orbits;  // canonical, sorted, deduped
    bool permutation = false;  // image orbit set equals source orbit set
    bool invariant = false;    // exact cylinder agreement up to length 2 * period
};
Pushforward pushforward(const BlockMap& m, const AtomicPeriodicMeasure& mu,
                        size_t word_cap = 1'000'000);
Rational pushforward_cylinder(const Pushforward& pf, const Word& w);

// Parry cylinder values across cover stages, one row per word per stage.
struct StageGapFlag {
    int stage_a = 0, stage_b = 0;  // consecutive usable stages
    Word word;
    double gap = 0, bound = 0;  // bound = 2 / min(stage_a, stage_b)
};
struct StageTable {
    std::vector<Word> words;
    std::vector<int> stages;
    std::vector<bool> skipped;               // per stage
    std::vector<std::string> skip_reasons;   // per stage
    std::vector<std::vector<double>> values; // per stage, per word; empty when skipped
    std::vector<StageGapFlag> flags;
};
StageTable mme_stage_table(const SubshiftOracle& o, const std::vector<int>& stages,
                           const std::vector<Word>& words, const ScanOptions& opts = {});
// Columns: stage, word, probability, delta_prev (blank on the first usable stage).
std::string stage_table_csv(const StageTable& t, const Alphabet& a);

// All cylinder probabilities up to length ell, shortlex order.
struct CylinderTable {
    std::vector<std::pair<Word, double>> rows;
};
CylinderTable parry_table(const ParryMeasure& m, int ell, size_t word_cap = 1'000'000);
CylinderTable markov_table(const MarkovMeasure& m, int ell, size_t word_cap = 1'000'000);
std::string cylinder_table_csv(const CylinderTable& t, const Alphabet& a);

// Compares a Markov measure against the measure of maximal entropy on the
// same graph: max cylinder gap over words up to length ell vs the entropy
// gap, with the explicit-constant threshold exp(t(eps)) = C * eps^2.  The
// verdict asserts the implication "entropy gap below threshold(eps) forces
// cylinder gap below eps" for every eps at once, i.e. C * gap^2 <= entropy
// gap (gaps under 1e-12 count as zero).
struct EffectiveIeReport {
    int ell = 0;
    long long s = 0;          // admissible-word count entering the constants
    bool s_is_edges = false;  // s counts edges unless the graph is full
    double entropy_top = 0;
    double entropy_markov = 0;
    double entropy_gap = 0;
    double cylinder_gap = 0;
    Word worst_word;
    double log_constant = 0;  // ln C
    bool verdict = false;
};
EffectiveIeReport effective_ie_check(const VertexShift& v, const MarkovMeasure& mu_prime,
                                     int ell, const PerronOptions& opts = {});

}  // namespace shiftkit
