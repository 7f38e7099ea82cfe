#pragma once

#include "shiftkit/cover.hpp"
#include "shiftkit/exactint.hpp"
#include "shiftkit/sft.hpp"

#include <optional>
#include <string>
#include <vector>

namespace shiftkit {

// (a + b*sqrt(d)) / c with integer entries; exact sign, comparison and floor.
// d must be >= 0; the value is rational iff b = 0 or d is a perfect square.
struct QuadraticIrrational {
    BigInt a, b, c, d;

    QuadraticIrrational() : a(0), b(0), c(1), d(0) {}
    QuadraticIrrational(BigInt a_, BigInt b_, BigInt c_, BigInt d_);

    bool is_rational() const;
    int sign() const;
    BigInt floor() const;
    // (a + n*c + b sqrt(d)) / c, i.e. value + n.
    QuadraticIrrational plus_int(const BigInt& n) const;
    // (n*a + n*b sqrt(d)) / c.
    QuadraticIrrational times_int(const BigInt& n) const;
    QuadraticIrrational operator+(const QuadraticIrrational& o) const;  // same d or rational

    double approx() const;
};

// Slope/intercept pair for a lower mechanical word
//   y(n) = floor((n+1) rho + theta) - floor(n rho + theta),
// with rho irrational in (1/3, 1/2) so that the letters avoid both 11 and
// 000.  A cutting-sequence slope alpha in (1/2, 1) corresponds to the
// density rho = 1 - alpha; this code works with rho directly.
struct SturmianParams {
    QuadraticIrrational slope;      // rho
    QuadraticIrrational intercept;  // theta

    // rho = (3 - sqrt 5)/2, theta = 0; gives y(1) = 0.
    static SturmianParams defaults();
};
// Validates irrationality, the (1/3, 1/2) range and the shared radicand.
SturmianParams make_sturmian_params(QuadraticIrrational slope, QuadraticIrrational intercept);

// y(n) for n in [i_from, i_to]; indices may be negative (the word extends in
// both directions).
Word sturmian_letters(const SturmianParams& p, long long i_from, long long i_to);

// 111 y(1..4n) 111; length 4n + 6.
Word type1_word(const SturmianParams& p, int n);

// Exact verdict on whether w occurs in the full two-sided mechanical word:
// distinct length-|w| factors are collected by sliding a window until all
// |w|+1 of them have appeared (a word of factor complexity n+1 has exactly
// that many), then membership is a lookup.  Throws CapExceeded if the cap on
// window slides is hit before the factor set completes.
bool factor_absent(const Word& w, const SturmianParams& p, uint64_t slide_cap = 10'000'000);

// The two-sided coloring L w R restricted to positions [lo, hi]: position
// i <= 0 carries y(1+i), positions 1..|w| carry w, and position i > |w|
// carries y(i - |w|).
Word ray_window(const SturmianParams& p, const Word& w, long long lo, long long hi);

struct EliminationCaps {
    int period_cap = 20;   // max minimal period scanned for a qualifying orbit
    int repeat_cap = 64;   // max repeat count tried in the factor-absence search
};

// One periodic-point elimination: data sufficient to rebuild the emitted
// word as unit^(mult*repeats) plus the pattern suffix when the family uses
// one.
struct EliminationStep {
    Word pattern;             // required cyclic content of the doomed orbit
    Word exclude;             // cyclic content the orbit must avoid (may be empty)
    Word orbit;               // canonical period word of the chosen orbit
    int orbit_period = 0;
    Word unit;                // pattern-aligned rotation, >= |pattern| letters
    int repeats = 0;          // least count passing factor absence and the length rule
    int multiplier = 0;
    bool pattern_suffix = false;  // emitted = unit^(mult*repeats) [+ pattern]
    long long chain_len = 0;      // length the emitted word (or unit*repeats) must exceed
    Word emitted;
};

struct EliminationResult {
    EliminationStep step;
    SftSpec spec;  // current plus the emitted word
};

// Finds the least minimal period p <= period_cap with an orbit of `current`
// whose cyclic word contains `pattern` (and avoids `exclude` if nonempty),
// picks the lexicographically least such orbit, aligns it on the pattern,
// raises the repeat count until unit^repeats is absent from the mechanical
// word, then emits unit^(mult*repeats) with the pattern appended when
// pattern_suffix is set.  The length rule: with a suffix, |unit|*repeats
// must exceed chain_len; without one, the emitted word itself must be longer
// than chain_len.
EliminationResult eliminate_periodic_stage(const SftSpec& current, const Word& pattern,
                                           bool pattern_suffix, int mult,
                                           const SturmianParams& p,
                                           const Word& exclude = {},
                                           long long chain_len = 0,
                                           const EliminationCaps& caps = {});

struct StageCaps {
    int type1_max_len = 24;  // keep the length-(4n+6) family up to this length
    int steps_11 = 2;        // 11-rooted eliminations at stage >= 1
    int steps_00 = 1;        // 00-not-000 eliminations at stage >= 2
    int period_cap = 20;
    int repeat_cap = 64;
};

struct StageLedgerEntry {
    std::string family;  // "11", "00", "000"
    int index = 0;       // position within the family
    EliminationStep step;
    int clean_from = -1;       // least n with stages [n, horizon] period-clean
    bool clean_found = false;  // finite-horizon stand-in only, not a proof
};

struct StageOracleBuild {
    int stage = 0;
    int mult = 100;
    int horizon = 24;
    SturmianParams params;
    StageCaps caps;
    std::vector<Word> type1;  // truncated length-(4n+6) family
    std::vector<StageLedgerEntry> steps;
    SftSpec spec;  // every collected forbidden word, minimalized
    SubshiftOracle oracle() const;  // membership = avoidance of spec.forbidden
};

// Stage ladder: stage 0 forbids the truncated length-(4n+6) family; stage 1
// adds steps_11 eliminations rooted at pattern 11; stage 2 adds steps_00
// eliminations rooted at 00 excluding 000; stage 3 eliminates the last
// 000-free orbit (pattern 01, bare repeat); stage 3+t adds t bare-repeat
// eliminations rooted at 000.  Bare steps from stage 4 on record the least
// n from which the covers of the previous stage carry no small-period orbit
// outside that stage's shift (a finite-horizon stand-in, flagged as such),
// and the emitted word must outgrow it.
StageOracleBuild build_stage_oracle(int stage, int mult, const SturmianParams& p,
                                    const StageCaps& caps = {}, int horizon = 24);

// JSON ledger round trip; replay rebuilds every emitted word from its
// template and verifies bit-exact agreement before assembling the oracle.
std::string stage_ledger_json(const StageOracleBuild& b);
StageOracleBuild replay_stage_ledger(const std::string& json);

// h1: forbid 111.  h2: forbid 11.  h3: forbid 11 and 1001.
SftSpec reference_sft(const std::string& name);

// Product with the binary full shift: symbols are pairs, membership is
// membership of the first-track projection.  Symbol names concatenate the
// factor names.
SubshiftOracle product_with_full_shift(const SubshiftOracle& o);

}  // namespace shiftkit
