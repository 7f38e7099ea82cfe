#pragma once

#include <string>
#include <vector>

namespace shiftkit {

// All bound evaluations return natural logarithms; the raw values underflow
// double precision for modest inputs.

// log of xi(s) = 30 s^{3(s^2+1)} / (1 - (1 - 1/(4 s^{2 s^2}))^{1/s^2}), s >= 2.
double xi_log(int s);

// log of the denominator 1 - (1 - 1/(4 s^{2 s^2}))^{1/s^2}.
double xi_denominator_log(int s);

struct PropConstants {
    int s = 0;
    double A_log = 0;         // log(15 s^{2 s^2})
    double beta_lo = 0.75;    // lower end of the contraction range
    double beta_hi = 0;       // (1 - 1/(4 s^{2 s^2}))^{1/s^2}
    double beta_hi_log = 0;
    double ratio_log_cap = 0; // log of the eigenfunction sup/inf cap s^s
    int M_cap = 0;            // Wielandt cap (s-1)^2 + 1
};
PropConstants prop_constants(int s);

// log of eps^2 / ((4/3)^{2 ell} xi(s)^2).
double entropy_gap_threshold_log(double eps, int ell, int s);

// Stage-indexed variant; j is carried in reports but does not enter the value.
double cover_threshold_log(double eps, int ell, int j, int s_m);

// log of h e^{-2(3n + 4k) h}: entropy drop from removing one admissible word
// of length k from a nontrivial transitive nearest-neighbor SFT on n symbols.
double entropy_drop_bound_log(double h, int n, int k);

// log of (ln 2) s^{-1} a^{-3(3s + 4k)}: drop across differing cover stages.
double cover_drop_bound_log(long long s, int k, int a);

// Uniform report wrapper for the CLI.
struct BoundReport {
    std::string name;
    double log_value = 0;
    double value = 0;  // exp(log_value); 0 on underflow
    bool overflow_safe = true;
    std::vector<std::pair<std::string, double>> inputs;
};
BoundReport report_xi(int s);
BoundReport report_threshold(double eps, int ell, int s);
BoundReport report_cover_threshold(double eps, int ell, int j, int s_m);
BoundReport report_entropy_drop(double h, int n, int k);
BoundReport report_cover_drop(long long s, int k, int a);

}  // namespace shiftkit
