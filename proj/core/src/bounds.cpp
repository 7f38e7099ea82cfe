#include "shiftkit/bounds.hpp"

#include "shiftkit/common.hpp"

#include <cmath>

namespace shiftkit {

namespace {

// log of x = 1/(4 s^{2 s^2}).
double inner_log(double s) {
    return -(std::log(4.0) + 2.0 * s * s * std::log(s));
}

}  // namespace

double xi_denominator_log(int s_) {
    if (s_ < 2) throw Error("xi: s must be >= 2");
    const double s = static_cast<double>(s_);
    const double lx = inner_log(s);
    if (lx > -700.0) {
        // exact route: 1 - (1-x)^{1/s^2} = -expm1(log1p(-x)/s^2)
        const double x = std::exp(lx);
        return std::log(-std::expm1(std::log1p(-x) / (s * s)));
    }
    // x below double range: 1 - (1-x)^{1/s^2} ~ x/s^2 with relative error O(x)
    return lx - 2.0 * std::log(s);
}

double xi_log(int s_) {
    if (s_ < 2) throw Error("xi: s must be >= 2");
    const double s = static_cast<double>(s_);
    const double log_num = std::log(30.0) + 3.0 * (s * s + 1.0) * std::log(s);
    return log_num - xi_denominator_log(s_);
}

PropConstants prop_constants(int s_) {
    if (s_ < 2) throw Error("prop_constants: s must be >= 2");
    const double s = static_cast<double>(s_);
    PropConstants c;
    c.s = s_;
    c.A_log = std::log(15.0) + 2.0 * s * s * std::log(s);
    c.beta_lo = 0.75;
    const double lx = inner_log(s);
    if (lx > -700.0) {
        c.beta_hi_log = std::log1p(-std::exp(lx)) / (s * s);
    } else {
        c.beta_hi_log = -std::exp(lx) / (s * s);  // underflows to -0 for huge s
    }
    c.beta_hi = std::exp(c.beta_hi_log);
    c.ratio_log_cap = s * std::log(s);
    c.M_cap = (s_ - 1) * (s_ - 1) + 1;
    return c;
}

double entropy_gap_threshold_log(double eps, int ell, int s) {
    if (!(eps > 0)) throw Error("entropy_gap_threshold: eps must be positive");
    if (ell < 1) throw Error("entropy_gap_threshold: ell must be >= 1");
    return 2.0 * std::log(eps) - 2.0 * ell * std::log(4.0 / 3.0) - 2.0 * xi_log(s);
}

double cover_threshold_log(double eps, int ell, int j, int s_m) {
    if (j < 1) throw Error("cover_threshold: j must be >= 1");
    return entropy_gap_threshold_log(eps, ell, s_m);
}

double entropy_drop_bound_log(double h, int n, int k) {
    if (!(h > 0)) throw Error("entropy_drop_bound: entropy must be positive");
    if (n < 2) throw Error("entropy_drop_bound: n must be >= 2");
    if (k <= 1) throw Error("entropy_drop_bound: k must be > 1");
    return std::log(h) - 2.0 * (3.0 * n + 4.0 * k) * h;
}

double cover_drop_bound_log(long long s, int k, int a) {
    if (s < 1) throw Error("cover_drop_bound: s must be >= 1");
    if (k < 1) throw Error("cover_drop_bound: k must be >= 1");
    if (a < 2) throw Error("cover_drop_bound: alphabet size must be >= 2");
    return std::log(std::log(2.0)) - std::log(static_cast<double>(s)) -
           3.0 * (3.0 * static_cast<double>(s) + 4.0 * k) * std::log(static_cast<double>(a));
}

namespace {

BoundReport wrap(std::string name, double log_value,
                 std::vector<std::pair<std::string, double>> inputs) {
    BoundReport r;
    r.name = std::move(name);
    r.log_value = log_value;
    r.value = std::exp(log_value);
    r.overflow_safe = std::isfinite(log_value);
    r.inputs = std::move(inputs);
    return r;
}

}  // namespace

BoundReport report_xi(int s) {
    return wrap("xi", xi_log(s), {{"s", static_cast<double>(s)}});
}

BoundReport report_threshold(double eps, int ell, int s) {
    return wrap("entropy_gap_threshold", entropy_gap_threshold_log(eps, ell, s),
                {{"eps", eps}, {"ell", static_cast<double>(ell)}, {"s", static_cast<double>(s)}});
}

BoundReport report_cover_threshold(double eps, int ell, int j, int s_m) {
    return wrap("cover_threshold", cover_threshold_log(eps, ell, j, s_m),
                {{"eps", eps},
                 {"ell", static_cast<double>(ell)},
                 {"j", static_cast<double>(j)},
                 {"s_m", static_cast<double>(s_m)}});
}

BoundReport report_entropy_drop(double h, int n, int k) {
    return wrap("entropy_drop_bound", entropy_drop_bound_log(h, n, k),
                {{"h", h}, {"n", static_cast<double>(n)}, {"k", static_cast<double>(k)}});
}

BoundReport report_cover_drop(long long s, int k, int a) {
    return wrap("cover_drop_bound", cover_drop_bound_log(s, k, a),
                {{"s", static_cast<double>(s)},
                 {"k", static_cast<double>(k)},
                 {"a", static_cast<double>(a)}});
}

}  // namespace shiftkit
