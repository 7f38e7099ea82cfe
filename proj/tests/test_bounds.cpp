#include <doctest.h>

#include "shiftkit/bounds.hpp"
#include "shiftkit/common.hpp"

#include "mpfr_oracle.hpp"

#include <cmath>

using namespace shiftkit;

namespace {

bool rel_close(double got, double want, double tol = 1e-9) {
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

}  // namespace

TEST_CASE("bound formulas match the high-precision reference") {
    for (int s = 2; s <= 6; ++s) {
        CAPTURE(s);
        CHECK(rel_close(xi_denominator_log(s), refbounds::xi_denominator_log(s)));
        CHECK(rel_close(xi_log(s), refbounds::xi_log(s)));
        PropConstants c = prop_constants(s);
        CHECK(rel_close(c.A_log, refbounds::A_log(s)));
        CHECK(rel_close(c.beta_hi_log, refbounds::beta_hi_log(s), 1e-9));
        CHECK(rel_close(c.beta_hi, refbounds::beta_hi(s), 1e-12));
        for (double eps : {0.5, 0.1, 1e-3})
            for (int ell : {1, 4, 16}) {
                CAPTURE(eps);
                CAPTURE(ell);
                CHECK(rel_close(entropy_gap_threshold_log(eps, ell, s),
                                refbounds::threshold_log(eps, ell, s)));
                CHECK(rel_close(cover_threshold_log(eps, ell, 3, s),
                                refbounds::threshold_log(eps, ell, s)));
            }
    }
    for (double h : {std::log(2.0), std::log(3.0), 0.25})
        for (int n : {2, 5, 9})
            for (int k : {2, 3, 7}) {
                CAPTURE(h);
                CHECK(rel_close(entropy_drop_bound_log(h, n, k),
                                refbounds::entropy_drop_log(h, n, k)));
            }
    for (long long s : {1LL, 3LL, 40LL, 1000000LL})
        for (int k : {1, 2, 6})
            for (int a : {2, 3, 5}) {
                CAPTURE(s);
                CHECK(rel_close(cover_drop_bound_log(s, k, a),
                                refbounds::cover_drop_log(s, k, a)));
            }
}

TEST_CASE("frozen spot values") {
    CHECK(rel_close(xi_log(2), 22.1158049042020588, 1e-12));
    CHECK(rel_close(xi_log(3), 59.7181061759007334, 1e-12));
    CHECK(rel_close(xi_log(4), 122.6225124379727486, 1e-12));
    CHECK(rel_close(xi_log(5), 214.0144203592150947, 1e-12));
    CHECK(rel_close(xi_log(6), 336.26299354997218, 1e-12));
    CHECK(rel_close(xi_denominator_log(2), -8.3173998141407238, 1e-12));
    CHECK(rel_close(std::exp(xi_denominator_log(2)), 2.44230082933086e-4, 1e-11));
    CHECK(rel_close(prop_constants(2).A_log, 8.25322764558177254, 1e-12));
    CHECK(rel_close(std::exp(entropy_drop_bound_log(std::log(2.0), 2, 2)),
                    std::log(2.0) * std::pow(2.0, -28.0), 1e-12));
    CHECK(rel_close(std::exp(entropy_drop_bound_log(std::log(2.0), 2, 2)),
                    2.58217446714619e-9, 1e-11));
    CHECK(rel_close(cover_drop_bound_log(3, 2, 2), -36.8156314178069848, 1e-12));
}

TEST_CASE("structural constants") {
    for (int s = 2; s <= 8; ++s) {
        PropConstants c = prop_constants(s);
        CHECK(c.beta_lo == 0.75);
        CHECK(c.beta_hi > c.beta_lo);
        // beta_hi < 1 lives in the log: the value itself rounds to 1 from s=4 on
        CHECK(c.beta_hi_log < 0.0);
        CHECK(c.beta_hi <= 1.0);
        CHECK(c.beta_hi == std::exp(c.beta_hi_log));
        CHECK(c.ratio_log_cap == s * std::log(static_cast<double>(s)));
        CHECK(c.M_cap == (s - 1) * (s - 1) + 1);
    }
    CHECK(prop_constants(2).beta_hi < 1.0);
    CHECK(prop_constants(3).beta_hi < 1.0);
}

TEST_CASE("monotonicity") {
    for (int s = 2; s < 8; ++s) CHECK(xi_log(s) < xi_log(s + 1));
    for (int ell = 1; ell < 10; ++ell)
        CHECK(entropy_gap_threshold_log(0.1, ell + 1, 2) <
              entropy_gap_threshold_log(0.1, ell, 2));
    CHECK(entropy_gap_threshold_log(0.05, 4, 2) < entropy_gap_threshold_log(0.1, 4, 2));
    CHECK(entropy_gap_threshold_log(0.1, 4, 3) < entropy_gap_threshold_log(0.1, 4, 2));
    for (int n = 2; n < 8; ++n)
        CHECK(entropy_drop_bound_log(std::log(2.0), n + 1, 2) <
              entropy_drop_bound_log(std::log(2.0), n, 2));
    for (int k = 2; k < 8; ++k)
        CHECK(entropy_drop_bound_log(std::log(2.0), 2, k + 1) <
              entropy_drop_bound_log(std::log(2.0), 2, k));
    for (int k = 1; k < 8; ++k)
        CHECK(cover_drop_bound_log(3, k + 1, 2) < cover_drop_bound_log(3, k, 2));
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(xi_log(1), Error);
    CHECK_THROWS_AS(xi_denominator_log(0), Error);
    CHECK_THROWS_AS(prop_constants(1), Error);
    CHECK_THROWS_AS(entropy_gap_threshold_log(0.0, 4, 2), Error);
    CHECK_THROWS_AS(entropy_gap_threshold_log(-0.5, 4, 2), Error);
    CHECK_THROWS_AS(entropy_gap_threshold_log(0.1, 0, 2), Error);
    CHECK_THROWS_AS(cover_threshold_log(0.1, 4, 0, 2), Error);
    CHECK_THROWS_AS(entropy_drop_bound_log(0.0, 2, 2), Error);
    CHECK_THROWS_AS(entropy_drop_bound_log(std::log(2.0), 1, 2), Error);
    CHECK_THROWS_AS(entropy_drop_bound_log(std::log(2.0), 2, 1), Error);
    CHECK_THROWS_AS(cover_drop_bound_log(0, 2, 2), Error);
    CHECK_THROWS_AS(cover_drop_bound_log(3, 0, 2), Error);
    CHECK_THROWS_AS(cover_drop_bound_log(3, 2, 1), Error);
}

TEST_CASE("report wrappers expose value and inputs") {
    BoundReport x = report_xi(3);
    CHECK(x.name == "xi");
    CHECK(x.log_value == xi_log(3));
    CHECK(x.value == std::exp(x.log_value));
    CHECK(x.overflow_safe);
    REQUIRE(x.inputs.size() == 1);
    CHECK(x.inputs[0].first == "s");
    CHECK(x.inputs[0].second == 3.0);

    BoundReport t = report_threshold(0.1, 4, 2);
    CHECK(t.name == "entropy_gap_threshold");
    CHECK(t.inputs.size() == 3);
    CHECK(t.value == std::exp(t.log_value));

    BoundReport ct = report_cover_threshold(0.1, 4, 3, 2);
    CHECK(ct.log_value == t.log_value);  // j is reported, not used
    CHECK(ct.inputs.size() == 4);

    BoundReport d = report_entropy_drop(std::log(2.0), 2, 2);
    CHECK(rel_close(d.value, 2.58217446714619e-9, 1e-11));
    CHECK(d.overflow_safe);

    BoundReport cd = report_cover_drop(3, 2, 2);
    CHECK(cd.name == "cover_drop_bound");
    CHECK(cd.value == std::exp(cd.log_value));
}
