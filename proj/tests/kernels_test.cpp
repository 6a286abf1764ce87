#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pinterp/kernels.hpp"
#include "pinterp/quadrature.hpp"

using namespace pinterp;
namespace nb = std::numbers;

namespace {

// brute-force reference for sum_{k>=m} e^{-alpha k^r}
double brute_tail(double alpha, double r, double m) {
    double s = 0.0;
    for (double k = m;; k += 1.0) {
        const double term = std::exp(-alpha * std::pow(k, r));
        s += term;
        if (term < 1e-19 * s && k > m + 8.0) return s;
    }
}

}  // namespace

TEST_CASE("kernel parameter validation") {
    CHECK_THROWS_AS(KernelParams(0.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(KernelParams(1.0, -1.0, 0.0), std::domain_error);
    CHECK_NOTHROW(KernelParams(0.5, 2.0, -3.0));
}

TEST_CASE("geometric tail sum is exact for r = 1") {
    for (double alpha : {0.5, 1.0, 3.0}) {
        for (double m : {1.0, 4.0, 10.0}) {
            const CertifiedValue t = tail_sum(alpha, 1.0, m);
            CHECK(t.value ==
                  doctest::Approx(std::exp(-alpha * m) / (1.0 - std::exp(-alpha))).epsilon(1e-14));
        }
    }
}

TEST_CASE("certified tail sums bracket the brute-force reference") {
    for (const auto& [alpha, r] :
         std::vector<std::pair<double, double>>{{1.0, 0.5}, {2.0, 0.3}, {0.5, 2.0}, {1.0, 0.9}}) {
        for (double m : {1.0, 3.0, 9.0}) {
            const CertifiedValue t = tail_sum(alpha, r, m);
            const double ref = brute_tail(alpha, r, m);
            CHECK(t.lower() <= ref * (1.0 + 1e-13));
            CHECK(t.upper() >= ref * (1.0 - 1e-13));
            CHECK(t.value == doctest::Approx(ref).epsilon(1e-10));
        }
    }
}

TEST_CASE("log-scaled tail sums match unscaled ones") {
    const double C = 7.3;
    const CertifiedValue scaled = scaled_tail_sum(1.0, 0.5, 5.0, C);
    const CertifiedValue plain = tail_sum(1.0, 0.5, 5.0);
    CHECK(scaled.value == doctest::Approx(plain.value * std::exp(C)).epsilon(1e-12));
}

TEST_CASE("exponential-power integral estimate") {
    // exact for r = 1, delta = 0
    const CertifiedValue e1 = exp_power_integral(3, 2.0, 1.0, 0.0);
    CHECK(e1.provenance == Provenance::exact);
    CHECK(e1.value == doctest::Approx(std::exp(-6.0) / 2.0).epsilon(1e-15));
    // certified band contains the quadrature reference
    const CertifiedValue est = exp_power_integral(400, 1.0, 0.5, 0.0);
    const double ref = adaptive_simpson(
        [](double t) { return std::exp(-std::sqrt(t)); }, 400.0, 40000.0, 1e-15);
    CHECK(est.lower() <= ref);
    CHECK(est.upper() >= ref);
    // below the certified validity threshold
    CHECK_THROWS_AS(exp_power_integral(1, 0.1, 0.5, 0.0), std::domain_error);
}

TEST_CASE("phase gamma_n") {
    CHECK(gamma_n(1.0, 0.0, 5) == doctest::Approx(0.0));
    CHECK(gamma_n(0.0, 2.0, 3) == doctest::Approx(0.5 * (5.0 * 2.0 - nb::pi)).epsilon(1e-15));
    CHECK_THROWS_AS(gamma_n(0.0, 0.0, 0), std::domain_error);
}

TEST_CASE("kernel evaluation against closed forms at r = 1") {
    // sum e^{-ak} cos(kt) and sum e^{-ak} sin(kt) have rational closed forms
    for (double alpha : {0.7, 1.5}) {
        for (double t : {0.3, 1.1, 2.7}) {
            const double q = std::exp(-alpha);
            const double den = 1.0 - 2.0 * q * std::cos(t) + q * q;
            const double cos_ref = (q * std::cos(t) - q * q) / den;
            const double sin_ref = q * std::sin(t) / den;
            CHECK(kernel_eval(KernelParams(alpha, 1.0, 0.0), t, 1e-13).value ==
                  doctest::Approx(cos_ref).epsilon(1e-11));
            CHECK(kernel_eval(KernelParams(alpha, 1.0, 1.0), t, 1e-13).value ==
                  doctest::Approx(sin_ref).epsilon(1e-11));
        }
    }
}

TEST_CASE("kernel evaluation error bound is honored") {
    const KernelParams params(1.0, 0.5, 0.4);
    const double tol = 1e-10;
    const CertifiedValue v = kernel_eval(params, 0.9, tol);
    CHECK(v.abs_err <= tol);
    // reference with a much tighter tolerance
    const CertifiedValue ref = kernel_eval(params, 0.9, 1e-15);
    CHECK(std::fabs(v.value - ref.value) <= v.abs_err + ref.abs_err);
}

TEST_CASE("tail cosine series evaluation") {
    const KernelParams params(1.0, 1.0, 0.0);
    const TailSeries s = make_tail_series(params, 3, 0.7, 1e-14);
    // direct reference
    double ref = 0.0;
    for (int k = 3; k < 80; ++k) ref += std::exp(-1.0 * k) * std::cos(k * 0.9 + 0.7);
    CHECK(tail_cos_eval(s, 0.9).value == doctest::Approx(ref).epsilon(1e-12));
    CHECK(s.tail_bound <= 1e-14);
}

TEST_CASE("interpolation remainder series against brute force") {
    const KernelParams params(1.0, 1.0, 0.3);
    const std::int64_t n = 3;
    const double x = 0.8, t = 1.9;
    // r_n(t) = sum_k sum_{v >= (2k+1)n-k} e^{-v} sin(vt + (k+1/2)(2n-1)x + beta pi/2)
    double ref = 0.0;
    for (int k = 1; k <= 40; ++k) {
        const double phase = (k + 0.5) * 5.0 * x + 0.3 * nb::pi / 2.0;
        for (double v = (2.0 * k + 1.0) * n - k; v < 900.0; v += 1.0)
            ref += std::exp(-v) * std::sin(v * t + phase);
    }
    const CertifiedValue rn = remainder_rn(params, x, n, t, 1e-13);
    CHECK(rn.value == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("remainder double-sum bound dominates the remainder") {
    const KernelParams params(1.0, 0.5, 0.0);
    const std::int64_t n = 4;
    const double bound = scaled_remainder_double_sum(params, n).upper();
    for (double t : {0.1, 0.9, 2.2, 4.4}) {
        CHECK(std::fabs(remainder_rn(params, 1.1, n, t, 1e-12).value) <= bound);
    }
}

TEST_CASE("admissibility condition and its certified inequality") {
    const KernelParams params(3.0, 0.5, 0.0);
    CHECK(remainder_bound_applicable(params, 921));
    CHECK_FALSE(remainder_bound_applicable(params, 10));
    const RemainderBoundResult res = remainder_bound_check(params, 921);
    CHECK(res.applicable);
    CHECK(res.holds);
    // frozen reference ratio of the two scaled sides
    CHECK(res.lhs_scaled.value / res.rhs_scaled == doctest::Approx(0.4696).epsilon(0.02));
    // not-applicable carries no truth claim
    const RemainderBoundResult na = remainder_bound_check(params, 10);
    CHECK_FALSE(na.applicable);
    CHECK_FALSE(na.holds);
}

TEST_CASE("log-scaled inequality survives astronomically large orders") {
    const KernelParams params(1.0, 0.9, 0.0);
    std::int64_t n = 1;
    while (!remainder_bound_applicable(params, n)) n *= 2;
    const RemainderBoundResult res = remainder_bound_check(params, n);
    CHECK(res.applicable);
    CHECK(res.holds);
    CHECK(res.lhs_scaled.value > 0.0);  // representable in the scaled frame
    CHECK(res.rhs == 0.0);              // unscaled values underflow by design
}

TEST_CASE("threshold orders") {
    const KernelParams params(1.0, 0.5, 0.0);
    for (ThresholdKind kind :
         {ThresholdKind::n_star, ThresholdKind::n_0, ThresholdKind::n_1}) {
        for (const LpExponent& p : {LpExponent(1.0), LpExponent(2.0), LpExponent::infinity()}) {
            const std::int64_t n = threshold(params, p, kind);
            CHECK(n >= 1);
        }
    }
    // n_1 never exceeds n_* at p = infinity
    CHECK(threshold(params, LpExponent::infinity(), ThresholdKind::n_1) <=
          threshold(params, LpExponent::infinity(), ThresholdKind::n_star));
    CHECK_THROWS_AS(threshold(KernelParams(1.0, 1.0, 0.0), LpExponent(2.0),
                              ThresholdKind::n_star),
                    std::domain_error);
}

TEST_CASE("threshold minimality") {
    const KernelParams params(2.0, 0.5, 0.0);
    const std::int64_t n = threshold(params, LpExponent(2.0), ThresholdKind::n_star);
    // the criterion holds at n; walking back one order breaks it (when n > 1)
    auto lhs = [&](std::int64_t m) {
        const double ar = 2.0 * 0.5;
        const double md = static_cast<double>(m);
        return std::log(nb::pi * md) / (ar * std::pow(md, 0.5)) +
               ar * 2.0 / std::pow(md, 0.5);
    };
    const double rhs = 0.5 / std::pow(3.0 * nb::pi, 3.0);  // (p-1)/p at p = 2
    CHECK(lhs(n) <= rhs);
    if (n > 1) CHECK(lhs(n - 1) > rhs);
}
