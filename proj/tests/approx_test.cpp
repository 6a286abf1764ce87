#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pinterp/approx.hpp"

using namespace pinterp;
namespace nb = std::numbers;

namespace {

TrigPoly random_poly(std::mt19937_64& rng, std::size_t order) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    TrigPoly p = TrigPoly::zero(order);
    p.a0 = gauss(rng);
    for (std::size_t k = 0; k < order; ++k) {
        p.a[k] = gauss(rng);
        p.b[k] = gauss(rng);
    }
    return p;
}

PeriodicFn cos_harmonic(std::int64_t n) {
    TrigPoly p = TrigPoly::zero(static_cast<std::size_t>(n));
    p.a[static_cast<std::size_t>(n - 1)] = 1.0;
    return PeriodicFn::from_poly(p);
}

}  // namespace

TEST_CASE("Lp norms of the cosine") {
    const PeriodicFn f = cos_harmonic(1);
    CHECK(lp_norm(f, LpExponent(1.0), 1e-11).value == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(lp_norm(f, LpExponent(2.0), 1e-11).value ==
          doctest::Approx(std::sqrt(nb::pi)).epsilon(1e-9));
    CHECK(lp_norm(f, LpExponent::infinity(), 1e-11).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(lp_norm(f, LpExponent(2.0), -1.0), std::invalid_argument);
}

TEST_CASE("constant-shift minimization") {
    const double c = 0.37;
    const PeriodicFn g = PeriodicFn::from_eval([c](double t) { return std::sin(t) + c; });
    SUBCASE("sup norm: midrange") {
        const ShiftResult s = inf_shift(g, LpExponent::infinity(), 1e-10);
        CHECK(s.lambda == doctest::Approx(c).epsilon(1e-8));
        CHECK(s.value == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("L2: mean") {
        const ShiftResult s = inf_shift(g, LpExponent(2.0), 1e-10);
        CHECK(s.lambda == doctest::Approx(c).epsilon(1e-6));
        CHECK(s.value == doctest::Approx(std::sqrt(nb::pi)).epsilon(1e-6));
    }
    SUBCASE("L1: median") {
        const ShiftResult s = inf_shift(g, LpExponent(1.0), 1e-10);
        CHECK(s.lambda == doctest::Approx(c).epsilon(1e-3));
        CHECK(s.value == doctest::Approx(4.0).epsilon(1e-6));
    }
    SUBCASE("constant function") {
        const PeriodicFn h = PeriodicFn::from_eval([](double) { return 2.5; });
        const ShiftResult s = inf_shift(h, LpExponent(3.0), 1e-10);
        CHECK(s.lambda == doctest::Approx(2.5));
        CHECK(s.value == doctest::Approx(0.0));
    }
}

TEST_CASE("shift minimization is optimal against perturbed shifts") {
    const PeriodicFn g =
        PeriodicFn::from_eval([](double t) { return std::sin(t) + 0.4 * std::cos(3.0 * t); });
    for (double q : {1.0, 1.5, 2.0, 4.0}) {
        const ShiftResult s = inf_shift(g, LpExponent(q), 1e-10);
        for (double d : {-0.11, 0.07}) {
            const PeriodicFn shifted = PeriodicFn::from_eval(
                [&g, lam = s.lambda + d](double t) { return g.eval(t) - lam; });
            CHECK(lp_norm(shifted, LpExponent(q), 1e-9).value >= s.value - 1e-6);
        }
    }
}

TEST_CASE("best approximation of a pure harmonic") {
    const std::int64_t n = 5;
    const PeriodicFn f = cos_harmonic(n);
    SUBCASE("L2 via Parseval") {
        const BestApproxResult res = best_approx(f, n, LpExponent(2.0), 1e-11);
        CHECK(res.certificate == ApproxCertificate::parseval_exact);
        CHECK(res.value == doctest::Approx(std::sqrt(nb::pi)).epsilon(1e-12));
    }
    SUBCASE("uniform via exchange") {
        const BestApproxResult res = best_approx(f, n, LpExponent::infinity(), 1e-9);
        CHECK(res.converged);
        CHECK(res.certificate == ApproxCertificate::equioscillation);
        CHECK(res.value == doctest::Approx(1.0).epsilon(1e-7));
    }
    SUBCASE("intermediate exponents: zero is optimal by symmetry") {
        CHECK(best_approx(f, n, LpExponent(4.0), 1e-8).value ==
              doctest::Approx(std::pow(3.0 * nb::pi / 4.0, 0.25)).epsilon(1e-4));
        CHECK(best_approx(f, n, LpExponent(1.0), 1e-8).value ==
              doctest::Approx(4.0).epsilon(1e-2));
    }
}

TEST_CASE("members of the approximating space have zero distance") {
    std::mt19937_64 rng(23);
    for (std::int64_t n : {3, 8}) {
        const TrigPoly t = random_poly(rng, static_cast<std::size_t>(n - 1));
        const PeriodicFn tf = PeriodicFn::from_poly(t);
        for (const LpExponent& p : {LpExponent(1.0), LpExponent(1.5), LpExponent(2.0),
                                    LpExponent(4.0), LpExponent::infinity()}) {
            CHECK(best_approx(tf, n, p, 1e-10).value <= 1e-9);
        }
    }
}

TEST_CASE("exchange absorbs the approximable part") {
    // f = cos(nt) + 0.3 cos((n-1)t): the lower harmonic is captured exactly,
    // the minimax distance stays 1
    const std::int64_t n = 6;
    TrigPoly p = TrigPoly::zero(static_cast<std::size_t>(n));
    p.a[static_cast<std::size_t>(n - 1)] = 1.0;
    p.a[static_cast<std::size_t>(n - 2)] = 0.3;
    const PeriodicFn f = PeriodicFn::from_poly(p);
    const BestApproxResult res = best_approx(f, n, LpExponent::infinity(), 1e-9);
    CHECK(res.converged);
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.minimizer.a[static_cast<std::size_t>(n - 2)] == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("descent result satisfies near-orthogonality of the residual") {
    // at the optimum, |residual|^{p-1} sign(residual) is orthogonal to the space
    std::mt19937_64 rng(29);
    const std::int64_t n = 4;
    const TrigPoly t = random_poly(rng, 6);
    const PeriodicFn f = PeriodicFn::from_poly(t);
    const double p = 3.0;
    const BestApproxResult res = best_approx(f, n, LpExponent(p), 1e-9);
    CHECK(res.converged);
    const std::size_t N = 4096;
    const double h = two_pi / static_cast<double>(N);
    for (std::int64_t j = 0; j < n; ++j) {
        double dot_c = 0.0, dot_s = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double x = (static_cast<double>(i) + 0.5) * h;
            const double rres = f.eval(x) - res.minimizer.eval(x);
            const double w =
                std::pow(std::fabs(rres), p - 1.0) * (rres >= 0.0 ? 1.0 : -1.0) * h;
            dot_c += w * std::cos(static_cast<double>(j) * x);
            dot_s += w * std::sin(static_cast<double>(j) * x);
        }
        CHECK(std::fabs(dot_c) <= 1e-5);
        CHECK(std::fabs(dot_s) <= 1e-5);
    }
}

TEST_CASE("monotonicity of the distance in n and p") {
    const PeriodicFn f = PeriodicFn::from_eval(
        [](double t) { return std::exp(std::cos(t)) - std::numbers::e / 2.0; });
    double prev = 1e300;
    for (std::int64_t n : {2, 4, 6}) {
        const double v = best_approx(f, n, LpExponent(2.0), 1e-10).value;
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    // normalized norms: L2 distance (normalized) never exceeds the uniform one
    const std::int64_t n = 4;
    const double e2 = best_approx(f, n, LpExponent(2.0), 1e-10).value / std::sqrt(two_pi);
    const double einf = best_approx(f, n, LpExponent::infinity(), 1e-8).value;
    CHECK(e2 <= einf + 1e-8);
}
