#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pinterp/trig.hpp"

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

}  // namespace

TEST_CASE("trig polynomial evaluation matches the direct sum") {
    std::mt19937_64 rng(7);
    const TrigPoly p = random_poly(rng, 9);
    for (double t : {0.0, 0.31, 1.7, 5.9}) {
        double ref = 0.5 * p.a0;
        for (std::size_t k = 0; k < p.order(); ++k) {
            const double kd = static_cast<double>(k + 1);
            ref += p.a[k] * std::cos(kd * t) + p.b[k] * std::sin(kd * t);
        }
        CHECK(p.eval(t) == doctest::Approx(ref).epsilon(1e-13));
    }
    CHECK_THROWS_AS(TrigPoly(0.0, {1.0}, {}), std::invalid_argument);
}

TEST_CASE("node grid") {
    const NodeGrid g(4);
    CHECK(g.nodes.size() == 7);
    CHECK(g.nodes[0] == 0.0);
    CHECK(g.nodes[3] == doctest::Approx(6.0 * nb::pi / 7.0).epsilon(1e-15));
    CHECK_THROWS_AS(NodeGrid(0), std::domain_error);
}

TEST_CASE("Dirichlet kernel branches agree near the singularity") {
    for (std::int64_t n : {2, 5, 12}) {
        CHECK(dirichlet(n, 0.0) == doctest::Approx(static_cast<double>(n) - 0.5).epsilon(1e-13));
        for (double t : {1e-9, 1e-7, 0.5, 2.0}) {
            double ref = 0.5;
            for (std::int64_t k = 1; k < n; ++k) ref += std::cos(static_cast<double>(k) * t);
            CHECK(dirichlet(n, t) == doctest::Approx(ref).epsilon(1e-10));
        }
    }
}

TEST_CASE("interpolation reproduces its own polynomial space") {
    std::mt19937_64 rng(11);
    for (std::int64_t n : {2, 5, 16, 33}) {
        const TrigPoly t = random_poly(rng, static_cast<std::size_t>(n - 1));
        const PeriodicFn f = PeriodicFn::from_poly(t);
        const TrigPoly back = lagrange_interp(f, n);
        CHECK(back.a0 == doctest::Approx(t.a0).epsilon(1e-12));
        for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(n); ++k) {
            CHECK(back.a[k] == doctest::Approx(t.a[k]).epsilon(1e-11));
            CHECK(back.b[k] == doctest::Approx(t.b[k]).epsilon(1e-11));
        }
        // the Dirichlet summation route agrees with the coefficient route
        for (double x : {0.4, 1.9, 3.3}) {
            CHECK(interp_eval(f, n, x) == doctest::Approx(back.eval(x)).epsilon(1e-11));
        }
    }
}

TEST_CASE("interpolation matches the function at the nodes") {
    const PeriodicFn f = PeriodicFn::from_eval([](double t) { return std::exp(std::sin(t)); });
    for (std::int64_t n : {3, 8}) {
        const NodeGrid grid(n);
        for (double xk : grid.nodes) {
            CHECK(interp_eval(f, n, xk) == doctest::Approx(f.eval(xk)).epsilon(1e-11));
            CHECK(rho_tilde(f, n, xk) == doctest::Approx(0.0).scale(1.0).epsilon(1e-11));
        }
    }
}

TEST_CASE("aliasing of higher harmonics") {
    // on 2n-1 nodes, cos(jt) with n <= j <= 2n-2 aliases to cos((2n-1-j)t)
    const std::int64_t n = 6;
    for (std::int64_t j = n; j <= 2 * n - 2; ++j) {
        TrigPoly high = TrigPoly::zero(static_cast<std::size_t>(j));
        high.a[static_cast<std::size_t>(j - 1)] = 1.0;
        const TrigPoly low = lagrange_interp(PeriodicFn::from_poly(high), n);
        const std::int64_t alias = 2 * n - 1 - j;
        for (double x : {0.7, 2.4}) {
            CHECK(low.eval(x) ==
                  doctest::Approx(std::cos(static_cast<double>(alias) * x)).epsilon(1e-11));
        }
    }
}

TEST_CASE("Fourier partial sums from each backing") {
    // polynomial backing: plain truncation
    std::mt19937_64 rng(3);
    const TrigPoly t = random_poly(rng, 10);
    const TrigPoly s = fourier_partial_sum(PeriodicFn::from_poly(t), 5, 1e-12);
    CHECK(s.order() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(s.a[k] == t.a[k]);
        CHECK(s.b[k] == t.b[k]);
    }
    // kernel backing: damped, rotated coefficients
    const KernelParams params(0.8, 0.5, 0.6);
    const TrigPoly ks = fourier_partial_sum(PeriodicFn::from_kernel(params), 4, 1e-12);
    for (std::size_t k = 0; k < 3; ++k) {
        const double damp = std::exp(-0.8 * std::pow(static_cast<double>(k + 1), 0.5));
        CHECK(ks.a[k] == doctest::Approx(damp * std::cos(0.6 * nb::pi / 2.0)).epsilon(1e-14));
        CHECK(ks.b[k] == doctest::Approx(damp * std::sin(0.6 * nb::pi / 2.0)).epsilon(1e-14));
    }
    // generic backing: quadrature route agrees with the exact one
    const PeriodicFn generic = PeriodicFn::from_eval([&](double x) { return t.eval(x); });
    const TrigPoly qs = fourier_partial_sum(generic, 5, 1e-12);
    CHECK(qs.a0 == doctest::Approx(t.a0).epsilon(1e-10));
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(qs.a[k] == doctest::Approx(t.a[k]).epsilon(1e-10));
        CHECK(qs.b[k] == doctest::Approx(t.b[k]).epsilon(1e-10));
    }
}

TEST_CASE("Lebesgue function basics") {
    for (std::int64_t n : {2, 7, 20}) {
        const NodeGrid grid(n);
        // equals one at the nodes
        for (double xk : grid.nodes)
            CHECK(lebesgue_fn(n, xk) == doctest::Approx(1.0).epsilon(1e-11));
        // at least one away from the nodes, and 2pi/(2n-1)-periodic
        const double mid = nb::pi / (2.0 * static_cast<double>(n) - 1.0);
        CHECK(lebesgue_fn(n, mid) > 1.0);
        CHECK(lebesgue_fn(n, mid + 2.0 * nb::pi / (2.0 * static_cast<double>(n) - 1.0)) ==
              doctest::Approx(lebesgue_fn(n, mid)).epsilon(1e-10));
    }
}

TEST_CASE("interpolation error is controlled by the Lebesgue function") {
    // |f - interp| <= (1 + Lebesgue) * dist_C(f, T_{2n-1}); for f = cos(nt)
    // the distance is 1, giving a direct numerical bound
    const std::int64_t n = 9;
    TrigPoly cosn = TrigPoly::zero(static_cast<std::size_t>(n));
    cosn.a[static_cast<std::size_t>(n - 1)] = 1.0;
    const PeriodicFn f = PeriodicFn::from_poly(cosn);
    for (double x : {0.2, 1.0, 2.8, 5.5}) {
        CHECK(std::fabs(rho_tilde(f, n, x)) <= 1.0 + lebesgue_fn(n, x) + 1e-10);
    }
}
