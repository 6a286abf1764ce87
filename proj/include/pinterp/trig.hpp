#pragma once
//
// trig.hpp : trigonometric polynomials, Dirichlet kernel, Lagrange
// interpolation on 2n-1 equidistant nodes, Fourier partial sums, the Lebesgue
// function and pointwise interpolation deviations.
//

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pinterp/kernels.hpp"
#include "pinterp/quadrature.hpp"

namespace pinterp {

// a0/2 + sum_{k=1}^{m} a_k cos kt + b_k sin kt.
struct TrigPoly {
    double a0 = 0.0;
    std::vector<double> a;  // cosine coefficients, size m
    std::vector<double> b;  // sine coefficients, size m

    TrigPoly() = default;
    TrigPoly(double a0_, std::vector<double> a_, std::vector<double> b_)
        : a0(a0_), a(std::move(a_)), b(std::move(b_)) {
        if (a.size() != b.size())
            throw std::invalid_argument("TrigPoly: coefficient arrays must have equal length");
    }

    static TrigPoly zero(std::size_t m) {
        return TrigPoly(0.0, std::vector<double>(m, 0.0), std::vector<double>(m, 0.0));
    }

    std::size_t order() const { return a.size(); }

    double eval(double t) const {
        double s = 0.5 * a0;
        // recurrences for cos(kt), sin(kt)
        const double c1 = std::cos(t), s1 = std::sin(t);
        double ck = 1.0, sk = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double cn = ck * c1 - sk * s1;
            const double sn = sk * c1 + ck * s1;
            ck = cn;
            sk = sn;
            s += a[k] * ck + b[k] * sk;
        }
        return s;
    }
};

// Evaluatable 2pi-periodic function, optionally carrying an exact coefficient
// backing (trig polynomial, or a generalized Poisson kernel).
struct PeriodicFn {
    std::function<double(double)> eval;
    std::optional<TrigPoly> poly;
    std::optional<KernelParams> kernel;

    static PeriodicFn from_eval(std::function<double(double)> f) {
        PeriodicFn p;
        p.eval = std::move(f);
        return p;
    }
    static PeriodicFn from_poly(TrigPoly t) {
        PeriodicFn p;
        auto tp = std::make_shared<TrigPoly>(std::move(t));
        p.eval = [tp](double x) { return tp->eval(x); };
        p.poly = *tp;
        return p;
    }
    static PeriodicFn from_kernel(const KernelParams& k, double tol = 1e-14) {
        PeriodicFn p;
        p.eval = [k, tol](double x) { return kernel_eval(k, x, tol).value; };
        p.kernel = k;
        return p;
    }
};

struct NodeGrid {
    std::int64_t n = 1;
    std::vector<double> nodes;  // x_k = 2 k pi / (2n-1), k = 0..2n-2

    explicit NodeGrid(std::int64_t n_) : n(n_) {
        if (n < 1) throw std::domain_error("NodeGrid: n must be >= 1");
        const std::int64_t count = 2 * n - 1;
        nodes.resize(static_cast<std::size_t>(count));
        for (std::int64_t k = 0; k < count; ++k)
            nodes[static_cast<std::size_t>(k)] =
                2.0 * static_cast<double>(k) * std::numbers::pi / static_cast<double>(count);
    }
};

// D_{n-1}(t) = sin((n-1/2)t) / (2 sin(t/2)); the cosine-sum form near the
// removable singularity avoids cancellation.
inline double dirichlet(std::int64_t n, double t) {
    if (n < 1) throw std::domain_error("dirichlet: n must be >= 1");
    const double half = 0.5 * t;
    const double sh = std::sin(half);
    if (std::fabs(sh) < 1e-8) {
        double s = 0.5;
        for (std::int64_t k = 1; k < n; ++k) s += std::cos(static_cast<double>(k) * t);
        return s;
    }
    return std::sin((static_cast<double>(n) - 0.5) * t) / (2.0 * sh);
}

// Interpolation polynomial of order n-1 through the 2n-1 node samples,
// coefficients recovered by the discrete orthogonality of the grid.
inline TrigPoly lagrange_interp(const PeriodicFn& f, std::int64_t n) {
    if (n < 1) throw std::domain_error("lagrange_interp: n must be >= 1");
    const NodeGrid grid(n);
    const std::size_t N = grid.nodes.size();
    std::vector<double> samples(N);
    for (std::size_t k = 0; k < N; ++k) samples[k] = f.eval(grid.nodes[k]);
    const double w = 2.0 / static_cast<double>(N);
    TrigPoly out = TrigPoly::zero(static_cast<std::size_t>(n - 1));
    double a0 = 0.0;
    for (std::size_t k = 0; k < N; ++k) a0 += samples[k];
    out.a0 = w * a0;
    for (std::int64_t j = 1; j < n; ++j) {
        double aj = 0.0, bj = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            const double ang = static_cast<double>(j) * grid.nodes[k];
            aj += samples[k] * std::cos(ang);
            bj += samples[k] * std::sin(ang);
        }
        out.a[static_cast<std::size_t>(j - 1)] = w * aj;
        out.b[static_cast<std::size_t>(j - 1)] = w * bj;
    }
    return out;
}

// S~_{n-1}(f;x) by direct Dirichlet-kernel summation over the node samples.
inline double interp_eval(const PeriodicFn& f, std::int64_t n, double x) {
    if (n < 1) throw std::domain_error("interp_eval: n must be >= 1");
    const NodeGrid grid(n);
    const double w = 2.0 / static_cast<double>(grid.nodes.size());
    double s = 0.0;
    for (double xk : grid.nodes) s += f.eval(xk) * dirichlet(n, x - xk);
    return w * s;
}

// Fourier partial sum of order n-1; exact from coefficient backings, otherwise
// quadrature per coefficient.
inline TrigPoly fourier_partial_sum(const PeriodicFn& f, std::int64_t n, double quad_tol) {
    if (n < 1) throw std::domain_error("fourier_partial_sum: n must be >= 1");
    if (!(quad_tol > 0.0))
        throw std::invalid_argument("fourier_partial_sum: quad_tol must be positive");
    TrigPoly out = TrigPoly::zero(static_cast<std::size_t>(n - 1));
    if (f.poly) {
        const TrigPoly& p = *f.poly;
        out.a0 = p.a0;
        for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(n) && j < p.order(); ++j) {
            out.a[j] = p.a[j];
            out.b[j] = p.b[j];
        }
        return out;
    }
    if (f.kernel) {
        const KernelParams& k = *f.kernel;
        const double c = std::cos(k.beta * std::numbers::pi / 2.0);
        const double s = std::sin(k.beta * std::numbers::pi / 2.0);
        for (std::int64_t j = 1; j < n; ++j) {
            const double damp = std::exp(-k.alpha * std::pow(static_cast<double>(j), k.r));
            out.a[static_cast<std::size_t>(j - 1)] = damp * c;
            out.b[static_cast<std::size_t>(j - 1)] = damp * s;
        }
        return out;
    }
    const double inv_pi = 1.0 / std::numbers::pi;
    out.a0 = inv_pi * midpoint_doubling([&](double t) { return f.eval(t); }, 0.0,
                                        2.0 * std::numbers::pi, quad_tol);
    for (std::int64_t j = 1; j < n; ++j) {
        const double jd = static_cast<double>(j);
        out.a[static_cast<std::size_t>(j - 1)] =
            inv_pi * midpoint_doubling([&](double t) { return f.eval(t) * std::cos(jd * t); },
                                       0.0, 2.0 * std::numbers::pi, quad_tol);
        out.b[static_cast<std::size_t>(j - 1)] =
            inv_pi * midpoint_doubling([&](double t) { return f.eval(t) * std::sin(jd * t); },
                                       0.0, 2.0 * std::numbers::pi, quad_tol);
    }
    return out;
}

// Lebesgue function of the interpolation operator.
inline double lebesgue_fn(std::int64_t n, double x) {
    if (n < 1) throw std::domain_error("lebesgue_fn: n must be >= 1");
    const NodeGrid grid(n);
    const double w = 2.0 / static_cast<double>(grid.nodes.size());
    double s = 0.0;
    for (double xk : grid.nodes) s += std::fabs(dirichlet(n, x - xk));
    return w * s;
}

// rho~_n(f;x) = f(x) - S~_{n-1}(f;x).
inline double rho_tilde(const PeriodicFn& f, std::int64_t n, double x) {
    return f.eval(x) - interp_eval(f, n, x);
}

}  // namespace pinterp
