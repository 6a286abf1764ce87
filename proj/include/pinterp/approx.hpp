#pragma once
//
// approx.hpp : L_p norms of periodic functions, best approximation by
// trigonometric polynomials of order n-1 (Parseval route for p=2, Remez
// exchange for p=inf, smooth convex descent for 1<p<inf with continuation
// down to p=1), and the constant-shift minimization inf_lambda ||g-lambda||_q.
//

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pinterp/certified.hpp"
#include "pinterp/quadrature.hpp"
#include "pinterp/trig.hpp"

namespace pinterp {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// ||f||_p over one period; p=inf via dense sampling with local refinement.
inline CertifiedValue lp_norm(const PeriodicFn& f, const LpExponent& p, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("lp_norm: tol must be positive");
    if (p.is_inf()) {
        const double m = sampled_max([&](double t) { return std::fabs(f.eval(t)); }, 0.0, two_pi);
        return CertifiedValue(m, tol, Provenance::quadrature);
    }
    const double pp = p.value();
    const double integral = midpoint_doubling(
        [&](double t) { return std::pow(std::fabs(f.eval(t)), pp); }, 0.0, two_pi, tol);
    return CertifiedValue(std::pow(integral, 1.0 / pp), tol, Provenance::quadrature);
}

namespace detail {

// Uniform midpoint grid over one period with samples of f.
struct PeriodGrid {
    std::size_t size;
    double h;
    std::vector<double> t;
    std::vector<double> v;

    PeriodGrid(const PeriodicFn& f, std::size_t n_points) : size(n_points) {
        h = two_pi / static_cast<double>(size);
        t.resize(size);
        v.resize(size);
        for (std::size_t i = 0; i < size; ++i) {
            t[i] = (static_cast<double>(i) + 0.5) * h;
            v[i] = f.eval(t[i]);
        }
    }
};

// Gaussian elimination with partial pivoting; A is row-major n x n.
inline std::vector<double> solve_dense(std::vector<double> A, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::fabs(A[row * n + col]) > std::fabs(A[piv * n + col])) piv = row;
        if (A[piv * n + col] == 0.0) throw std::runtime_error("solve_dense: singular system");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A[piv * n + j], A[col * n + j]);
            std::swap(b[piv], b[col]);
        }
        const double d = A[col * n + col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const double m = A[row * n + col] / d;
            if (m == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) A[row * n + j] -= m * A[col * n + j];
            b[row] -= m * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A[i * n + j] * x[j];
        x[i] = s / A[i * n + i];
    }
    return x;
}

// Basis of T_{2n-1}: {1, cos t..cos(n-1)t, sin t..sin(n-1)t}, dimension 2n-1.
inline std::size_t trig_dim(std::int64_t n) { return static_cast<std::size_t>(2 * n - 1); }

inline double trig_basis(std::int64_t n, std::size_t j, double t) {
    if (j == 0) return 1.0;
    const std::size_t m = static_cast<std::size_t>(n - 1);
    if (j <= m) return std::cos(static_cast<double>(j) * t);
    return std::sin(static_cast<double>(j - m) * t);
}

inline TrigPoly coeffs_to_poly(std::int64_t n, const std::vector<double>& c) {
    const std::size_t m = static_cast<std::size_t>(n - 1);
    TrigPoly p = TrigPoly::zero(m);
    p.a0 = 2.0 * c[0];
    for (std::size_t j = 0; j < m; ++j) {
        p.a[j] = c[1 + j];
        p.b[j] = c[1 + m + j];
    }
    return p;
}

inline std::vector<double> poly_to_coeffs(std::int64_t n, const TrigPoly& p) {
    const std::size_t m = static_cast<std::size_t>(n - 1);
    std::vector<double> c(trig_dim(n), 0.0);
    c[0] = 0.5 * p.a0;
    for (std::size_t j = 0; j < m && j < p.order(); ++j) {
        c[1 + j] = p.a[j];
        c[1 + m + j] = p.b[j];
    }
    return c;
}

}  // namespace detail

enum class ApproxCertificate { parseval_exact, equioscillation, kkt_residual };

struct BestApproxResult {
    double value = 0.0;
    TrigPoly minimizer;
    ApproxCertificate certificate = ApproxCertificate::kkt_residual;
    double residual = 0.0;  // certificate magnitude: defect or KKT norm
    bool converged = true;
    std::string message;
};

namespace detail {

// One Remez exchange solve: coefficients + levelled error h on the reference.
struct RemezState {
    std::vector<double> coeffs;
    double h = 0.0;
};

inline RemezState remez_solve(const PeriodicFn& f, std::int64_t n,
                              const std::vector<double>& ref) {
    const std::size_t d = trig_dim(n);
    const std::size_t m = ref.size();  // d + 1
    std::vector<double> A(m * m, 0.0), b(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < d; ++j) A[i * m + j] = trig_basis(n, j, ref[i]);
        A[i * m + d] = (i % 2 == 0) ? 1.0 : -1.0;
        b[i] = f.eval(ref[i]);
    }
    std::vector<double> sol = solve_dense(std::move(A), std::move(b));
    RemezState st;
    st.h = sol[d];
    sol.resize(d);
    st.coeffs = std::move(sol);
    return st;
}

// Signed local extremum refinement of the residual around grid position.
template <class R>
double refine_extremum(const R& resid, double lo, double hi, double sign) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = sign * resid(x1), f2 = sign * resid(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1; x1 = x2; f1 = f2; x2 = lo + gr * (hi - lo); f2 = sign * resid(x2);
        } else {
            hi = x2; x2 = x1; f2 = f1; x1 = hi - gr * (hi - lo); f1 = sign * resid(x1);
        }
    }
    return 0.5 * (lo + hi);
}

inline BestApproxResult remez_minimax(const PeriodicFn& f, std::int64_t n, double tol,
                                      const TrigPoly& warm_start, int max_iters) {
    const std::size_t d = trig_dim(n);
    const std::size_t ref_size = d + 1;  // 2n alternation points
    const std::size_t grid_n = std::max<std::size_t>(4096, ref_size * 32);
    const double gh = two_pi / static_cast<double>(grid_n);

    TrigPoly current = warm_start;
    auto resid = [&](double x) { return f.eval(x) - current.eval(x); };

    // initial reference: alternating extrema of the warm-start residual
    std::vector<double> ref;
    {
        std::vector<double> rv(grid_n);
        for (std::size_t i = 0; i < grid_n; ++i) rv[i] = resid(static_cast<double>(i) * gh);
        std::vector<std::pair<double, double>> ext;  // (x, r)
        for (std::size_t i = 0; i < grid_n; ++i) {
            const std::size_t l = (i + grid_n - 1) % grid_n, rr = (i + 1) % grid_n;
            if (std::fabs(rv[i]) >= std::fabs(rv[l]) && std::fabs(rv[i]) >= std::fabs(rv[rr])) {
                const double sgn = rv[i] >= 0.0 ? 1.0 : -1.0;
                const double x = refine_extremum(resid, static_cast<double>(i) * gh - gh,
                                                 static_cast<double>(i) * gh + gh, sgn);
                ext.emplace_back(std::fmod(x + two_pi, two_pi), resid(x));
            }
        }
        std::sort(ext.begin(), ext.end());
        // collapse same-sign runs, keep the largest magnitude in each run
        std::vector<std::pair<double, double>> alt;
        for (const auto& e : ext) {
            if (!alt.empty() && (alt.back().second >= 0.0) == (e.second >= 0.0)) {
                if (std::fabs(e.second) > std::fabs(alt.back().second)) alt.back() = e;
            } else {
                alt.push_back(e);
            }
        }
        while (alt.size() > ref_size) {
            std::size_t worst = 0;
            for (std::size_t i = 1; i < alt.size(); ++i)
                if (std::fabs(alt[i].second) < std::fabs(alt[worst].second)) worst = i;
            alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(worst));
            // removing one point can merge same-sign neighbours
            for (std::size_t i = 0; i + 1 < alt.size();) {
                if ((alt[i].second >= 0.0) == (alt[i + 1].second >= 0.0)) {
                    if (std::fabs(alt[i].second) < std::fabs(alt[i + 1].second))
                        alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(i));
                    else
                        alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(i + 1));
                } else {
                    ++i;
                }
            }
        }
        if (alt.size() < ref_size) {
            ref.resize(ref_size);
            for (std::size_t i = 0; i < ref_size; ++i)
                ref[i] = static_cast<double>(i) * two_pi / static_cast<double>(ref_size);
        } else {
            for (const auto& e : alt) ref.push_back(e.first);
        }
    }

    BestApproxResult out;
    for (int iter = 0; iter < max_iters; ++iter) {
        RemezState st = remez_solve(f, n, ref);
        current = coeffs_to_poly(n, st.coeffs);
        // locate extrema of the new residual
        std::vector<double> rv(grid_n);
        double maxabs = 0.0;
        for (std::size_t i = 0; i < grid_n; ++i) {
            rv[i] = resid(static_cast<double>(i) * gh);
            maxabs = std::max(maxabs, std::fabs(rv[i]));
        }
        std::vector<std::pair<double, double>> ext;
        for (std::size_t i = 0; i < grid_n; ++i) {
            const std::size_t l = (i + grid_n - 1) % grid_n, rr = (i + 1) % grid_n;
            if (std::fabs(rv[i]) >= std::fabs(rv[l]) && std::fabs(rv[i]) >= std::fabs(rv[rr]) &&
                std::fabs(rv[i]) > 1e-3 * maxabs) {
                const double sgn = rv[i] >= 0.0 ? 1.0 : -1.0;
                const double x = refine_extremum(resid, static_cast<double>(i) * gh - gh,
                                                 static_cast<double>(i) * gh + gh, sgn);
                const double xr = std::fmod(x + two_pi, two_pi);
                ext.emplace_back(xr, resid(xr));
                maxabs = std::max(maxabs, std::fabs(ext.back().second));
            }
        }
        std::sort(ext.begin(), ext.end());
        std::vector<std::pair<double, double>> alt;
        for (const auto& e : ext) {
            if (!alt.empty() && (alt.back().second >= 0.0) == (e.second >= 0.0)) {
                if (std::fabs(e.second) > std::fabs(alt.back().second)) alt.back() = e;
            } else {
                alt.push_back(e);
            }
        }
        if (!alt.empty() && alt.size() > 1 &&
            (alt.front().second >= 0.0) == (alt.back().second >= 0.0)) {
            if (std::fabs(alt.front().second) < std::fabs(alt.back().second))
                alt.erase(alt.begin());
            else
                alt.pop_back();
        }
        while (alt.size() > ref_size) {
            std::size_t worst = 0;
            for (std::size_t i = 1; i < alt.size(); ++i)
                if (std::fabs(alt[i].second) < std::fabs(alt[worst].second)) worst = i;
            alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(worst));
            for (std::size_t i = 0; i + 1 < alt.size();) {
                if ((alt[i].second >= 0.0) == (alt[i + 1].second >= 0.0)) {
                    if (std::fabs(alt[i].second) < std::fabs(alt[i + 1].second))
                        alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(i));
                    else
                        alt.erase(alt.begin() + static_cast<std::ptrdiff_t>(i + 1));
                } else {
                    ++i;
                }
            }
        }
        const double defect = (maxabs > 0.0) ? (maxabs - std::fabs(st.h)) / maxabs : 0.0;
        if (maxabs <= tol || (defect <= std::max(tol, 1e-12) && alt.size() >= ref_size)) {
            out.value = maxabs;
            out.minimizer = current;
            out.certificate = ApproxCertificate::equioscillation;
            out.residual = std::max(defect, 0.0);
            out.converged = true;
            return out;
        }
        if (alt.size() == ref_size) {
            ref.clear();
            for (const auto& e : alt) ref.push_back(e.first);
        }
        // otherwise keep the previous reference and re-level
    }
    out.value = sampled_max([&](double x) { return std::fabs(resid(x)); }, 0.0, two_pi);
    out.minimizer = current;
    out.certificate = ApproxCertificate::equioscillation;
    out.residual = 1.0;
    out.converged = false;
    out.message = "remez: iteration cap reached without equioscillation";
    return out;
}

// Smooth convex descent for 1 < p < inf over the 2n-1 coefficients,
// Barzilai-Borwein steps, KKT residual = sup-norm of the gradient.
inline BestApproxResult lp_descent(const PeriodGrid& grid, std::int64_t n, double p, double tol,
                                   std::vector<double> c0, int max_iters) {
    const std::size_t d = trig_dim(n);
    const std::size_t N = grid.size;
    std::vector<double> B(N * d);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < d; ++j) B[i * d + j] = trig_basis(n, j, grid.t[i]);

    auto objective_grad = [&](const std::vector<double>& c, std::vector<double>& g) {
        double obj = 0.0;
        std::fill(g.begin(), g.end(), 0.0);
        for (std::size_t i = 0; i < N; ++i) {
            double fit = 0.0;
            for (std::size_t j = 0; j < d; ++j) fit += B[i * d + j] * c[j];
            const double res = grid.v[i] - fit;
            const double ares = std::fabs(res);
            obj += grid.h * std::pow(ares, p);
            if (ares > 0.0) {
                const double w = -p * grid.h * std::pow(ares, p - 1.0) * (res >= 0.0 ? 1.0 : -1.0);
                for (std::size_t j = 0; j < d; ++j) g[j] += w * B[i * d + j];
            }
        }
        return obj;
    };

    std::vector<double> c = std::move(c0), g(d), gp(d), cp(d);
    double obj = objective_grad(c, g);
    const double scale = std::max(1.0, std::pow(obj, (p - 1.0) / p));
    double step = 1e-2 / scale;
    BestApproxResult out;
    for (int iter = 0; iter < max_iters; ++iter) {
        double gnorm = 0.0;
        for (double gi : g) gnorm = std::max(gnorm, std::fabs(gi));
        if (gnorm <= tol * scale) {
            out.value = std::pow(obj, 1.0 / p);
            out.minimizer = coeffs_to_poly(n, c);
            out.certificate = ApproxCertificate::kkt_residual;
            out.residual = gnorm;
            out.converged = true;
            return out;
        }
        cp = c;
        gp = g;
        for (std::size_t j = 0; j < d; ++j) c[j] -= step * g[j];
        double newobj = objective_grad(c, g);
        int backtracks = 0;
        while (newobj > obj && backtracks < 60) {
            step *= 0.5;
            c = cp;
            for (std::size_t j = 0; j < d; ++j) c[j] -= step * gp[j];
            newobj = objective_grad(c, g);
            ++backtracks;
        }
        obj = newobj;
        // Barzilai-Borwein step for the next iteration
        double sty = 0.0, sts = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double s = c[j] - cp[j];
            const double y = g[j] - gp[j];
            sty += s * y;
            sts += s * s;
        }
        if (sty > 0.0 && sts > 0.0) step = std::clamp(sts / sty, 1e-14, 1e6);
    }
    double gnorm = 0.0;
    for (double gi : g) gnorm = std::max(gnorm, std::fabs(gi));
    out.value = std::pow(obj, 1.0 / p);
    out.minimizer = coeffs_to_poly(n, c);
    out.certificate = ApproxCertificate::kkt_residual;
    out.residual = gnorm;
    out.converged = gnorm <= 1e3 * tol * scale;
    if (!out.converged) out.message = "lp_descent: iteration cap reached";
    return out;
}

}  // namespace detail

struct BestApproxOptions {
    int remez_cap = 200;
    int descent_cap = 5000;
    std::size_t grid_points = 4096;
};

// E_n(f)_{L_p}: best approximation by trig polynomials of order n-1.
inline BestApproxResult best_approx(const PeriodicFn& f, std::int64_t n, const LpExponent& p,
                                    double tol, const BestApproxOptions& opt = {}) {
    if (n < 1) throw std::domain_error("best_approx: n must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("best_approx: tol must be positive");

    // p = 2 is exact: Fourier partial sum + Parseval
    const TrigPoly s2 = fourier_partial_sum(f, n, std::min(tol, 1e-11));
    if (!p.is_inf() && p.value() == 2.0) {
        BestApproxResult out;
        out.minimizer = s2;
        out.certificate = ApproxCertificate::parseval_exact;
        if (f.poly) {
            double e2 = 0.0;
            for (std::size_t k = static_cast<std::size_t>(n - 1); k < f.poly->order(); ++k)
                e2 += f.poly->a[k] * f.poly->a[k] + f.poly->b[k] * f.poly->b[k];
            out.value = std::sqrt(std::numbers::pi * e2);
        } else if (f.kernel) {
            out.value = std::sqrt(std::numbers::pi *
                                  tail_sum(2.0 * f.kernel->alpha, f.kernel->r,
                                           static_cast<double>(n)).value);
        } else {
            auto res = [&](double t) {
                const double rr = f.eval(t) - s2.eval(t);
                return rr * rr;
            };
            out.value = std::sqrt(midpoint_doubling(res, 0.0, two_pi, tol * tol));
        }
        out.residual = 0.0;
        return out;
    }

    if (p.is_inf()) return detail::remez_minimax(f, n, tol, s2, opt.remez_cap);

    const detail::PeriodGrid grid(f, opt.grid_points);
    std::vector<double> c0 = detail::poly_to_coeffs(n, s2);
    if (p.value() > 1.0)
        return detail::lp_descent(grid, n, p.value(), tol, std::move(c0), opt.descent_cap);

    // p = 1: continuation p -> 1 with a final L1 evaluation
    BestApproxResult st;
    for (double pc : {1.25, 1.1, 1.01}) {
        st = detail::lp_descent(grid, n, pc, tol, std::move(c0), opt.descent_cap);
        c0 = detail::poly_to_coeffs(n, st.minimizer);
    }
    double l1 = 0.0;
    for (std::size_t i = 0; i < grid.size; ++i)
        l1 += grid.h * std::fabs(grid.v[i] - st.minimizer.eval(grid.t[i]));
    st.value = l1;
    st.certificate = ApproxCertificate::kkt_residual;
    return st;
}

struct ShiftResult {
    double lambda = 0.0;
    double value = 0.0;
};

// inf over constants lambda of ||g - lambda||_q.
inline ShiftResult inf_shift(const PeriodicFn& g, const LpExponent& q, double tol,
                             std::size_t grid_points = 8192) {
    if (!(tol > 0.0)) throw std::invalid_argument("inf_shift: tol must be positive");
    if (q.is_inf()) {
        const double mx = sampled_max([&](double t) { return g.eval(t); }, 0.0, two_pi);
        const double mn = -sampled_max([&](double t) { return -g.eval(t); }, 0.0, two_pi);
        return ShiftResult{0.5 * (mx + mn), 0.5 * (mx - mn)};
    }
    const detail::PeriodGrid grid(g, grid_points);
    double lo = grid.v[0], hi = grid.v[0];
    for (double v : grid.v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) return ShiftResult{lo, 0.0};
    const double qq = q.value();
    // derivative of ||g-lambda||_q^q in lambda, strictly decreasing in lambda
    auto slope = [&](double lam) {
        double s = 0.0;
        for (double v : grid.v) {
            const double dcur = v - lam;
            if (qq == 1.0)
                s += (dcur > 0.0) ? 1.0 : (dcur < 0.0 ? -1.0 : 0.0);
            else
                s += std::pow(std::fabs(dcur), qq - 1.0) * (dcur >= 0.0 ? 1.0 : -1.0);
        }
        return s;
    };
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::fabs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (slope(mid) > 0.0) lo = mid; else hi = mid;
    }
    const double lam = 0.5 * (lo + hi);
    double s = 0.0;
    for (double v : grid.v) s += grid.h * std::pow(std::fabs(v - lam), qq);
    return ShiftResult{lam, std::pow(s, 1.0 / qq)};
}

}  // namespace pinterp
