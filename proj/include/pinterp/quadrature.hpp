#pragma once
//
// quadrature.hpp : adaptive Simpson quadrature, composite-midpoint doubling
// for periodic integrands, and sampled maximum refinement.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace pinterp {

namespace detail {

template <class F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Interval-halving Simpson; the two-level difference drives the stopping rule.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 48) {
    if (!(tol > 0.0)) throw std::invalid_argument("adaptive_simpson: tol must be positive");
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, 0.5 * tol, max_depth);
}

// Composite midpoint with 2^m panels, m adapted until two successive levels
// differ by at most tol/4. Spectrally accurate on smooth periodic integrands.
template <class F>
double midpoint_doubling(const F& f, double a, double b, double tol, int min_level = 4,
                         int max_level = 22) {
    if (!(tol > 0.0)) throw std::invalid_argument("midpoint_doubling: tol must be positive");
    double prev = 0.0;
    bool have_prev = false;
    for (int level = min_level; level <= max_level; ++level) {
        const std::size_t panels = std::size_t{1} << level;
        const double h = (b - a) / static_cast<double>(panels);
        double s = 0.0;
        for (std::size_t i = 0; i < panels; ++i) s += f(a + (static_cast<double>(i) + 0.5) * h);
        s *= h;
        if (have_prev && std::fabs(s - prev) <= 0.25 * tol) return s;
        prev = s;
        have_prev = true;
    }
    return prev;
}

// Max of g over [a,b): dense sampling followed by local golden-section refinement.
template <class F>
double sampled_max(const F& g, double a, double b, std::size_t samples = 4096,
                   int refine_iters = 60) {
    if (samples < 8) samples = 8;
    const double h = (b - a) / static_cast<double>(samples);
    std::vector<double> v(samples);
    for (std::size_t i = 0; i < samples; ++i) v[i] = g(a + static_cast<double>(i) * h);
    double best = v[0];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (std::size_t i = 0; i < samples; ++i) {
        const std::size_t l = (i + samples - 1) % samples, rr = (i + 1) % samples;
        if (v[i] < v[l] || v[i] < v[rr]) continue;  // local max only
        double lo = a + (static_cast<double>(i) - 1.0) * h;
        double hi = a + (static_cast<double>(i) + 1.0) * h;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = g(x1), f2 = g(x2);
        for (int it = 0; it < refine_iters; ++it) {
            if (f1 < f2) {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + gr * (hi - lo); f2 = g(x2);
            } else {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - gr * (hi - lo); f1 = g(x1);
            }
        }
        best = std::max(best, std::max(f1, f2));
    }
    return best;
}

}  // namespace pinterp
