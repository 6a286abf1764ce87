#pragma once
//
// specfun.hpp : Gamma, complete elliptic integral K, Gauss hypergeometric 2F1,
// Favard constants, the I_s(v) norms of 1/sqrt(1+t^2), and ||cos||_q.
//

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pinterp/certified.hpp"
#include "pinterp/quadrature.hpp"

namespace pinterp {

inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: x must be positive");
    return std::tgamma(x);
}

// Complete elliptic integral of the first kind, arithmetic-geometric mean.
inline CertifiedValue elliptic_K(double q) {
    if (!(q >= 0.0 && q < 1.0)) throw std::domain_error("elliptic_K: q must lie in [0,1)");
    double a = 1.0, g = std::sqrt(1.0 - q * q);
    for (int it = 0; it < 64 && std::fabs(a - g) > 1e-17 * a; ++it) {
        const double an = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = an;
    }
    const double k = std::numbers::pi / (2.0 * a);
    return CertifiedValue(k, 1e-14 * std::max(1.0, k), Provenance::series_truncation);
}

// Gauss hypergeometric F(a,b;c;z) on z in [0,1]; z=1 via the Gauss summation.
inline CertifiedValue hyp2f1(double a, double b, double c, double z) {
    if (c <= 0.0 && c == std::floor(c))
        throw std::domain_error("hyp2f1: c must not be a nonpositive integer");
    if (!(z >= 0.0 && z <= 1.0)) throw std::domain_error("hyp2f1: z must lie in [0,1]");
    if (z == 1.0) {
        const double s = c - a - b;
        if (!(s > 0.0)) throw std::domain_error("hyp2f1: divergent at z=1 (c-a-b <= 0)");
        const double v = gamma_fn(c) * gamma_fn(s) / (gamma_fn(c - a) * gamma_fn(c - b));
        return CertifiedValue(v, 1e-13 * std::fabs(v), Provenance::series_truncation);
    }
    // Terminating when a or b is a nonpositive integer; otherwise sum with a
    // geometric tail bound once the term ratio is below 1 and shrinking.
    double term = 1.0, sum = 1.0;
    const int kmax = 2000000;
    const double safe_k = std::fabs(a) + std::fabs(b) + std::fabs(c) + 2.0;
    for (int k = 0; k < kmax; ++k) {
        const double ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        term *= ratio;
        sum += term;
        if (k + 1.0 > safe_k) {
            const double rho = std::fabs((a + k + 1) * (b + k + 1) / ((c + k + 1) * (k + 2.0)) * z);
            if (rho < 1.0) {
                const double tail = std::fabs(term) * rho / (1.0 - rho);
                if (tail <= 1e-14 * std::max(1.0, std::fabs(sum)))
                    return CertifiedValue(sum, tail + 1e-15 * std::fabs(sum),
                                          Provenance::series_truncation);
            }
        }
        if (term == 0.0)
            return CertifiedValue(sum, 1e-15 * std::fabs(sum), Provenance::series_truncation);
    }
    throw std::runtime_error("hyp2f1: series did not converge");
}

// Favard constant K_r = (4/pi) sum_{v>=0} (-1)^{v(r+1)} / (2v+1)^{r+1}.
inline CertifiedValue favard(int r) {
    if (r < 1) throw std::domain_error("favard: r must be a positive integer");
    const bool alternating = (r % 2 == 0);
    const double c = 4.0 / std::numbers::pi;
    if (!alternating) {
        // sum_{v>=0} (2v+1)^{-(r+1)} = (1 - 2^{-(r+1)}) zeta(r+1)
        const double v = c * (1.0 - std::pow(2.0, -(r + 1.0))) *
                         std::riemann_zeta(static_cast<double>(r + 1));
        return CertifiedValue(v, 1e-13 * v, Provenance::series_truncation);
    }
    double sum = 0.0;
    for (long v = 0;; ++v) {
        const double den = std::pow(2.0 * static_cast<double>(v) + 1.0, r + 1);
        sum += (v % 2 == 1) ? -1.0 / den : 1.0 / den;
        const double tail = 1.0 / std::pow(2.0 * static_cast<double>(v) + 3.0, r + 1);
        if (c * tail <= 1e-12 || v > 100000000L)
            return CertifiedValue(c * sum, c * tail, Provenance::series_truncation);
    }
}

// I_s(v) = || 1/sqrt(1+t^2) ||_{L_s[0,v]}.
inline CertifiedValue I_s(double s, double v) {
    if (!(v >= 0.0)) throw std::domain_error("I_s: v must be nonnegative");
    if (!(s >= 1.0)) throw std::domain_error("I_s: s must lie in [1,inf]");
    if (std::isinf(s)) return CertifiedValue::exact(1.0);  // sup attained at t=0
    const double tol = 1e-12;
    const double integral = adaptive_simpson(
        [s](double t) { return std::pow(1.0 + t * t, -0.5 * s); }, 0.0, v, tol);
    const double val = std::pow(integral, 1.0 / s);
    // error through the 1/s power: |dI| <= |dJ| * I / (s J)
    double err = 1e-11;
    if (integral > 0.0) err = std::max(1e-13, tol * val / (s * integral));
    return CertifiedValue(val, std::min(err, 1e-11), Provenance::quadrature);
}

// I_s(inf) = ( (sqrt(pi)/2) Gamma((s-1)/2) / Gamma(s/2) )^{1/s}, s > 1.
inline CertifiedValue I_s_infinity(double s) {
    if (!(s > 1.0)) throw std::domain_error("I_s_infinity: requires s > 1");
    if (std::isinf(s)) return CertifiedValue::exact(1.0);
    const double integral =
        0.5 * std::sqrt(std::numbers::pi) * gamma_fn(0.5 * (s - 1.0)) / gamma_fn(0.5 * s);
    const double val = std::pow(integral, 1.0 / s);
    return CertifiedValue(val, 1e-13 * std::max(1.0, val), Provenance::series_truncation);
}

// ||cos||_q over one period; 1 for q = inf.
inline CertifiedValue cos_norm(const LpExponent& q) {
    if (q.is_inf()) return CertifiedValue::exact(1.0);
    const double qq = q.value();
    const double tol = 1e-13;
    // |cos| has period pi and quarter-wave symmetry.
    const double quarter = adaptive_simpson(
        [qq](double t) { return std::pow(std::cos(t), qq); }, 0.0, std::numbers::pi / 2.0, tol);
    const double integral = 4.0 * quarter;
    const double val = std::pow(integral, 1.0 / qq);
    const double err = std::max(1e-13, 4.0 * tol * val / (qq * integral));
    return CertifiedValue(val, std::min(err, 1e-12), Provenance::quadrature);
}

}  // namespace pinterp
