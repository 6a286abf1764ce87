#pragma once
//
// kernels.hpp : the generalized Poisson kernel P_{alpha,r,beta}, certified tail
// sums of e^{-alpha k^r}, the interpolation remainder r_n, the phase gamma_n,
// the admissibility condition for the remainder bound, and the threshold orders.
//

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "pinterp/certified.hpp"

namespace pinterp {

struct KernelParams {
    double alpha = 1.0;  // decay coefficient, > 0
    double r = 1.0;      // decay exponent, > 0
    double beta = 0.0;   // phase, in units of half-pi rotations

    KernelParams() = default;
    KernelParams(double a, double rr, double b) : alpha(a), r(rr), beta(b) {
        if (!(alpha > 0.0) || !std::isfinite(alpha) || !(r > 0.0) || !std::isfinite(r) ||
            !std::isfinite(beta))
            throw std::domain_error("KernelParams: require alpha > 0, r > 0, all finite");
    }
};

namespace detail {

// Validity threshold of the exponential-power integral estimate with weight t^delta.
inline double exp_power_min_index(double alpha, double r, double delta) {
    const double c = 14.0 * std::fabs(delta + 1.0 - r) / (alpha * r);
    if (c <= 1.0) return 1.0;
    return std::pow(c, 1.0 / r);
}

// Certified upper bound for sum_{k >= m} e^{-alpha k^r + log_scale}, assuming
// m >= exp_power_min_index(alpha, r, 0). Combines the first term with the
// integral comparison for a decreasing summand.
inline double tail_bound_from(double alpha, double r, double m, double log_scale) {
    const double e = -alpha * std::pow(m, r) + log_scale;
    if (e < -745.0) return 0.0;
    const double head = std::exp(e);
    if (r == 1.0) return head / (1.0 - std::exp(-alpha));  // exact geometric sum
    const double integral = head / (alpha * r) * std::pow(m, 1.0 - r) *
                            (1.0 + (14.0 / 13.0) * std::fabs(1.0 - r) /
                                       (alpha * r * std::pow(m, r)));
    return head + integral;
}

}  // namespace detail

// Certified value of e^{log_scale} * sum_{k >= m} e^{-alpha k^r}. The scale
// offset keeps astronomically damped sums representable.
inline CertifiedValue scaled_tail_sum(double alpha, double r, double m, double log_scale = 0.0) {
    if (!(m >= 1.0)) throw std::domain_error("scaled_tail_sum: m must be >= 1");
    if (r == 1.0) {
        const double e = -alpha * m + log_scale;
        const double v = (e < -745.0) ? 0.0 : std::exp(e) / (1.0 - std::exp(-alpha));
        return CertifiedValue(v, 1e-15 * v, Provenance::series_truncation);
    }
    const double m0 = detail::exp_power_min_index(alpha, r, 0.0);
    if (m0 > 2e8)
        throw std::runtime_error("scaled_tail_sum: certified truncation index too large");
    double acc = 0.0;
    double k = m;
    for (;;) {
        if (k >= m0) {
            const double rem = detail::tail_bound_from(alpha, r, k, log_scale);
            if (rem <= 1e-16 * acc || rem == 0.0)
                return CertifiedValue(acc, rem + 1e-15 * acc, Provenance::series_truncation);
        }
        const double e = -alpha * std::pow(k, r) + log_scale;
        if (e < -745.0 && k >= m0) {
            const double rem = detail::tail_bound_from(alpha, r, k, log_scale);
            return CertifiedValue(acc, rem + 1e-15 * acc, Provenance::series_truncation);
        }
        acc += (e < -745.0) ? 0.0 : std::exp(e);
        k += 1.0;
        if (k > m + 5e8) throw std::runtime_error("scaled_tail_sum: no convergence");
    }
}

inline CertifiedValue tail_sum(double alpha, double r, double m) {
    return scaled_tail_sum(alpha, r, m, 0.0);
}

// integral_m^inf e^{-alpha t^r} t^delta dt as main term with the certified
// relative band |Theta| <= 14/13 * |delta+1-r| / (alpha r m^r).
inline CertifiedValue exp_power_integral(std::int64_t m, double alpha, double r, double delta) {
    if (m < 1) throw std::domain_error("exp_power_integral: m must be >= 1");
    if (!(alpha > 0.0) || !(r > 0.0))
        throw std::domain_error("exp_power_integral: require alpha > 0, r > 0");
    const double md = static_cast<double>(m);
    if (r == 1.0 && delta == 0.0)
        return CertifiedValue::exact(std::exp(-alpha * md) / alpha);
    if (md < detail::exp_power_min_index(alpha, r, delta))
        throw std::domain_error("exp_power_integral: m below the certified validity threshold");
    const double main = std::exp(-alpha * std::pow(md, r)) / (alpha * r) *
                        std::pow(md, delta + 1.0 - r);
    const double band = main * (14.0 / 13.0) * std::fabs(delta + 1.0 - r) /
                        (alpha * r * std::pow(md, r));
    return CertifiedValue(main, band, Provenance::series_truncation);
}

// gamma_n = ((2n-1)x + pi(beta-1)) / 2.
inline double gamma_n(double beta, double x, std::int64_t n) {
    if (n < 1) throw std::domain_error("gamma_n: n must be >= 1");
    return 0.5 * ((2.0 * static_cast<double>(n) - 1.0) * x + std::numbers::pi * (beta - 1.0));
}

// P_{alpha,r,beta}(t) with certified truncation error <= tol.
inline CertifiedValue kernel_eval(const KernelParams& params, double t, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("kernel_eval: tol must be positive");
    const double a = params.alpha, r = params.r, half_pi_beta = params.beta * std::numbers::pi / 2.0;
    double sum = 0.0;
    const double m0 = detail::exp_power_min_index(a, r, 0.0);
    double k = 1.0;
    for (;;) {
        sum += std::exp(-a * std::pow(k, r)) * std::cos(k * t - half_pi_beta);
        const double next = k + 1.0;
        if (next >= m0) {
            const double rem = detail::tail_bound_from(a, r, next, 0.0);
            if (rem <= tol) return CertifiedValue(sum, rem, Provenance::series_truncation);
        }
        k = next;
        if (k > 1e9) throw std::runtime_error("kernel_eval: no convergence");
    }
}

// Tail series sum_{k >= n} e^{-alpha k^r} cos(kt + xi), truncated at M with a
// certified bound on the discarded remainder.
struct TailSeries {
    KernelParams params;
    std::int64_t start_index = 1;
    double phase = 0.0;
    std::int64_t truncation_index = 1;
    double tail_bound = 0.0;
    std::vector<double> coeffs;  // e^{-alpha k^r} for k = start_index..truncation_index
};

inline TailSeries make_tail_series(const KernelParams& params, std::int64_t n, double xi,
                                   double tol) {
    if (n < 1) throw std::domain_error("make_tail_series: n must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("make_tail_series: tol must be positive");
    const double m0 = detail::exp_power_min_index(params.alpha, params.r, 0.0);
    double M = std::max(static_cast<double>(n), std::ceil(m0));
    for (;;) {
        const double rem = detail::tail_bound_from(params.alpha, params.r, M + 1.0, 0.0);
        if (rem <= tol) {
            TailSeries series{params, n, xi, static_cast<std::int64_t>(M), rem, {}};
            series.coeffs.reserve(static_cast<std::size_t>(series.truncation_index - n + 1));
            for (std::int64_t k = n; k <= series.truncation_index; ++k)
                series.coeffs.push_back(
                    std::exp(-params.alpha * std::pow(static_cast<double>(k), params.r)));
            return series;
        }
        M += 1.0;
        if (M > 1e9) throw std::runtime_error("make_tail_series: no convergence");
    }
}

inline CertifiedValue tail_cos_eval(const TailSeries& series, double t) {
    // cos(kt + phase) by rotation recurrence, re-anchored periodically to
    // keep the accumulated phase drift below ~1e-13
    const double ct = std::cos(t), st = std::sin(t);
    double ang = static_cast<double>(series.start_index) * t + series.phase;
    double c = std::cos(ang), s = std::sin(ang);
    double sum = 0.0;
    for (std::size_t i = 0; i < series.coeffs.size(); ++i) {
        if ((i & 1023u) == 1023u) {
            ang = (static_cast<double>(series.start_index) + static_cast<double>(i)) * t +
                  series.phase;
            c = std::cos(ang);
            s = std::sin(ang);
        }
        sum += series.coeffs[i] * c;
        const double cn = c * ct - s * st;
        s = c * st + s * ct;
        c = cn;
    }
    return CertifiedValue(sum, series.tail_bound, Provenance::series_truncation);
}

namespace detail {

// Certified upper bound for sum_{v >= m} v e^{-alpha v^r + C}. Uses the
// exponential-comparison bound w^{s-1} <= w0^{s-1} e^{(s-1)(w-w0)/w0} on the
// substituted integral (w = t^r, s = 2/r), valid once alpha - (s-1)/w0 >=
// alpha/2 and the summand is decreasing; earlier terms are added exactly.
inline double weighted_tail_upper(double alpha, double r, double m, double C) {
    const double s1 = (2.0 - r) / r;
    const double need =
        std::max(s1 > 0.0 ? 2.0 * s1 / alpha : 0.0, 1.0 / (alpha * r));  // bound on v^r
    double acc = 0.0;
    double v = m;
    while (std::pow(v, r) < need) {
        const double e = -alpha * std::pow(v, r) + C;
        acc += (e < -745.0) ? 0.0 : v * std::exp(e);
        v += 1.0;
        if (v - m > 5e7) throw std::runtime_error("weighted_tail_upper: span too large");
    }
    const double e0 = -alpha * std::pow(v, r) + C;
    if (e0 >= -745.0) {
        const double denom = alpha - (s1 > 0.0 ? s1 / std::pow(v, r) : 0.0);
        acc += std::exp(e0) * (v + std::pow(v, 2.0 - r) / (r * denom));
    }
    return acc;
}

// Certified upper bound for sum_{k >= K} sum_{v >= (2k+1)n-k} e^{-alpha v^r + C}.
// Each v >= s_K enters at most 1 + (v - s_K)/(2n-1) <= v inner sums, so the
// double sum is dominated by sum_{v >= s_K} v e^{-alpha v^r}.
inline double scaled_double_tail_bound(double alpha, double r, std::int64_t n, std::int64_t K,
                                       double C) {
    const double sK = (2.0 * static_cast<double>(K) + 1.0) * static_cast<double>(n) -
                      static_cast<double>(K);
    return weighted_tail_upper(alpha, r, sK, C);
}

}  // namespace detail

// Certified upper bound for the full double sum sum_{k>=1} sum_{v>=(2k+1)n-k}
// e^{-alpha v^r + C} (C is a log-scale offset). Reordered as a single pass
// over v with multiplicity floor((v-n)/(2n-1)) = #{k >= 1 : s_k <= v}, with a
// certified cutoff via the weighted tail bound.
inline CertifiedValue scaled_remainder_double_sum(const KernelParams& params, std::int64_t n,
                                                  double C = 0.0) {
    if (n < 1) throw std::domain_error("scaled_remainder_double_sum: n must be >= 1");
    const double a = params.alpha, r = params.r;
    const double twon1 = 2.0 * static_cast<double>(n) - 1.0;
    const double s1 = 3.0 * static_cast<double>(n) - 1.0;
    double acc = 0.0;
    double v = s1;
    for (;;) {
        const double mult = std::floor((v - static_cast<double>(n)) / twon1);
        const double e = -a * std::pow(v, r) + C;
        acc += (e < -745.0) ? 0.0 : mult * std::exp(e);
        v += 1.0;
        const double rest = detail::weighted_tail_upper(a, r, v, C) / twon1;
        if (rest <= std::max(1e-14 * acc, 1e-300) || rest == 0.0)
            return CertifiedValue(acc, rest, Provenance::series_truncation);
        if (v - s1 > 5e7)
            throw std::runtime_error("scaled_remainder_double_sum: no convergence");
    }
}

// r_n(t): the double-series interpolation remainder, evaluated with certified
// truncation of both indices.
inline CertifiedValue remainder_rn(const KernelParams& params, double x, std::int64_t n, double t,
                                   double tol) {
    if (n < 1) throw std::domain_error("remainder_rn: n must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("remainder_rn: tol must be positive");
    const double a = params.alpha, r = params.r;
    const double twon1 = 2.0 * static_cast<double>(n) - 1.0;
    double acc = 0.0, err = 0.0;
    for (std::int64_t k = 1;; ++k) {
        const double sk = (2.0 * static_cast<double>(k) + 1.0) * static_cast<double>(n) -
                          static_cast<double>(k);
        const double block_bound = scaled_tail_sum(a, r, sk).upper();
        const double outer_rest = detail::scaled_double_tail_bound(a, r, n, k + 1, 0.0);
        if (block_bound < 1e-18 || (outer_rest <= tol && k > 1)) {
            err += outer_rest + block_bound;
            return CertifiedValue(acc, err, Provenance::series_truncation);
        }
        const double phase = (static_cast<double>(k) + 0.5) * twon1 * x +
                             params.beta * std::numbers::pi / 2.0;
        double v = sk;
        for (;;) {
            const double e = -a * std::pow(v, r);
            if (e >= -745.0) acc += std::exp(e) * std::sin(v * t + phase);
            v += 1.0;
            const double rem = (v >= detail::exp_power_min_index(a, r, 0.0))
                                   ? detail::tail_bound_from(a, r, v, 0.0)
                                   : 1e308;
            if (rem <= tol / (2.0 * static_cast<double>(k) * static_cast<double>(k))) {
                err += rem;
                break;
            }
            if (v - sk > 5e7) throw std::runtime_error("remainder_rn: inner sum too long");
        }
        if (k > 100000) throw std::runtime_error("remainder_rn: no convergence");
    }
}

// Admissibility condition for the certified remainder bound: 1/(alpha r n^r) + alpha r / n^{1-r} <= 1/14.
inline bool remainder_bound_applicable(const KernelParams& params, std::int64_t n) {
    const double a = params.alpha, r = params.r;
    const double nd = static_cast<double>(n);
    return 1.0 / (a * r * std::pow(nd, r)) + a * r / std::pow(nd, 1.0 - r) <= 1.0 / 14.0;
}

struct RemainderBoundResult {
    CertifiedValue lhs;         // double sum, may underflow to 0 for huge n
    double rhs = 0.0;           // (636/169) n^{1-r}/(alpha r) e^{-alpha(3n-1)^r}
    bool holds = false;
    bool applicable = false;
    double log_scale = 0.0;     // alpha (3n-1)^r; scaled quantities carry e^{+log_scale}
    CertifiedValue lhs_scaled;
    double rhs_scaled = 0.0;
};

inline RemainderBoundResult remainder_bound_check(const KernelParams& params, std::int64_t n) {
    if (n < 1) throw std::domain_error("remainder_bound_check: n must be >= 1");
    RemainderBoundResult res;
    res.applicable = remainder_bound_applicable(params, n);
    const double a = params.alpha, r = params.r, nd = static_cast<double>(n);
    const double C = a * std::pow(3.0 * nd - 1.0, r);
    res.log_scale = C;
    res.rhs_scaled = (636.0 / 169.0) * std::pow(nd, 1.0 - r) / (a * r);
    res.rhs = (C > 700.0) ? 0.0 : res.rhs_scaled * std::exp(-C);
    if (!res.applicable) return res;  // not-applicable, no truth claim
    res.lhs_scaled = scaled_remainder_double_sum(params, n, C);
    const double unscale = (C > 700.0) ? 0.0 : std::exp(-C);
    res.lhs = CertifiedValue(res.lhs_scaled.value * unscale, res.lhs_scaled.abs_err * unscale,
                             Provenance::series_truncation);
    res.holds = res.lhs_scaled.upper() < res.rhs_scaled;
    return res;
}

enum class ThresholdKind { n_star, n_0, n_1 };

namespace detail {

inline long double threshold_lhs(ThresholdKind kind, double alpha, double r, double chi,
                                 long double n) {
    const long double ar = static_cast<long double>(alpha) * r;
    const long double nr = std::pow(n, static_cast<long double>(r));
    const long double n1r = std::pow(n, static_cast<long double>(1.0 - r));
    switch (kind) {
        case ThresholdKind::n_star:
            return std::log(std::numbers::pi_v<long double> * n) / (ar * nr) + ar * chi / n1r;
        case ThresholdKind::n_0:
            return 1.0L / (ar * nr) + ar * chi / n1r;
        case ThresholdKind::n_1:
            return (1.0L + std::log(std::numbers::pi_v<long double> * n1r / ar)) / (ar * nr) +
                   ar / n1r;
    }
    return 0.0L;
}

}  // namespace detail

// Smallest n satisfying the threshold inequality for n_*, n_0 or n_1.
inline std::int64_t threshold(const KernelParams& params, const LpExponent& p,
                              ThresholdKind kind) {
    if (!(params.r > 0.0 && params.r < 1.0))
        throw std::domain_error("threshold: defined for r in (0,1) only");
    const double chi = p.is_inf() ? 1.0 : p.value();
    long double rhs;
    const long double c3pi = 1.0L / std::pow(3.0L * std::numbers::pi_v<long double>, 3.0L);
    if (kind == ThresholdKind::n_1) {
        rhs = c3pi;
    } else if (p.is_inf()) {
        rhs = c3pi;
    } else if (p.value() == 1.0) {
        rhs = 1.0L / 14.0L;
    } else {
        rhs = c3pi * static_cast<long double>((p.value() - 1.0) / p.value());
    }
    const bool strict = (kind == ThresholdKind::n_1);
    auto ok = [&](std::int64_t n) {
        const long double lhs =
            detail::threshold_lhs(kind, params.alpha, params.r, chi, static_cast<long double>(n));
        return strict ? (lhs < rhs) : (lhs <= rhs);
    };
    const std::int64_t cap = std::int64_t{1} << 62;
    std::int64_t hi = 1;
    while (!ok(hi)) {
        if (hi >= cap) throw std::overflow_error("threshold: exceeds 2^62");
        hi *= 2;
    }
    std::int64_t lo = hi / 2;  // lo == 0 when hi == 1
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (ok(mid)) hi = mid; else lo = mid;
    }
    // the criterion is not globally monotone for small n; walk back if needed
    while (hi > 1 && ok(hi - 1)) --hi;
    return hi;
}

}  // namespace pinterp
