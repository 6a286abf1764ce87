#pragma once
//
// acceptance.hpp : the end-to-end verification suite. Each check prints one
// pass/fail line; the suite is deterministic for a fixed seed.
//

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pinterp/approx.hpp"
#include "pinterp/extremes.hpp"
#include "pinterp/kernels.hpp"
#include "pinterp/specfun.hpp"
#include "pinterp/trig.hpp"

namespace pinterp {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // worst-case figure observed
};

namespace acceptance_detail {

// Independent evaluation of the p=2 class supremum through the deviation
// kernel: coefficient j of Psi_x is the damped bracket between the point
// evaluation and the interpolation weights; orders below n cancel identically,
// so only j >= n contributes to the norm.
inline double deviation_kernel_norm_p2(const KernelParams& params, std::int64_t n, double x) {
    const double a = params.alpha, r = params.r;
    const double phase = params.beta * std::numbers::pi / 2.0;
    const double scale = std::exp(-a * std::pow(static_cast<double>(n), r));
    std::int64_t M = n;
    while (std::exp(-a * std::pow(static_cast<double>(M + 1), r)) > 1e-12 * scale && M < 2000000)
        ++M;
    const NodeGrid grid(n);
    std::vector<double> w(grid.nodes.size());
    const double wf = 2.0 / static_cast<double>(grid.nodes.size());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = wf * dirichlet(n, x - grid.nodes[k]);
    double s = 0.0;
    for (std::int64_t j = n; j <= M; ++j) {
        const double jd = static_cast<double>(j);
        const double damp = std::exp(-a * std::pow(jd, r));
        double cj = std::cos(jd * x - phase);
        double sj = std::sin(jd * x - phase);
        for (std::size_t k = 0; k < w.size(); ++k) {
            cj -= w[k] * std::cos(jd * grid.nodes[k] - phase);
            sj -= w[k] * std::sin(jd * grid.nodes[k] - phase);
        }
        s += damp * damp * (cj * cj + sj * sj);
    }
    return std::sqrt(s / std::numbers::pi);
}

inline std::int64_t least_admissible_n(const KernelParams& params) {
    auto ok = [&](std::int64_t n) { return remainder_bound_applicable(params, n); };
    std::int64_t hi = 1;
    while (!ok(hi)) {
        if (hi >= (std::int64_t{1} << 60))
            throw std::overflow_error("least_admissible_n: exceeds 2^60");
        hi *= 2;
    }
    std::int64_t lo = hi / 2;
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (ok(mid)) hi = mid; else lo = mid;
    }
    while (hi > 1 && ok(hi - 1)) --hi;
    return hi;
}

inline TrigPoly random_poly(std::mt19937_64& rng, std::size_t order) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    TrigPoly p = TrigPoly::zero(order);
    for (std::size_t k = 0; k < order; ++k) {
        p.a[k] = gauss(rng);
        p.b[k] = gauss(rng);
    }
    return p;
}

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

}  // namespace acceptance_detail

inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 42) {
    namespace ad = acceptance_detail;
    std::vector<CriterionResult> results;
    const std::vector<double> xs = {0.31, 0.77, 1.3, 2.05, 2.9};
    const std::vector<std::int64_t> ns = {2, 4, 8, 16, 32};

    // 1: exact p=2 series vs the independent deviation-kernel norm
    {
        CriterionResult c{1, "exact p=2 series vs deviation-kernel oracle", true, ""};
        double worst = 0.0;
        for (const auto& [al, rr] :
             std::vector<std::pair<double, double>>{{1, 0.5}, {2, 0.3}, {1, 1}, {0.5, 2}}) {
            const KernelParams params(al, rr, 0.7);
            for (std::int64_t n : ns) {
                for (double x : xs) {
                    const double oracle = ad::deviation_kernel_norm_p2(params, n, x);
                    const double tol = std::max(1e-140, 1e-11 * oracle);
                    const double lib = exact_p2(params, n, x, tol).value;
                    const double rel = std::fabs(lib - oracle) / std::max(oracle, 1e-300);
                    worst = std::max(worst, rel);
                }
            }
        }
        c.passed = worst <= 1e-8;
        c.detail = "worst relative error " + ad::fmt(worst);
        results.push_back(c);
    }

    // 2: r=1 closed form vs the series
    {
        CriterionResult c{2, "r=1 closed form vs series", true, ""};
        double worst = 0.0;
        for (double al : {0.5, 1.0, 2.0}) {
            const KernelParams params(al, 1.0, 0.7);
            for (std::int64_t n : ns) {
                for (double x : xs) {
                    const double cf = exact_p2_r1(al, n, x);
                    const double tol = std::max(1e-140, 1e-14 * cf);
                    const double series = exact_p2(params, n, x, tol).value;
                    const double rel = std::fabs(series - cf) / std::max(cf, 1e-300);
                    worst = std::max(worst, rel);
                }
            }
        }
        c.passed = worst <= 1e-12;
        c.detail = "worst relative error " + ad::fmt(worst);
        results.push_back(c);
    }

    // 3: certified remainder double sum below its closed-form majorant
    {
        CriterionResult c{3, "remainder double-sum majorant (certified, log-scaled)", true, ""};
        double worst_margin = 1e300;
        bool all = true;
        auto run_case = [&](const KernelParams& params, std::int64_t n) {
            const RemainderBoundResult res = remainder_bound_check(params, n);
            all = all && res.applicable && res.holds;
            if (res.rhs_scaled > 0.0)
                worst_margin = std::min(worst_margin, res.lhs_scaled.upper() / res.rhs_scaled);
        };
        {
            const KernelParams params(3.0, 0.5, 0.0);
            for (std::int64_t n : {921, 1500, 3000}) run_case(params, n);
        }
        {
            const KernelParams params(1.0, 0.9, 0.0);
            const std::int64_t n0 = ad::least_admissible_n(params);
            run_case(params, n0);
            run_case(params, 2 * n0);
        }
        c.passed = all;
        c.detail = "worst lhs/rhs ratio " + ad::fmt(worst_margin);
        results.push_back(c);
    }

    // 4: Lebesgue function tracks (2/pi)|sin((2n-1)x/2)| ln n within O(1)
    {
        CriterionResult c{4, "Lebesgue function asymptotics", true, ""};
        double worst = 0.0;
        for (std::int64_t n : {8, 16, 32, 64, 128}) {
            const double ln_n = std::log(static_cast<double>(n));
            for (int i = 0; i < 2000; ++i) {
                const double x = two_pi * (static_cast<double>(i) + 0.5) / 2000.0;
                const double dev = std::fabs(lebesgue_fn(n, x) -
                                             2.0 / std::numbers::pi * sin_factor(n, x) * ln_n);
                worst = std::max(worst, dev);
            }
        }
        c.passed = worst <= 3.0;
        c.detail = "max deviation " + ad::fmt(worst);
        results.push_back(c);
    }

    // 5: pointwise deviation bound for synthesized class members
    {
        CriterionResult c{5, "pointwise deviation bound on synthesized class members", true, ""};
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unif(0.0, 2.0);
        const std::vector<std::pair<double, double>> pars = {{1, 0.5}, {2, 0.3}, {0.7, 0.8}};
        double worst_ratio = 0.0;
        bool all = true;
        const std::int64_t n_cycle[3] = {8, 16, 32};
        for (int i = 0; i < 20; ++i) {
            const int p_idx = i % 3;
            const LpExponent p = (p_idx == 0)   ? LpExponent(2.0)
                                 : (p_idx == 1) ? LpExponent::infinity()
                                                : LpExponent(1.0);
            // keep the L1 continuation solver on the small order
            const std::int64_t n = (p_idx == 2) ? 8 : n_cycle[(i / 3) % 3];
            const auto [al, rr] = pars[static_cast<std::size_t>(i) % pars.size()];
            const KernelParams params(al, rr, unif(rng));
            const TrigPoly phi = ad::random_poly(rng, static_cast<std::size_t>(2 * n));
            const PeriodicFn phi_fn = PeriodicFn::from_poly(phi);
            const double En = best_approx(phi_fn, n, p, 1e-8).value;
            const TrigPoly f = detail::apply_kernel_transform(params, phi);
            const PeriodicFn f_fn = PeriodicFn::from_poly(f);
            for (int g = 0; g < 200; ++g) {
                const double x = two_pi * (static_cast<double>(g) + 0.5) / 200.0;
                const double dev = std::fabs(rho_tilde(f_fn, n, x));
                const double bound = lebesgue_type_bound(params, p, n, x, En).value;
                if (dev > bound + 1e-12) all = false;
                if (bound > 0.0) worst_ratio = std::max(worst_ratio, dev / bound);
            }
        }
        c.passed = all;
        c.detail = "worst deviation/bound ratio " + ad::fmt(worst_ratio);
        results.push_back(c);
    }

    // 6: leading-constant convergence of the p=2 supremum, r in (0,1)
    {
        CriterionResult c{6, "p=2 leading-constant ratio convergence", true, ""};
        const KernelParams params(1.0, 0.5, 0.0);
        const double xstar = 2.3;
        std::vector<double> devs;
        for (std::int64_t n : {32, 64, 128, 256}) {
            const double scale =
                std::exp(-params.alpha * std::pow(static_cast<double>(n), params.r));
            const double denom =
                scale * sin_factor(n, xstar) * kn_main_term(params, LpExponent(2.0), n);
            const double tol = std::max(1e-140, 1e-10 * denom);
            const double ratio = exact_p2(params, n, xstar, tol).value / denom;
            devs.push_back(std::fabs(ratio - 1.0));
        }
        bool decreasing = true;
        for (std::size_t i = 1; i < devs.size(); ++i)
            if (devs[i] >= devs[i - 1]) decreasing = false;
        c.passed = devs.back() <= 0.15 && decreasing;
        c.detail = "|ratio-1| at n=256: " + ad::fmt(devs.back());
        results.push_back(c);
    }

    // 7: interpolation/Fourier supremum ratio approaches 2
    {
        CriterionResult c{7, "interpolation-to-Fourier supremum ratio -> 2", true, ""};
        double worst = 0.0;
        for (const auto& [al, rr] : std::vector<std::pair<double, double>>{{1, 0.5}, {2, 1}}) {
            const KernelParams params(al, rr, 0.0);
            const std::vector<double> ratios =
                limit_ratio_check(params, {16, 32, 64, 128}, 0.9);
            worst = std::max(worst, std::fabs(ratios.back() - 2.0));
        }
        c.passed = worst < 0.05;
        c.detail = "|ratio-2| at n=128: " + ad::fmt(worst);
        results.push_back(c);
    }

    // 8: stochastic lower bound inside the duality band; near-tight at p=2
    {
        CriterionResult c{8, "duality sandwich with stochastic lower bound", true, ""};
        const KernelParams params(1.0, 0.5, 0.5);
        const double x = 1.3;
        bool all = true;
        double worst_p2 = 1e300;
        for (const LpExponent& p :
             {LpExponent(1.0), LpExponent(1.5), LpExponent(2.0), LpExponent(4.0),
              LpExponent::infinity()}) {
            for (std::int64_t n : {4, 8, 16}) {
                const EstimateBand band = dual_value(params, n, x, p, 1e-9);
                const double mc = monte_carlo_lower(params, n, x, p, 500, seed);
                if (mc > band.upper() + 1e-9) all = false;
                if (!p.is_inf() && p.value() == 2.0) {
                    const double ex = exact_p2(params, n, x, 1e-12).value;
                    worst_p2 = std::min(worst_p2, mc / ex);
                }
            }
        }
        c.passed = all && worst_p2 >= 0.8;
        c.detail = "worst p=2 lower/exact ratio " + ad::fmt(worst_p2);
        results.push_back(c);
    }

    // 9: special-function identities
    {
        CriterionResult c{9, "special-function identities", true, ""};
        double worst = 0.0;
        for (int i = 0; i <= 9; ++i) {
            const double q = 0.1 * static_cast<double>(i);
            worst = std::max(worst, std::fabs(2.0 / std::numbers::pi * elliptic_K(q).value -
                                              hyp2f1(0.5, 0.5, 1.0, q * q).value));
        }
        worst = std::max(worst,
                         std::fabs(hyp2f1(0.5, 0.5, 1.5, 1.0).value - std::numbers::pi / 2.0));
        for (double v : {0.5, 1.0, 2.0, 10.0})
            worst = std::max(worst, std::fabs(I_s(1.0, v).value -
                                              std::log(v + std::sqrt(1.0 + v * v))));
        const double cos1 = std::fabs(cos_norm(LpExponent(1.0)).value - 4.0);
        c.passed = worst <= 1e-10 && cos1 <= 1e-12;
        c.detail = "worst identity error " + ad::fmt(std::max(worst, cos1));
        results.push_back(c);
    }

    // 10: best-approximation unit values
    {
        CriterionResult c{10, "best-approximation unit values", true, ""};
        std::mt19937_64 rng(seed + 1);
        double worst_c = 0.0, worst_l2 = 0.0, worst_zero = 0.0;
        for (std::int64_t n : {2, 4, 8}) {
            TrigPoly cosn = TrigPoly::zero(static_cast<std::size_t>(n));
            cosn.a[static_cast<std::size_t>(n - 1)] = 1.0;
            const PeriodicFn f = PeriodicFn::from_poly(cosn);
            worst_c = std::max(worst_c,
                               std::fabs(best_approx(f, n, LpExponent::infinity(), 1e-9).value -
                                         1.0));
            worst_l2 = std::max(worst_l2, std::fabs(best_approx(f, n, LpExponent(2.0), 1e-11).value -
                                                    std::sqrt(std::numbers::pi)));
            const TrigPoly t = ad::random_poly(rng, static_cast<std::size_t>(n - 1));
            const PeriodicFn tf = PeriodicFn::from_poly(t);
            for (const LpExponent& p : {LpExponent(1.0), LpExponent(1.5), LpExponent(2.0),
                                        LpExponent(4.0), LpExponent::infinity()})
                worst_zero = std::max(worst_zero, best_approx(tf, n, p, 1e-10).value);
        }
        c.passed = worst_c <= 1e-6 && worst_l2 <= 1e-10 && worst_zero <= 1e-9;
        c.detail = "minimax err " + ad::fmt(worst_c) + ", L2 err " + ad::fmt(worst_l2) +
                   ", null err " + ad::fmt(worst_zero);
        results.push_back(c);
    }

    // 11: interpolation reproduces its polynomial space
    {
        CriterionResult c{11, "interpolation exactness on its polynomial space", true, ""};
        std::mt19937_64 rng(seed + 2);
        double worst_coeff = 0.0, worst_node = 0.0;
        for (std::int64_t n : {2, 3, 8, 17, 33, 64}) {
            const TrigPoly t = ad::random_poly(rng, static_cast<std::size_t>(n - 1));
            const PeriodicFn tf = PeriodicFn::from_poly(t);
            const TrigPoly back = lagrange_interp(tf, n);
            worst_coeff = std::max(worst_coeff, std::fabs(back.a0 - t.a0));
            for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(n); ++k) {
                worst_coeff = std::max(worst_coeff, std::fabs(back.a[k] - t.a[k]));
                worst_coeff = std::max(worst_coeff, std::fabs(back.b[k] - t.b[k]));
            }
            const NodeGrid grid(n);
            for (double xk : grid.nodes)
                worst_node = std::max(worst_node, std::fabs(interp_eval(tf, n, xk) - t.eval(xk)));
        }
        c.passed = worst_coeff <= 1e-11 && worst_node <= 1e-11;
        c.detail = "coeff err " + ad::fmt(worst_coeff) + ", node err " + ad::fmt(worst_node);
        results.push_back(c);
    }

    return results;
}

}  // namespace pinterp
