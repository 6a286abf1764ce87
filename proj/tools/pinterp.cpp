//
// pinterp : command-line front end. Subcommands evaluate the Poisson kernel,
// the interpolation operator, Lebesgue functions, best approximations and
// class suprema; `table` prints the leading-constant table and `verify` runs
// the full acceptance suite.
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure.
//

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pinterp/pinterp.hpp"

namespace {

using nlohmann::json;

int thread_cap() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("POISSON_INTERP_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) hw = std::min(hw, static_cast<unsigned>(v));
        } catch (...) {
            // ignore malformed values, fall back to hardware concurrency
        }
    }
    return static_cast<int>(hw);
}

// Deterministic parallel map: results land at their index regardless of the
// execution order.
template <class F>
void parallel_for(std::size_t count, const F& body) {
    const int threads = std::min<std::size_t>(static_cast<std::size_t>(thread_cap()), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                body(i);
            }
        });
    for (auto& th : pool) th.join();
}

struct OutputSpec {
    std::string path;  // empty -> stdout
    std::string format = "csv";
    bool no_header = false;
};

// A row of named numeric/string cells with a fixed column order.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void emit(const Table& table, const OutputSpec& out) {
    std::ostringstream body;
    if (out.format == "json") {
        json arr = json::array();
        for (const auto& row : table.rows) {
            json rec;
            for (std::size_t c = 0; c < table.columns.size(); ++c) {
                const std::string& cell = row[c];
                try {
                    std::size_t used = 0;
                    const double v = std::stod(cell, &used);
                    if (used == cell.size()) {
                        rec[table.columns[c]] = v;
                        continue;
                    }
                } catch (...) {
                }
                rec[table.columns[c]] = cell;
            }
            arr.push_back(rec);
        }
        body << arr.dump(2) << "\n";
    } else {
        if (!out.no_header) {
            const std::time_t now = std::time(nullptr);
            char buf[64];
            std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
            body << "# generated " << buf << "\n";
        }
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            body << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
        for (const auto& row : table.rows)
            for (std::size_t c = 0; c < row.size(); ++c)
                body << row[c] << (c + 1 < row.size() ? "," : "\n");
    }
    if (out.path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(out.path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + out.path);
        f << body.str();
    }
}

std::vector<double> parse_x_grid(const std::string& spec) {
    // start:stop:count, inclusive of start, exclusive of stop
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("--x-grid", "expected start:stop:count");
    const double start = std::stod(spec.substr(0, c1));
    const double stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    const long count = std::stol(spec.substr(c2 + 1));
    if (count < 1) throw CLI::ValidationError("--x-grid", "count must be >= 1");
    std::vector<double> xs(static_cast<std::size_t>(count));
    const double h = (stop - start) / static_cast<double>(count);
    for (long i = 0; i < count; ++i) xs[static_cast<std::size_t>(i)] = start + h * i;
    return xs;
}

std::vector<std::int64_t> parse_n_range(const std::string& spec) {
    const auto c = spec.find(':');
    if (c == std::string::npos) throw CLI::ValidationError("--n-range", "expected a:b");
    const std::int64_t a = std::stoll(spec.substr(0, c));
    const std::int64_t b = std::stoll(spec.substr(c + 1));
    if (a < 1 || b < a) throw CLI::ValidationError("--n-range", "need 1 <= a <= b");
    std::vector<std::int64_t> out;
    for (std::int64_t n = a; n <= b; ++n) out.push_back(n);
    return out;
}

struct CommonArgs {
    double alpha = 1.0, r = 1.0, beta = 0.0;
    std::string p_str = "2";
    std::optional<std::int64_t> n;
    std::string n_range;
    std::optional<double> x;
    std::string x_grid;
    double tol = 1e-9;
    std::uint64_t seed = 42;
    std::int64_t trials = 200;
    OutputSpec out;

    pinterp::KernelParams params() const { return pinterp::KernelParams(alpha, r, beta); }
    pinterp::LpExponent p() const { return pinterp::LpExponent::parse(p_str); }

    std::vector<std::int64_t> n_list() const {
        if (!n_range.empty()) return parse_n_range(n_range);
        if (n) return {*n};
        throw CLI::ValidationError("--n", "one of --n / --n-range is required");
    }
    std::vector<double> x_list() const {
        if (!x_grid.empty()) return parse_x_grid(x_grid);
        if (x) return {*x};
        throw CLI::ValidationError("--x", "one of --x / --x-grid is required");
    }
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_seed = false) {
    cmd->add_option("--alpha", a.alpha, "kernel decay coefficient (> 0)");
    cmd->add_option("--r", a.r, "kernel decay exponent (> 0)");
    cmd->add_option("--beta", a.beta, "kernel phase, in half-pi units");
    cmd->add_option("--p", a.p_str, "Lp exponent in [1,inf]; accepts \"inf\"");
    cmd->add_option("--n", a.n, "interpolation order parameter (>= 1)");
    cmd->add_option("--n-range", a.n_range, "inclusive order range a:b");
    cmd->add_option("--x", a.x, "evaluation point, radians");
    cmd->add_option("--x-grid", a.x_grid, "grid start:stop:count (stop exclusive)");
    cmd->add_option("--tol", a.tol, "numerical tolerance")->check(CLI::PositiveNumber);
    if (with_seed) {
        cmd->add_option("--seed", a.seed, "random seed");
        cmd->add_option("--trials", a.trials, "stochastic trials")->check(CLI::PositiveNumber);
    }
    cmd->add_option("--output", a.out.path, "output file (default: stdout)");
    cmd->add_option("--format", a.out.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--no-header", a.out.no_header, "suppress the timestamp header line");
}

int run_kernel(const CommonArgs& a) {
    const auto params = a.params();
    const auto xs = a.x_list();
    Table t;
    t.columns = {"x", "kernel", "abs_err"};
    t.rows.resize(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        const pinterp::CertifiedValue v = pinterp::kernel_eval(params, xs[i], a.tol);
        t.rows[i] = {num(xs[i]), num(v.value), num(v.abs_err)};
    });
    emit(t, a.out);
    return 0;
}

int run_interp(const CommonArgs& a) {
    const auto params = a.params();
    const auto f = pinterp::PeriodicFn::from_kernel(params, std::min(a.tol, 1e-12));
    Table t;
    t.columns = {"n", "x", "interp", "deviation"};
    std::vector<std::pair<std::int64_t, double>> jobs;
    for (std::int64_t n : a.n_list())
        for (double x : a.x_list()) jobs.emplace_back(n, x);
    t.rows.resize(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        const auto [n, x] = jobs[i];
        const double s = pinterp::interp_eval(f, n, x);
        t.rows[i] = {num(static_cast<double>(n)), num(x), num(s), num(f.eval(x) - s)};
    });
    emit(t, a.out);
    return 0;
}

int run_lebesgue(const CommonArgs& a) {
    Table t;
    t.columns = {"n", "x", "lebesgue", "main_term"};
    std::vector<std::pair<std::int64_t, double>> jobs;
    for (std::int64_t n : a.n_list())
        for (double x : a.x_list()) jobs.emplace_back(n, x);
    t.rows.resize(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        const auto [n, x] = jobs[i];
        const double main = 2.0 / std::numbers::pi * pinterp::sin_factor(n, x) *
                            std::log(static_cast<double>(n));
        t.rows[i] = {num(static_cast<double>(n)), num(x), num(pinterp::lebesgue_fn(n, x)),
                     num(main)};
    });
    emit(t, a.out);
    return 0;
}

int run_best_approx(const CommonArgs& a) {
    const auto params = a.params();
    const auto p = a.p();
    const auto f = pinterp::PeriodicFn::from_kernel(params, 1e-14);
    Table t;
    t.columns = {"n", "p", "value", "certificate", "residual", "converged"};
    bool failed = false;
    for (std::int64_t n : a.n_list()) {
        const pinterp::BestApproxResult res = pinterp::best_approx(f, n, p, a.tol);
        const char* cert = res.certificate == pinterp::ApproxCertificate::parseval_exact
                               ? "parseval_exact"
                               : res.certificate == pinterp::ApproxCertificate::equioscillation
                                     ? "equioscillation"
                                     : "kkt_residual";
        t.rows.push_back({num(static_cast<double>(n)), a.p_str, num(res.value), cert,
                          num(res.residual), res.converged ? "1" : "0"});
        if (!res.converged) failed = true;
    }
    emit(t, a.out);
    return failed ? 3 : 0;
}

int run_class_sup(const CommonArgs& a) {
    const auto params = a.params();
    const auto p = a.p();
    const bool is_p2 = !p.is_inf() && p.value() == 2.0;
    Table t;
    t.columns = {"n", "x", "exact_p2", "dual_center", "dual_halfwidth", "mc_lower"};
    std::vector<std::pair<std::int64_t, double>> jobs;
    for (std::int64_t n : a.n_list())
        for (double x : a.x_list()) jobs.emplace_back(n, x);
    t.rows.resize(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        const auto [n, x] = jobs[i];
        const pinterp::EstimateBand band = pinterp::dual_value(params, n, x, p, a.tol);
        const double mc = pinterp::monte_carlo_lower(params, n, x, p, a.trials, a.seed);
        const std::string ex =
            is_p2 ? num(pinterp::exact_p2(params, n, x, a.tol).value) : std::string("");
        t.rows[i] = {num(static_cast<double>(n)), num(x), ex, num(band.center),
                     num(band.half_width), num(mc)};
    });
    emit(t, a.out);
    return 0;
}

int run_table(const CommonArgs& a) {
    const auto p = a.p();
    const std::int64_t n = a.n.value_or(16);
    // representative r per regime; the user's r replaces the cell of its regime
    double r_lt = 0.5, r_eq = 1.0, r_gt = 2.0;
    if (a.r < 1.0) r_lt = a.r;
    else if (a.r == 1.0) r_eq = a.r;
    else r_gt = a.r;
    const double p_mid = (!p.is_inf() && p.value() > 1.0) ? p.value() : 2.0;
    Table t;
    t.columns = {"r", "p", "a_n"};
    for (double rr : {r_lt, r_eq, r_gt}) {
        const pinterp::KernelParams params(a.alpha, rr, a.beta);
        for (const auto& [label, pe] :
             std::vector<std::pair<std::string, pinterp::LpExponent>>{
                 {"1", pinterp::LpExponent(1.0)},
                 {num(p_mid), pinterp::LpExponent(p_mid)},
                 {"inf", pinterp::LpExponent::infinity()}}) {
            t.rows.push_back({num(rr), label, num(pinterp::kn_main_term(params, pe, n))});
        }
    }
    emit(t, a.out);
    return 0;
}

int run_verify(const CommonArgs& a) {
    const std::vector<pinterp::CriterionResult> results = pinterp::run_acceptance(a.seed);
    bool all = true;
    for (const auto& res : results) {
        std::cout << (res.passed ? "PASS" : "FAIL") << "  [" << res.id << "] " << res.name
                  << "  (" << res.detail << ")\n";
        all = all && res.passed;
    }
    std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
    return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Poisson kernels, trigonometric interpolation and class suprema"};
    app.require_subcommand(1);

    CommonArgs a_kernel, a_interp, a_lebesgue, a_best, a_class, a_table, a_verify;
    CLI::App* c_kernel = app.add_subcommand("kernel", "evaluate the Poisson kernel");
    CLI::App* c_interp = app.add_subcommand("interp", "interpolate the kernel function");
    CLI::App* c_lebesgue = app.add_subcommand("lebesgue", "Lebesgue function of the operator");
    CLI::App* c_best = app.add_subcommand("best-approx", "best Lp approximation of the kernel");
    CLI::App* c_class = app.add_subcommand("class-sup", "pointwise class supremum");
    CLI::App* c_table = app.add_subcommand("table", "leading-constant table (nine cells)");
    CLI::App* c_verify = app.add_subcommand("verify", "run the acceptance suite");
    add_common(c_kernel, a_kernel);
    add_common(c_interp, a_interp);
    add_common(c_lebesgue, a_lebesgue);
    add_common(c_best, a_best);
    add_common(c_class, a_class, /*with_seed=*/true);
    add_common(c_table, a_table);
    add_common(c_verify, a_verify, /*with_seed=*/true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_kernel->parsed()) return run_kernel(a_kernel);
        if (c_interp->parsed()) return run_interp(a_interp);
        if (c_lebesgue->parsed()) return run_lebesgue(a_lebesgue);
        if (c_best->parsed()) return run_best_approx(a_best);
        if (c_class->parsed()) return run_class_sup(a_class);
        if (c_table->parsed()) return run_table(a_table);
        if (c_verify->parsed()) return run_verify(a_verify);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
