#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fraclab/expr.hpp"
#include "fraclab/gfc.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/gridops.hpp"
#include "fraclab/ivp.hpp"
#include "fraclab/maps.hpp"
#include "fraclab/spectral.hpp"
#include "fraclab/tvp.hpp"
#include "fraclab/verify.hpp"

/// Command-line frontend. Exit codes: 0 ok, 1 usage, 2 validation, 3 numerical.
namespace fraclab::cli {

enum ExitCode { ok = 0, usage = 1, validation = 2, numerical = 3 };

/// Key/value pairs from a `--config` file: one `key = value` per line, `#` comments.
inline std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int number = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        entries.emplace_back(key, value);
    }
    return entries;
}

inline std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size() && item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw DomainError(what + ": cannot parse '" + item + "' as a number");
        }
    }
    if (v.empty()) throw DomainError(what + ": empty list");
    return v;
}

struct GridSpec {
    double begin = 0.0, end = 1.0;
    std::size_t N = 1024;
};

/// "a:b:N" with a < b and N >= 2.
inline GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    std::stringstream ss(text);
    std::string a, b, n;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n))
        throw DomainError("grid: expected begin:end:N, got '" + text + "'");
    try {
        g.begin = std::stod(a);
        g.end = std::stod(b);
        const long long steps = std::stoll(n);
        if (steps < 2) throw DomainError("grid: need N >= 2");
        g.N = static_cast<std::size_t>(steps);
    } catch (const std::logic_error&) {
        throw DomainError("grid: malformed '" + text + "'");
    }
    if (!(g.end > g.begin)) throw DomainError("grid: need begin < end");
    return g;
}

inline std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

/// Output stream: the named file or the fallback stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
            os_ = file_.get();
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

inline std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

/// Runs the frontend with explicit streams; returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const std::vector<std::string> commands = {"op", "gfc", "ivp", "spectral", "tvp", "map", "bench", "verify"};

    CLI::App app{"Numerical fractional calculus workbench", "fraclab"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "key = value file; command-line flags take precedence");

    std::string output;
    auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", output, "CSV destination (default stdout)"); };

    // op
    auto* op = app.add_subcommand("op", "Apply a grid operator to a function literal");
    std::string op_kind, fn = "t", grid = "0:1:1024", gammas;
    double alpha = 0.5, gamma1 = 0.0;
    op->add_option("--kind", op_kind, "rl-integral | rl-derivative | caputo | hilfer | nth-level | gl")->required();
    op->add_option("--alpha", alpha, "order");
    op->add_option("--gamma1", gamma1, "Hilfer type parameter");
    op->add_option("--gammas", gammas, "nth-level parameters, comma separated");
    op->add_option("--fn", fn, "function of t");
    op->add_option("--grid", grid, "begin:end:N");
    add_output(op);

    // gfc
    auto* gfc_cmd = app.add_subcommand("gfc", "Build a Sonine pair and apply general fractional operators");
    std::string pair_kind = "power", action = "residual", coefficients, orders, nodes, weights;
    double shape = 0.5, rate = 1.0;
    int level = 1;
    std::size_t table_steps = 4096;
    gfc_cmd->add_option("--pair", pair_kind, "power | multiterm | distributed | gamma");
    gfc_cmd->add_option("--alpha", alpha, "order of the power pair");
    gfc_cmd->add_option("--coefficients", coefficients, "multi-term coefficients");
    gfc_cmd->add_option("--orders", orders, "multi-term orders in (0,1)");
    gfc_cmd->add_option("--nodes", nodes, "distributed-order nodes");
    gfc_cmd->add_option("--weights", weights, "distributed-order weights");
    gfc_cmd->add_option("--shape", shape, "gamma shape in (0,1)");
    gfc_cmd->add_option("--rate", rate, "gamma rate");
    gfc_cmd->add_option("--level", level, "n of the class L_n");
    gfc_cmd->add_option("--steps", table_steps, "tabulation steps for numerically built kernels");
    gfc_cmd->add_option("--action", action, "residual | gfi | gfd-rl | gfd-caputo");
    gfc_cmd->add_option("--fn", fn, "function of t");
    gfc_cmd->add_option("--grid", grid, "begin:end:N");
    add_output(gfc_cmd);

    // ivp
    auto* ivp_cmd = app.add_subcommand("ivp", "Solve D^alpha y = f(t, y), y(a) = y0");
    std::string solver = "adams", rhs = "-y", stepper = "trapezoidal";
    double a = 0.0, T = 1.0, y0 = 1.0, w_min = 0.0, w_max = 0.0;
    std::size_t N = 1024, M = 0, panels = 0;
    int corrector = 1;
    ivp_cmd->add_option("--solver", solver, "adams | diffusive");
    ivp_cmd->add_option("--alpha", alpha, "order in (0,1]");
    ivp_cmd->add_option("--a", a, "start time");
    ivp_cmd->add_option("--T", T, "horizon");
    ivp_cmd->add_option("--y0", y0, "initial value");
    ivp_cmd->add_option("--rhs", rhs, "f(t, y)");
    ivp_cmd->add_option("--N", N, "time steps");
    ivp_cmd->add_option("--corrector-iterations", corrector, "Adams corrector passes");
    ivp_cmd->add_option("--M", M, "diffusive nodes");
    ivp_cmd->add_option("--w-min", w_min, "lower end of the geometric panels");
    ivp_cmd->add_option("--w-max", w_max, "upper cutoff");
    ivp_cmd->add_option("--panels", panels, "geometric panels");
    ivp_cmd->add_option("--stepper", stepper, "trapezoidal | backward-euler | exponential");
    add_output(ivp_cmd);

    // spectral
    auto* spec_cmd = app.add_subcommand("spectral", "Petrov-Galerkin solve of D^alpha y = f(t) on [-1, 1]");
    std::string coef_out;
    int basis = 16;
    std::size_t samples = 101;
    spec_cmd->add_option("--alpha", alpha, "order in (0,1)");
    spec_cmd->add_option("--fn", fn, "forcing f(t)");
    spec_cmd->add_option("--y0", y0, "value at t = -1");
    spec_cmd->add_option("--N", basis, "basis size");
    spec_cmd->add_option("--samples", samples, "solution samples on [-1, 1]");
    spec_cmd->add_option("--coefficients-out", coef_out, "write the n,c_n table here");
    add_output(spec_cmd);

    // tvp
    auto* tvp_cmd = app.add_subcommand("tvp", "Solve D^alpha y = f(t, y), y(b) = ystar");
    std::string method = "shooting", summary;
    double b = 1.0, ystar = 0.0, g0 = 0.0, g1 = 1.0, tol = 1e-10;
    int max_iterations = 30, max_picard = 200;
    tvp_cmd->add_option("--method", method, "shooting | fredholm | both");
    tvp_cmd->add_option("--alpha", alpha, "order in (0,1]");
    tvp_cmd->add_option("--a", a, "start time");
    tvp_cmd->add_option("--b", b, "terminal time");
    tvp_cmd->add_option("--T", T, "horizon of the returned trajectory (default b - a)");
    tvp_cmd->add_option("--ystar", ystar, "terminal value")->required();
    tvp_cmd->add_option("--rhs", rhs, "f(t, y)");
    tvp_cmd->add_option("--N", N, "steps on [a, b]");
    tvp_cmd->add_option("--g0", g0, "first initial guess");
    tvp_cmd->add_option("--g1", g1, "second initial guess");
    tvp_cmd->add_option("--tol", tol, "terminal tolerance");
    tvp_cmd->add_option("--max-iterations", max_iterations, "secant cap");
    tvp_cmd->add_option("--max-picard", max_picard, "Picard cap before Newton");
    tvp_cmd->add_option("--summary", summary, "summary table destination (default stderr)");
    add_output(tvp_cmd);

    // map
    auto* map_cmd = app.add_subcommand("map", "Iterate a memory map or scan its bifurcations");
    std::string kick = "K*x*(1-x)", k_values;
    double x0 = 0.5, h = 1.0, K = 1.0;
    std::size_t steps = 100, transient = 500, keep = 64;
    map_cmd->add_option("--alpha", alpha, "order in (0,1]");
    map_cmd->add_option("--x0", x0, "initial state");
    map_cmd->add_option("--step", h, "time step h");
    map_cmd->add_option("--kick", kick, "G(x, K)");
    map_cmd->add_option("--K", K, "parameter for a single orbit");
    map_cmd->add_option("--steps", steps, "orbit length");
    map_cmd->add_option("--K-values", k_values, "comma separated K list: switches to a bifurcation scan");
    map_cmd->add_option("--transient", transient, "steps discarded per K");
    map_cmd->add_option("--samples", keep, "steps recorded per K");
    add_output(map_cmd);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Time the IVP solvers against N");
    std::string solvers = "adams,diffusive", Ns = "512,1024,2048,4096";
    double lambda = -1.0;
    int repeats = 5, jobs = 1;
    std::size_t bench_M = 120;
    bool uniformity = false;
    bench_cmd->add_option("--solvers", solvers, "comma separated: adams, diffusive");
    bench_cmd->add_option("--Ns", Ns, "increasing step counts");
    bench_cmd->add_option("--alpha", alpha, "order in (0,1)");
    bench_cmd->add_option("--lambda", lambda, "rate of the linear test f = lambda y");
    bench_cmd->add_option("--repeats", repeats, "runs per cell; the fastest is reported");
    bench_cmd->add_option("--M", bench_M, "diffusive nodes");
    bench_cmd->add_option("--jobs", jobs, "concurrent cells");
    bench_cmd->add_flag("--uniformity", uniformity, "also report errors at alpha = 0.05, 0.5, 0.95");
    bench_cmd->add_option("--summary", summary, "slope report destination (default stderr)");
    add_output(bench_cmd);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Run built-in check suites");
    std::string suite = "all";
    unsigned long long seed = 1;
    bool strict = false;
    verify_cmd->add_option("--suite", suite, join(verify::suite_names()) + " | all");
    verify_cmd->add_option("--seed", seed, "seed of the randomized properties");
    verify_cmd->add_flag("--strict", strict, "exit 3 when a check fails");
    add_output(verify_cmd);

    // Config entries are spliced in right after the subcommand so that later
    // command-line flags win.
    try {
        for (std::size_t i = 0; i < args.size(); ++i) {
            std::string path;
            if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
            if (path.empty()) continue;
            std::size_t pos = 0;
            while (pos < args.size() && std::find(commands.begin(), commands.end(), args[pos]) == commands.end()) ++pos;
            if (pos == args.size()) break;
            std::vector<std::string> injected;
            for (auto& [k, v] : read_config(path)) injected.push_back("--" + k + "=" + v);
            args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos) + 1, injected.begin(), injected.end());
            break;
        }
    } catch (const Error& e) {
        err << e.code() << "," << one_line(e.what()) << "\n";
        return validation;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage_error," << one_line(e.what()) << "\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return usage;
    }

    try {
        if (*op) {
            const auto g = parse_grid(grid);
            const auto f_expr = expr::Expression::parse(fn, {"t"});
            const auto f = GridFunction::sample([&](double t) { return f_expr(t); }, g.begin, g.end, g.N);
            GridFunction r;
            if (op_kind == "rl-integral") r = rl_integral(f, alpha);
            else if (op_kind == "rl-derivative") r = rl_derivative(f, alpha);
            else if (op_kind == "caputo") r = caputo_derivative(f, alpha);
            else if (op_kind == "hilfer") r = hilfer_derivative(f, {alpha, gamma1});
            else if (op_kind == "nth-level") r = nth_level_derivative(f, {alpha, gammas.empty() ? std::vector<double>{} : parse_list(gammas, "gammas")});
            else if (op_kind == "gl") r = gl_derivative(f, alpha);
            else throw DomainError("op: unknown kind '" + op_kind + "'", "unknown_kind");
            Sink sink(output, out);
            write_csv(*sink, r, "value");
        } else if (*gfc_cmd) {
            const auto g = parse_grid(grid);
            gfc::PairOptions opt;
            opt.steps = table_steps;
            opt.horizon = g.end - g.begin;
            gfc::SonineKernelPair pair;
            if (pair_kind == "power") pair = gfc::make_power_pair(alpha);
            else if (pair_kind == "multiterm") pair = gfc::make_multiterm_pair({parse_list(coefficients, "coefficients"), parse_list(orders, "orders")}, opt);
            else if (pair_kind == "distributed") pair = gfc::make_distributed_pair({parse_list(nodes, "nodes"), parse_list(weights, "weights")}, opt);
            else if (pair_kind == "gamma") pair = gfc::make_gamma_pair({shape, rate});
            else throw DomainError("gfc: unknown pair '" + pair_kind + "'", "unknown_kind");
            if (level > 1) pair = gfc::extend_to_Ln(pair, level, opt);
            Sink sink(output, out);
            if (action == "residual") {
                *sink << "label,level,residual\n" << pair.label << "," << pair.n << "," << format_double(pair.residual) << "\n";
            } else {
                const auto f_expr = expr::Expression::parse(fn, {"t"});
                const auto f = GridFunction::sample([&](double t) { return f_expr(t); }, g.begin, g.end, g.N);
                GridFunction r;
                if (action == "gfi") r = gfc::gfi(pair, f);
                else if (action == "gfd-rl") r = gfc::gfd_rl(pair, f);
                else if (action == "gfd-caputo") r = gfc::gfd_caputo(pair, f);
                else throw DomainError("gfc: unknown action '" + action + "'", "unknown_kind");
                write_csv(*sink, r, "value");
            }
        } else if (*ivp_cmd) {
            const auto f_expr = expr::Expression::parse(rhs, {"t", "y"});
            ivp::FodeProblem p{alpha, a, T, y0, [f_expr](double t, double y) { return f_expr(t, y); }};
            GridFunction y;
            if (solver == "adams") {
                y = ivp::solve_adams(p, {N, corrector});
            } else if (solver == "diffusive") {
                ivp::DiffusiveConfig c;
                c.N = N;
                c.M = M;
                c.w_min = w_min;
                c.w_max = w_max;
                c.panels = panels;
                c.stepper = ivp::parse_stepper(stepper);
                y = ivp::solve_diffusive(p, c);
            } else {
                throw DomainError("ivp: unknown solver '" + solver + "'", "unknown_kind");
            }
            Sink sink(output, out);
            write_csv(*sink, y, "y");
        } else if (*spec_cmd) {
            if (samples < 2) throw DomainError("spectral: need at least two samples");
            const auto f_expr = expr::Expression::parse(fn, {"t"});
            const auto sol = spectral::solve_model_problem(alpha, [&](double t) { return f_expr(t); }, y0, basis);
            if (!coef_out.empty()) {
                Sink coef(coef_out, out);
                *coef << "n,c_n\n";
                for (std::size_t n = 0; n < sol.coefficients.size(); ++n)
                    *coef << n + 1 << "," << format_double(sol.coefficients[n]) << "\n";
            }
            Sink sink(output, out);
            *sink << "t,y\n";
            for (std::size_t i = 0; i < samples; ++i) {
                const double t = i + 1 == samples ? 1.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(samples - 1);
                *sink << format_double(t) << "," << format_double(spectral::evaluate_solution(sol, t)) << "\n";
            }
        } else if (*tvp_cmd) {
            const auto f_expr = expr::Expression::parse(rhs, {"t", "y"});
            const bool has_T = tvp_cmd->count("--T") > 0;
            tvp::TvpProblem p{alpha, a, b, has_T ? T : b - a, ystar, [f_expr](double t, double y) { return f_expr(t, y); }};
            if (method != "shooting" && method != "fredholm" && method != "both")
                throw DomainError("tvp: unknown method '" + method + "'", "unknown_kind");
            std::ostringstream table;
            table << "method,recovered_y_a,residual,iterations,seconds\n";
            GridFunction trajectory;
            bool failed = false;
            double failed_residual = 0.0;
            if (method != "fredholm") {
                const auto t0 = std::chrono::steady_clock::now();
                const auto r = tvp::solve_shooting(p, {g0, g1, max_iterations, tol}, {N, 1});
                const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                table << "shooting," << format_double(r.y_a) << "," << format_double(r.residual) << "," << r.iterations
                      << "," << format_double(secs) << "\n";
                trajectory = r.trajectory;
                if (!r.converged) {
                    failed = true;
                    failed_residual = r.residual;
                }
            }
            if (method != "shooting") {
                const auto t0 = std::chrono::steady_clock::now();
                const auto r = tvp::solve_fredholm_collocation(p, N, max_picard, tol);
                const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                table << "fredholm," << format_double(r.y[0]) << "," << format_double(r.residual) << ","
                      << r.picard_iterations + r.newton_iterations << "," << format_double(secs) << "\n";
                if (method == "fredholm") trajectory = r.y;
            }
            {
                Sink sink(output, out);
                write_csv(*sink, trajectory, "y");
            }
            {
                Sink s(summary, err);
                *s << table.str();
            }
            if (failed)
                throw SolveError("tvp: shooting did not reach the terminal tolerance; best iterate reported",
                                 failed_residual, "no_convergence");
        } else if (*map_cmd) {
            const auto g_expr = expr::Expression::parse(kick, {"x", "K"});
            Sink sink(output, out);
            if (k_values.empty()) {
                maps::MemoryMapSpec spec{alpha, x0, h, [g_expr, K](double x) { return g_expr(x, K); }};
                const auto orbit = maps::iterate_map(spec, steps);
                *sink << "n,x\n";
                for (std::size_t n = 0; n < orbit.samples.size(); ++n)
                    *sink << n << "," << format_double(orbit.samples[n]) << "\n";
                if (orbit.diverged_at)
                    err << "divergence,orbit left the guard at step " << *orbit.diverged_at << "\n";
            } else {
                if (keep < 1) throw DomainError("map: need samples >= 1");
                maps::MapFamily fam{alpha, x0, h, [g_expr](double k, double x) { return g_expr(x, k); }};
                const auto rows = maps::bifurcation_scan(fam, parse_list(k_values, "K-values"), transient, keep);
                *sink << "K,step,x,status\n";
                for (const auto& row : rows) {
                    for (std::size_t i = 0; i < row.samples.size(); ++i)
                        *sink << format_double(row.K) << "," << transient + 1 + i << "," << format_double(row.samples[i])
                              << "," << (row.divergent ? "divergent" : "ok") << "\n";
                    if (row.samples.empty() && row.divergent)
                        *sink << format_double(row.K) << ",," << ",divergent\n";
                }
            }
        } else if (*bench_cmd) {
            std::vector<std::size_t> steps_list;
            for (double v : parse_list(Ns, "Ns")) {
                if (!(v >= 2) || v != std::floor(v)) throw DomainError("bench: step counts must be integers >= 2");
                steps_list.push_back(static_cast<std::size_t>(v));
            }
            std::vector<std::string> names;
            {
                std::stringstream ss(solvers);
                std::string s;
                while (std::getline(ss, s, ',')) names.push_back(s);
            }
            ivp::FodeProblem p{alpha, 0.0, 1.0, 1.0, [lambda](double, double y) { return lambda * y; }};
            ivp::BenchOptions opts{repeats, bench_M, jobs};
            std::ostringstream report;
            report << "solver,slope,memory_constant\n";
            Sink sink(output, out);
            *sink << "solver,N,seconds,peak_aux_bytes\n";
            for (const auto& name : names) {
                const auto rows = ivp::complexity_bench(name, p, steps_list, opts);
                std::vector<double> xs, ts;
                bool constant = true;
                for (const auto& r : rows) {
                    *sink << r.solver << "," << r.N << "," << format_double(r.seconds) << "," << r.peak_aux_bytes << "\n";
                    xs.push_back(static_cast<double>(r.N));
                    ts.push_back(r.seconds);
                    constant = constant && r.peak_aux_bytes == rows.front().peak_aux_bytes;
                }
                report << name << "," << format_double(ivp::loglog_slope(xs, ts)) << "," << (constant ? "yes" : "no") << "\n";
            }
            if (uniformity) {
                report << "\nalpha,solver,N,abs_error\n";
                const std::size_t n_max = steps_list.back();
                for (double al : {0.05, 0.5, 0.95}) {
                    ivp::FodeProblem q{al, 0.0, 1.0, 1.0, [lambda](double, double y) { return lambda * y; }};
                    const double exact = mittag_leffler(al, 1.0, lambda);
                    const double ya = ivp::solve_adams(q, {n_max, 1}).values.back();
                    ivp::DiffusiveConfig c;
                    c.N = n_max;
                    c.M = bench_M;
                    const double yd = ivp::solve_diffusive(q, c).values.back();
                    report << format_double(al) << ",adams," << n_max << "," << format_double(std::abs(ya - exact)) << "\n";
                    report << format_double(al) << ",diffusive," << n_max << "," << format_double(std::abs(yd - exact)) << "\n";
                }
            }
            Sink s(summary, err);
            *s << report.str();
        } else if (*verify_cmd) {
            const auto checks = verify::run_suite(suite, seed);
            Sink sink(output, out);
            verify::write_checks(*sink, checks);
            if (strict)
                for (const auto& c : checks)
                    if (!c.pass) throw ConvergenceError("verify: check " + c.suite + "/" + c.name + " failed", "check_failed");
        }
    } catch (const Error& e) {
        err << e.code() << "," << one_line(e.what()) << "\n";
        return e.kind() == Error::Kind::validation ? validation : numerical;
    } catch (const std::exception& e) {
        err << "internal_error," << one_line(e.what()) << "\n";
        return numerical;
    }
    return ok;
}

}  // namespace fraclab::cli
