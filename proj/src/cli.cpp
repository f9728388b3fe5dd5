#include "mpdre/cli.hpp"

#include <fstream>
#include <iostream>

#include "mpdre/io.hpp"
#include "mpdre/limit_sweep.hpp"
#include "mpdre/solve.hpp"
#include "mpdre/verify.hpp"

namespace mpdre {

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << content;
}

Tolerances effective_tolerances(const RunConfig& config) {
    Tolerances tol;
    if (config.rtol) {
        if (*config.rtol <= 0.0) throw ParseError("--rtol must be positive");
        tol.match_rtol = *config.rtol;
    }
    return tol;
}

int single_horizon(const RunConfig& config, int fallback) {
    if (config.horizons.empty()) return fallback;
    if (config.horizons.size() != 1) {
        throw ParseError("--k expects a single value for this command");
    }
    return config.horizons.front();
}

int cmd_check(const RunConfig& config, const Tolerances& tol) {
    const LoadedProblem loaded = load_problem_file(config.input_path, tol);
    const int K = single_horizon(config, loaded.duality.horizon_checked);
    if (K < 1) throw ParseError("--k must be >= 1");
    const AssumptionReport report = check_assumption(loaded.problem, loaded.duality.M, K, tol);
    write_output(config.output_path, check_report_json(report, K));
    return report.feasible ? kExitOk : kExitNumeric;
}

int cmd_semigroup(const RunConfig& config, const Tolerances& tol) {
    const LoadedProblem loaded = load_problem_file(config.input_path, tol);
    if (config.horizons.empty()) throw ParseError("semigroup: --k is required");
    std::vector<std::string> kinds = config.kinds;
    if (kinds.empty()) kinds = {"Lambda", "Theta", "Q"};

    SemigroupCache cache(loaded.problem, loaded.duality.M, config.strategy, tol);
    std::vector<SemigroupElement> elems;
    for (const std::string& kind_name : kinds) {
        SemigroupKind kind;
        if (kind_name == "Lambda") {
            kind = SemigroupKind::Lambda;
        } else if (kind_name == "Theta") {
            kind = SemigroupKind::Theta;
        } else if (kind_name == "Q") {
            kind = SemigroupKind::Q;
        } else {
            throw ParseError("semigroup: unknown kind \"" + kind_name + "\"");
        }
        for (int k : config.horizons) {
            if (k < 1) throw ParseError("semigroup: --k entries must be >= 1");
            elems.push_back(SemigroupElement{kind, k, cache.element(kind, k)});
        }
    }
    write_output(config.output_path, semigroup_export_json(elems));
    return kExitOk;
}

int cmd_solve(const RunConfig& config, const Tolerances& tol) {
    const LoadedProblem loaded = load_problem_file(config.input_path, tol);
    const int k = single_horizon(config, 0);
    if (k < 1) throw ParseError("solve: --k is required and must be >= 1");
    if (config.p0_spec.empty()) throw ParseError("solve: --p0 is required");
    const std::vector<SymMat> p0s = parse_p0_spec(config.p0_spec, loaded.problem.state_dim());
    const SolveReport report =
        solve_batch(loaded.problem, loaded.duality.M, k, p0s, config.strategy, tol);
    write_output(config.output_path, solve_report_json(report));
    return report.all_ok() ? kExitOk : kExitNumeric;
}

int cmd_verify(const RunConfig& config, const Tolerances& tol) {
    const LoadedProblem loaded = load_problem_file(config.input_path, tol);
    VerifyOptions options;
    options.strategy = config.strategy;
    options.limit_sweep = config.limit_sweep;
    const int k = single_horizon(config, options.max_k);
    if (k < 1) throw ParseError("--k must be >= 1");
    options.max_k = k;
    options.riccati_horizon = std::max(k, options.riccati_horizon);
    const VerifyReport report = run_verify_suite(loaded.problem, loaded.duality.M, options, tol);
    // With a sweep requested the CSV takes the output channel; the table
    // then goes to stderr so the CSV stays machine-readable.
    if (report.sweep) {
        write_output(config.output_path, limit_sweep_csv(*report.sweep));
        std::cerr << verify_table_text(report);
    } else {
        write_output(config.output_path, verify_table_text(report));
    }
    return report.all_pass() ? kExitOk : kExitNumeric;
}

int cmd_kernel(const RunConfig& config, const Tolerances& tol) {
    const LoadedProblem loaded = load_problem_file(config.input_path, tol);
    const int k = single_horizon(config, 0);
    if (k < 1) throw ParseError("kernel: --k is required and must be >= 1");
    if (config.grid_spec.empty()) throw ParseError("kernel: --grid lo:hi:count is required");
    const AxisSpec axis = parse_axis_spec(config.grid_spec);
    const int n = loaded.problem.state_dim();

    const BlockSymMat Lam =
        semigroup_element(SemigroupKind::Lambda, k, loaded.problem, loaded.duality.M,
                          config.strategy, tol)
            .hessian;

    Eigen::VectorXd u = Eigen::VectorXd::Unit(n, 0);
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, 0);
    if (n > 1) {
        if (config.ray_spec.empty()) {
            throw ParseError("kernel: --ray \"u1,..,un;v1,..,vn\" is required when n > 1");
        }
        std::tie(u, v) = parse_ray_spec(config.ray_spec, n);
    }

    std::vector<std::array<double, 3>> rows;
    rows.reserve(static_cast<std::size_t>(axis.count) * axis.count);
    const double step = (axis.hi - axis.lo) / (axis.count - 1);
    for (int i = 0; i < axis.count; ++i) {
        const double s = axis.lo + i * step;
        for (int j = 0; j < axis.count; ++j) {
            const double t = axis.lo + j * step;
            rows.push_back({s, t, eval_kernel(Lam, s * u, t * v)});
        }
    }
    write_output(config.output_path, kernel_csv(rows));
    return kExitOk;
}

}  // namespace

int run_command(const RunConfig& config) {
    try {
        const Tolerances tol = effective_tolerances(config);
        if (config.command == "check") return cmd_check(config, tol);
        if (config.command == "semigroup") return cmd_semigroup(config, tol);
        if (config.command == "solve") return cmd_solve(config, tol);
        if (config.command == "verify") return cmd_verify(config, tol);
        if (config.command == "kernel") return cmd_kernel(config, tol);
        std::cerr << "error: unknown command \"" << config.command << "\"\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: parse: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidProblem& e) {
        std::cerr << "error: invalid problem: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: numeric: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace mpdre
