// Acceptance suite: one line per criterion, nonzero exit on any failure.
// All tolerances are fixed here, not tuned at runtime.

#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mpdre/cli.hpp"
#include "mpdre/duality.hpp"
#include "mpdre/io.hpp"
#include "mpdre/limit_sweep.hpp"
#include "mpdre/riccati.hpp"
#include "mpdre/semigroup.hpp"
#include "mpdre/solve.hpp"
#include "mpdre/verify.hpp"
#include "test_helpers.hpp"

using namespace mpdre;
using namespace mpdre::testing;

namespace {

int g_failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %2d [%s] %s: %s\n", index, pass ? "PASS" : "FAIL", name,
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double v) { return format_double(v); }

// P0 between the basis M and the existence boundary of Lam at the full
// horizon: P0 = M + t U + R with U = -Lam^22 - M, so both P0 > M and
// Lam^22 + P0 < 0 hold by construction.
SymMat sample_p0(std::mt19937_64& rng, const SymMat& M, const BlockSymMat& Lam) {
    const int n = M.dim();
    const SymMat U = -Lam.b22() - M;
    const double u_min = min_eigenvalue(U);
    if (u_min <= 0.0) {
        throw Error("sample_p0: boundary region below the basis is empty");
    }
    std::uniform_real_distribution<double> dt(0.1, 0.9);
    const double t = dt(rng);
    SymMat R = random_sym(rng, n, 1.0);
    const double r_cap = 0.4 * std::min(t, 1.0 - t) * u_min;
    const double r_norm = sym_eigenvalues(R).cwiseAbs().maxCoeff();
    if (r_norm > r_cap) {
        R = (r_cap / r_norm) * R;
    }
    return SymMat(M.mat() + t * U.mat() + R.mat());
}

void criteria_1_2_primal_and_dual_representation() {
    std::mt19937_64 rng(101);
    const Tolerances tol;
    const int horizon = 20;
    double worst_primal = 0.0;
    double worst_dual = 0.0;
    std::string note;
    int dims_seen[5] = {0, 0, 0, 0, 0};

    for (int i = 0; i < 50; ++i) {
        const Instance inst = random_feasible_instance(rng, horizon + 4);
        ++dims_seen[inst.prob.state_dim()];
        SemigroupCache cache(inst.prob, inst.M, Strategy::doubling, tol);
        const SymMat P0 = sample_p0(rng, inst.M, cache.element(SemigroupKind::Lambda, horizon));

        const RiccatiPath path = riccati_iterate(P0, horizon, inst.prob, tol);
        if (!path.exists_at(horizon)) {
            note = "direct recursion terminated on instance " + std::to_string(i);
            worst_primal = worst_dual = std::numeric_limits<double>::infinity();
            break;
        }
        const SymMat O0 = upsilon(P0, inst.M, tol);
        for (int k = 1; k <= horizon; ++k) {
            const SymMat& direct = path.steps[k];
            const SymMat primal = psi_p(cache.element(SemigroupKind::Lambda, k), P0, tol);
            worst_primal = std::max(worst_primal, rel_dev(primal, direct));
            const SymMat dual = upsilon_inv(
                psi_d(cache.element(SemigroupKind::Theta, k), O0, tol), inst.M, tol);
            worst_dual = std::max(worst_dual, rel_dev(dual, direct));
        }
    }

    std::ostringstream dims;
    dims << " dims n=1:" << dims_seen[1] << " n=2:" << dims_seen[2] << " n=3:" << dims_seen[3]
         << " n=4:" << dims_seen[4];
    report(1, "primal representation psi_p vs recursion", worst_primal <= 1e-8,
           "max rel dev " + fmt(worst_primal) + " tol 1e-8, 50 instances, k <= 20" + dims.str() +
               (note.empty() ? "" : "; " + note));
    report(2, "dual pipeline vs recursion", worst_dual <= 1e-8,
           "max rel dev " + fmt(worst_dual) + " tol 1e-8, same instances" +
               (note.empty() ? "" : "; " + note));
}

void criteria_3_4_5_semigroup_and_structure() {
    std::mt19937_64 rng(202);
    const Tolerances tol;
    double worst_law = 0.0;
    double worst_triangle = 0.0;
    double worst_q11 = 0.0;
    double worst_q22_step = 0.0;
    bool q1_gap_pd = true;

    for (int i = 0; i < 10; ++i) {
        const Instance inst = random_feasible_instance(rng, 20);
        SemigroupCache cache(inst.prob, inst.M, Strategy::doubling, tol);

        for (SemigroupKind kind : {SemigroupKind::Lambda, SemigroupKind::Theta}) {
            for (int k1 = 1; k1 < 16; ++k1) {
                for (int k2 = 1; k1 + k2 <= 16; ++k2) {
                    const BlockSymMat prod =
                        star(cache.element(kind, k1), cache.element(kind, k2), tol);
                    worst_law = std::max(worst_law, rel_dev(prod, cache.element(kind, k1 + k2)));
                }
            }
        }

        const RiccatiPath path = riccati_iterate(inst.M, 16, inst.prob, tol);
        for (int k = 1; k <= 16; ++k) {
            const BlockSymMat& Qk = cache.element(SemigroupKind::Q, k);
            const BlockSymMat& Tk = cache.element(SemigroupKind::Theta, k);
            const BlockSymMat& Lk = cache.element(SemigroupKind::Lambda, k);
            worst_triangle = std::max(worst_triangle, rel_dev(gamma_transform(Tk, inst.M, tol), Qk));
            worst_triangle = std::max(worst_triangle, rel_dev(pi_transform(Lk, inst.M, tol), Qk));
            worst_triangle = std::max(worst_triangle, rel_dev(xi_transform(Tk, inst.M, tol), Lk));
            worst_q11 = std::max(worst_q11, rel_dev(Qk.b11(), path.steps[k]));
            const SymMat diff = Qk.b22() - cache.element(SemigroupKind::Q, k - 1).b22();
            worst_q22_step = std::min(worst_q22_step, min_eigenvalue(diff));
        }
        q1_gap_pd = q1_gap_pd &&
                    is_positive_definite(cache.element(SemigroupKind::Q, 1).b22() - inst.M, tol);
    }

    report(3, "semigroup law for Lambda and Theta", worst_law <= 1e-8,
           "max rel dev " + fmt(worst_law) + " tol 1e-8, k1+k2 <= 16, 10 instances");
    report(4, "commutation triangle Gamma/Pi/Xi", worst_triangle <= 1e-8,
           "max rel dev " + fmt(worst_triangle) + " tol 1e-8, k <= 16");
    const bool q_ok = worst_q11 <= 1e-10 && worst_q22_step >= -1e-10 && q1_gap_pd;
    report(5, "auxiliary kernel structure", q_ok,
           "Q11 vs R_k(M) max rel " + fmt(worst_q11) + " tol 1e-10; min eig of Q22 steps " +
               fmt(worst_q22_step) + " >= -1e-10; Q1_22 - M pd: " + (q1_gap_pd ? "yes" : "no"));
}

void criterion_6_monotonicity() {
    std::mt19937_64 rng(303);
    const Tolerances tol;
    const int horizon = 20;
    double worst = 0.0;
    int pairs_used = 0;

    for (int i = 0; i < 10; ++i) {
        const Instance inst = random_feasible_instance(rng, horizon + 4);
        SemigroupCache cache(inst.prob, inst.M, Strategy::doubling, tol);
        const BlockSymMat& Lam = cache.element(SemigroupKind::Lambda, horizon);
        for (int p = 0; p < 10; ++p) {
            const SymMat lower = sample_p0(rng, inst.M, Lam);
            const SymMat gap = -Lam.b22() - lower;  // distance to the boundary
            SymMat bump = random_psd(rng, lower.dim(), 1.0);
            const double cap = 0.4 * min_eigenvalue(gap);
            const double top = max_eigenvalue(bump);
            if (top > cap) bump = (cap / top) * bump;
            const SymMat upper = lower + bump;

            const RiccatiPath pl = riccati_iterate(lower, horizon, inst.prob, tol);
            const RiccatiPath pu = riccati_iterate(upper, horizon, inst.prob, tol);
            const std::size_t upto = std::min(pl.steps.size(), pu.steps.size());
            for (std::size_t k = 0; k < upto; ++k) {
                worst = std::min(worst, min_eigenvalue(pu.steps[k] - pl.steps[k]));
            }
            ++pairs_used;
        }
    }
    report(6, "recursion monotone in the initial condition", worst >= -1e-9,
           "min eigenvalue of ordered difference " + fmt(worst) + " >= -1e-9, " +
               std::to_string(pairs_used) + " pairs, k <= 20");
}

void criterion_7_bruteforce_oracles() {
    std::mt19937_64 rng(404);
    const Tolerances tol;
    double worst_excess = -std::numeric_limits<double>::infinity();
    std::string note;

    const auto run_instance = [&](const Instance& inst) {
        const int n = inst.prob.state_dim();
        const int m = inst.prob.input_dim();
        SemigroupCache cache(inst.prob, inst.M, Strategy::doubling, tol);
        const RiccatiPath path = riccati_iterate(inst.M, 6, inst.prob, tol);

        for (int p = 0; p < 10; ++p) {
            // One-step DP value against the closed form.
            const SymMat Omega = path.steps[p % path.steps.size()];
            const Eigen::VectorXd x = random_matrix(rng, n, 1);
            const QuadFunction phi{Omega};
            const double dp_analytic =
                0.5 * x.dot(dp_apply_quadratic(phi, inst.prob, tol).hessian.mat() * x);
            const Eigen::VectorXd wstar = worst_case_gain(Omega, inst.prob, tol) * x;
            const GridSpec wspec =
                GridSpec::cube(m, std::max(2.0, 2.0 * wstar.cwiseAbs().maxCoeff()));
            const double dp_grid = dp_evaluate_bruteforce(phi, x, inst.prob, wspec);
            const SymMat wcurv(inst.prob.B.transpose() * Omega.mat() * inst.prob.B -
                               inst.prob.gamma * inst.prob.gamma *
                                   Eigen::MatrixXd::Identity(m, m));
            const double wbound =
                grid_error_bound(wspec, wcurv) + 1e-12 * (1.0 + std::abs(dp_analytic));
            worst_excess = std::max(worst_excess, std::abs(dp_grid - dp_analytic) - wbound);

            // Dual transform against the closed form.
            const SymMat Om2 = inst.M + random_psd(rng, n, 0.6) +
                               SymMat(0.3 * Eigen::MatrixXd::Identity(n, n));
            const Eigen::VectorXd z = random_matrix(rng, n, 1);
            const double du_analytic = 0.5 * z.dot(upsilon(Om2, inst.M, tol).mat() * z);
            const Eigen::VectorXd xstar =
                invert(inst.M - Om2, tol).mat() * (inst.M.mat() * z);
            const GridSpec xspec =
                GridSpec::cube(n, std::max(2.0, 2.0 * xstar.cwiseAbs().maxCoeff()));
            const double du_grid =
                dual_transform_bruteforce(QuadFunction{Om2}, inst.M, z, xspec);
            const double xbound = grid_error_bound(xspec, inst.M - Om2) +
                                  1e-12 * (1.0 + std::abs(du_analytic));
            worst_excess = std::max(worst_excess, std::abs(du_grid - du_analytic) - xbound);

            // Kernel convolution against the star product.
            const BlockSymMat& left = cache.element(SemigroupKind::Lambda, 1 + p % 2);
            const BlockSymMat& right = cache.element(SemigroupKind::Lambda, 1 + (p + 1) % 2);
            const Eigen::VectorXd kx = random_matrix(rng, n, 1);
            const Eigen::VectorXd ky = random_matrix(rng, n, 1);
            const double kv_analytic = eval_kernel(star(left, right, tol), kx, ky);
            const PivotMatrix pivot = star_pivot(left, right);
            const Eigen::VectorXd rstar =
                -(invert(pivot.value, tol).mat() *
                  (left.b12().transpose() * kx + right.b12() * ky));
            const GridSpec rspec =
                GridSpec::cube(n, std::max(2.0, 2.0 * rstar.cwiseAbs().maxCoeff()));
            const double kv_grid = kernel_convolution_bruteforce(left, right, kx, ky, rspec);
            const double rbound = grid_error_bound(rspec, pivot.value) +
                                  1e-12 * (1.0 + std::abs(kv_analytic));
            worst_excess = std::max(worst_excess, std::abs(kv_grid - kv_analytic) - rbound);
        }
    };

    try {
        int scalar_done = 0;
        while (scalar_done < 10) {
            const Instance inst = random_feasible_instance(rng, 12);
            if (inst.prob.state_dim() != 1) continue;
            run_instance(inst);
            ++scalar_done;
        }
        int planar_done = 0;
        while (planar_done < 5) {
            const Instance inst = random_feasible_instance(rng, 12);
            if (inst.prob.state_dim() != 2) continue;
            run_instance(inst);
            ++planar_done;
        }
    } catch (const Error& e) {
        note = e.what();
        worst_excess = std::numeric_limits<double>::infinity();
    }

    report(7, "grid oracles within computed bounds", worst_excess <= 0.0,
           "max excess over bound " + fmt(worst_excess) +
               " (<= 0), 10 scalar + 5 planar instances, 10 points each" +
               (note.empty() ? "" : "; " + note));
}

void criterion_8_existence_boundary() {
    const Instance inst = scalar_instance();
    const double step = 0.01;
    double worst = 0.0;
    std::string detail;
    bool ok = true;
    for (int k : {3, 5, 10}) {
        const BoundarySweep sweep = existence_boundary_sweep(inst.prob, inst.M, k, step);
        if (std::isnan(sweep.first_recursion_failure) || std::isnan(sweep.first_pivot_nonneg)) {
            ok = false;
            detail += " k=" + std::to_string(k) + ": transition not found;";
            continue;
        }
        const double gap = std::abs(sweep.first_recursion_failure - sweep.first_pivot_nonneg);
        worst = std::max(worst, gap);
        detail += " k=" + std::to_string(k) + ": gap " + fmt(gap) + ";";
    }
    ok = ok && worst <= step + 1e-12;
    report(8, "existence boundary matches the pivot sign change", ok,
           "max gap " + fmt(worst) + " <= one sweep step " + fmt(step) + ";" + detail);
}

void criterion_9_limit_trend() {
    const Instance inst = scalar_instance();
    const LimitSweep sweep = run_limit_sweep(inst.prob, 3, {1.0, 10.0, 100.0});
    const std::vector<double> d = sweep.feasible_distances();
    const bool ok = d.size() == 3 && d.back() < d.front();
    std::string detail = "d(m) =";
    for (double v : d) detail += " " + fmt(v);
    report(9, "primal/dual distance shrinks as M steepens", ok, detail);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion_10_determinism() {
    const std::string dir = MPDRE_TEST_TMPDIR;
    const std::string input = dir + "/acceptance_scalar.json";
    {
        std::ofstream out(input);
        out << R"({"A":[[0.5]],"B":[[1]],"Phi":[[0.1]],"gamma":1.0,"M":[[-1]],"horizon":20})";
    }

    bool ok = true;
    std::string detail;

    RunConfig solve;
    solve.command = "solve";
    solve.input_path = input;
    solve.horizons = {10};
    solve.p0_spec = "[-0.5, 0, 0.5]";
    solve.output_path = dir + "/acc_solve_a.json";
    ok = ok && run_command(solve) == kExitOk;
    solve.output_path = dir + "/acc_solve_b.json";
    ok = ok && run_command(solve) == kExitOk;
    const bool solve_same = slurp(dir + "/acc_solve_a.json") == slurp(dir + "/acc_solve_b.json");
    ok = ok && solve_same;
    detail += "solve bytes identical: " + std::string(solve_same ? "yes" : "no");

    RunConfig sg;
    sg.command = "semigroup";
    sg.input_path = input;
    sg.horizons = {1, 2, 4, 8, 16};
    sg.output_path = dir + "/acc_sg_a.json";
    ok = ok && run_command(sg) == kExitOk;
    sg.output_path = dir + "/acc_sg_b.json";
    ok = ok && run_command(sg) == kExitOk;
    const bool sg_same = slurp(dir + "/acc_sg_a.json") == slurp(dir + "/acc_sg_b.json");
    ok = ok && sg_same;
    detail += "; semigroup bytes identical: " + std::string(sg_same ? "yes" : "no");

    std::mt19937_64 rng(505);
    const Tolerances tol;
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const Instance inst = random_feasible_instance(rng, 20);
        for (SemigroupKind kind : {SemigroupKind::Lambda, SemigroupKind::Theta}) {
            const BlockSymMat seq =
                semigroup_element(kind, 16, inst.prob, inst.M, Strategy::sequential, tol).hessian;
            const BlockSymMat dbl =
                semigroup_element(kind, 16, inst.prob, inst.M, Strategy::doubling, tol).hessian;
            worst = std::max(worst, rel_dev(dbl, seq));
        }
    }
    ok = ok && worst <= 1e-10;
    detail += "; doubling vs sequential max rel " + fmt(worst) + " tol 1e-10";

    report(10, "deterministic outputs and strategy agreement", ok, detail);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criteria_1_2_primal_and_dual_representation();
    criteria_3_4_5_semigroup_and_structure();
    criterion_6_monotonicity();
    criterion_7_bruteforce_oracles();
    criterion_8_existence_boundary();
    criterion_9_limit_trend();
    criterion_10_determinism();
    if (g_failures == 0) {
        std::printf("all criteria passed\n");
    } else {
        std::printf("%d criterion(s) failed\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
