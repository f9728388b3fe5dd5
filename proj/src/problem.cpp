#include "mpdre/problem.hpp"

#include <string>

#include "mpdre/riccati.hpp"

namespace mpdre {

ProblemData make_problem(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const SymMat& Phi,
                         double gamma, const Tolerances& tol) {
    const int n = static_cast<int>(A.rows());
    const int m = static_cast<int>(B.cols());
    if (A.cols() != n || n < 1) {
        throw InvalidProblem("make_problem: A must be square and nonempty");
    }
    if (B.rows() != n || m < 1 || m > n) {
        throw InvalidProblem("make_problem: B must be n x m with 1 <= m <= n");
    }
    if (Phi.dim() != n) {
        throw InvalidProblem("make_problem: Phi dimension mismatch");
    }
    if (!A.allFinite() || !B.allFinite() || !std::isfinite(gamma)) {
        throw InvalidProblem("make_problem: non-finite data");
    }
    if (gamma <= 0.0) {
        throw InvalidProblem("make_problem: gamma must be positive");
    }
    if (!is_positive_definite(Phi, tol)) {
        throw InvalidProblem("make_problem: Phi must be positive definite");
    }
    return ProblemData{A, B, Phi, gamma};
}

AssumptionReport check_assumption(const ProblemData& prob, const SymMat& M, int K,
                                  const Tolerances& tol) {
    if (K < 1) {
        throw InvalidProblem("check_assumption: horizon must be >= 1");
    }
    if (M.dim() != prob.state_dim()) {
        throw InvalidProblem("check_assumption: M dimension mismatch");
    }
    AssumptionReport report;
    const int m = prob.input_dim();
    const Eigen::MatrixXd g2I = prob.gamma * prob.gamma * Eigen::MatrixXd::Identity(m, m);

    const SymMat pivot0(g2I - prob.B.transpose() * M.mat() * prob.B);
    const double margin0 = min_eigenvalue(pivot0);
    report.ineq_M2_margins.push_back(margin0);
    if (margin0 <= definiteness_threshold(pivot0, tol)) {
        report.violation = "gamma^2 I - B^T M B not positive definite (k = 0)";
        return report;
    }

    const SymMat RM = riccati_step(M, prob, tol);
    const SymMat order_gap = RM - M;
    report.ineq_M_margin = min_eigenvalue(order_gap);
    if (report.ineq_M_margin <= definiteness_threshold(order_gap, tol)) {
        report.violation = "R(M) - M not positive definite";
        return report;
    }

    // Rank-deficient for m < n (the product has rank at most m), so the
    // margin comparison must not mistake eigenvalue noise for positivity.
    const Eigen::MatrixXd MB = M.mat() * prob.B;
    const SymMat rank_ineq(
        MB * invert(pivot0, tol, &report.pivot_inversion_residual).mat() * MB.transpose());
    report.ineq_M3_margin = min_eigenvalue(rank_ineq);
    if (report.ineq_M3_margin <= definiteness_threshold(rank_ineq, tol)) {
        report.violation = "M B (gamma^2 I - B^T M B)^{-1} B^T M not positive definite";
        return report;
    }

    SymMat Pk = RM;
    for (int k = 1; k < K; ++k) {
        const SymMat pivot(g2I - prob.B.transpose() * Pk.mat() * prob.B);
        const double margin = min_eigenvalue(pivot);
        report.ineq_M2_margins.push_back(margin);
        if (margin <= definiteness_threshold(pivot, tol)) {
            report.violation =
                "gamma^2 I - B^T R_k(M) B not positive definite (k = " + std::to_string(k) + ")";
            return report;
        }
        SymMat next = riccati_step(Pk, prob, tol);
        if ((next.mat() - Pk.mat()).norm() < tol.match_rtol) {
            report.fixed_point_reached = true;
        }
        Pk = std::move(next);
    }
    report.feasible = true;
    return report;
}

}  // namespace mpdre
