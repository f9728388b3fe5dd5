#include "mpdre/riccati.hpp"

#include <string>

namespace mpdre {

namespace {

// Shared core of the Riccati step. Returns the pivot margin through
// `margin_out` so callers can attach their own error semantics.
SymMat riccati_step_core(const SymMat& P, const ProblemData& prob, const Tolerances& tol,
                         double& margin_out) {
    const int m = prob.input_dim();
    const SymMat pivot(prob.gamma * prob.gamma * Eigen::MatrixXd::Identity(m, m) -
                       prob.B.transpose() * P.mat() * prob.B);
    margin_out = min_eigenvalue(pivot);
    if (margin_out <= definiteness_threshold(pivot, tol)) {
        return SymMat();  // caller raises
    }
    const Eigen::MatrixXd pinv = invert(pivot, tol).mat();
    const Eigen::MatrixXd PA = P.mat() * prob.A;
    return SymMat(prob.Phi.mat() + prob.A.transpose() * PA +
                  PA.transpose() * prob.B * pinv * prob.B.transpose() * PA);
}

}  // namespace

SymMat riccati_step(const SymMat& P, const ProblemData& prob, const Tolerances& tol) {
    double margin = 0.0;
    SymMat next = riccati_step_core(P, prob, tol, margin);
    if (next.dim() == 0) {
        throw PivotLost("riccati_step: pivot not positive definite, margin " +
                            std::to_string(margin),
                        margin);
    }
    return next;
}

RiccatiPath riccati_iterate(const SymMat& P0, int k, const ProblemData& prob,
                            const Tolerances& tol) {
    if (k < 0) throw Error("riccati_iterate: k must be >= 0");
    RiccatiPath path;
    path.steps.push_back(P0);
    for (int i = 0; i < k; ++i) {
        double margin = 0.0;
        SymMat next = riccati_step_core(path.steps.back(), prob, tol, margin);
        path.pivot_margins.push_back(margin);
        if (next.dim() == 0) {
            path.terminated_at = i;
            break;
        }
        path.steps.push_back(std::move(next));
    }
    return path;
}

Eigen::MatrixXd worst_case_gain(const SymMat& P, const ProblemData& prob, const Tolerances& tol) {
    const int m = prob.input_dim();
    const SymMat pivot(prob.gamma * prob.gamma * Eigen::MatrixXd::Identity(m, m) -
                       prob.B.transpose() * P.mat() * prob.B);
    if (!is_positive_definite(pivot, tol)) {
        throw PivotLost("worst_case_gain: pivot not positive definite", min_eigenvalue(pivot));
    }
    return invert(pivot, tol).mat() * prob.B.transpose() * P.mat() * prob.A;
}

QuadFunction dp_apply_quadratic(const QuadFunction& phi, const ProblemData& prob,
                                const Tolerances& tol) {
    double margin = 0.0;
    SymMat next = riccati_step_core(phi.hessian, prob, tol, margin);
    if (next.dim() == 0) {
        throw ValueExplosion("dp_apply_quadratic: supremum is infinite, pivot margin " +
                             std::to_string(margin));
    }
    return QuadFunction{std::move(next)};
}

double dp_evaluate_bruteforce(const QuadFunction& phi, const Eigen::VectorXd& x,
                              const ProblemData& prob, const GridSpec& search) {
    const double stage = 0.5 * x.dot(prob.Phi.mat() * x);
    const Eigen::VectorXd Ax = prob.A * x;
    const double g2 = prob.gamma * prob.gamma;
    const auto objective = [&](const Eigen::VectorXd& w) {
        const Eigen::VectorXd xn = Ax + prob.B * w;
        return stage - 0.5 * g2 * w.squaredNorm() + 0.5 * xn.dot(phi.hessian.mat() * xn);
    };
    return maximize_on_grid(objective, search).value;
}

double payoff_rollout(const SymMat& P0, const Eigen::VectorXd& x0,
                      const std::vector<Eigen::VectorXd>& w_seq, const ProblemData& prob) {
    const double g2 = prob.gamma * prob.gamma;
    Eigen::VectorXd x = x0;
    double total = 0.0;
    for (const Eigen::VectorXd& w : w_seq) {
        total += 0.5 * x.dot(prob.Phi.mat() * x) - 0.5 * g2 * w.squaredNorm();
        x = prob.A * x + prob.B * w;
    }
    return total + 0.5 * x.dot(P0.mat() * x);
}

}  // namespace mpdre
