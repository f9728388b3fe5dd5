#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "mpdre/grid.hpp"
#include "mpdre/linalg.hpp"
#include "mpdre/problem.hpp"

namespace mpdre {

// Trace of a k-fold Riccati recursion. steps[i] is the i-th iterate;
// pivot_margins[i] is the smallest eigenvalue of gamma^2 I - B^T P_i B,
// recorded for every attempted step including a failing one. When the pivot
// loses positive definiteness at index t the path carries steps[0..t] and
// terminated_at = t.
struct RiccatiPath {
    std::vector<SymMat> steps;
    std::vector<double> pivot_margins;
    std::optional<int> terminated_at;

    const SymMat& last() const { return steps.back(); }
    // Solution exists at horizon k iff the path reached step k.
    bool exists_at(int k) const { return static_cast<int>(steps.size()) > k; }
};

// Quadratic x -> (1/2) x^T Omega x.
struct QuadFunction {
    SymMat hessian;
};

// One Riccati step: Phi + A^T P A + A^T P B (gamma^2 I - B^T P B)^{-1} B^T P A.
// Hard error when the pivot is not positive definite.
SymMat riccati_step(const SymMat& P, const ProblemData& prob, const Tolerances& tol = {});

// k-fold iteration with existence tracking; pivot loss terminates the path
// instead of throwing.
RiccatiPath riccati_iterate(const SymMat& P0, int k, const ProblemData& prob,
                            const Tolerances& tol = {});

// Maximizing disturbance gain (gamma^2 I - B^T P B)^{-1} B^T P A; the
// optimal input against cost-to-go Hessian P is w = gain * x.
Eigen::MatrixXd worst_case_gain(const SymMat& P, const ProblemData& prob,
                                const Tolerances& tol = {});

// One-step dynamic programming evolution applied to a quadratic, evaluated
// in closed form at the stationary point. Raises ValueExplosion when the
// supremum is infinite.
QuadFunction dp_apply_quadratic(const QuadFunction& phi, const ProblemData& prob,
                                const Tolerances& tol = {});

// Grid-search evaluation of the one-step DP supremum at a single state.
// Independent of the closed form above.
double dp_evaluate_bruteforce(const QuadFunction& phi, const Eigen::VectorXd& x,
                              const ProblemData& prob, const GridSpec& search);

// Simulates the dynamics under w_seq and accumulates the finite-horizon
// payoff with terminal Hessian P0.
double payoff_rollout(const SymMat& P0, const Eigen::VectorXd& x0,
                      const std::vector<Eigen::VectorXd>& w_seq, const ProblemData& prob);

}  // namespace mpdre
