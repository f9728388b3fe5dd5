#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "mpdre/linalg.hpp"

namespace mpdre {

// Instance of the game: dynamics x' = A x + B w, stage cost
// (1/2) x^T Phi x - (gamma^2/2) |w|^2.
struct ProblemData {
    Eigen::MatrixXd A;   // n x n
    Eigen::MatrixXd B;   // n x m, n >= m
    SymMat Phi;          // n x n, positive definite
    double gamma = 1.0;  // > 0

    int state_dim() const { return static_cast<int>(A.rows()); }
    int input_dim() const { return static_cast<int>(B.cols()); }
};

// Validates dimensions, gamma > 0 and Phi > 0; raises InvalidProblem.
ProblemData make_problem(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const SymMat& Phi,
                         double gamma, const Tolerances& tol = {});

// Margins of the three basis-feasibility inequalities. `feasible` holds iff
// every recorded margin is strictly positive. The recursion-pivot margins
// cover k = 0..K-1 (the pivots that license R_1..R_K); arrays stop at the
// first violation.
struct AssumptionReport {
    std::vector<double> ineq_M2_margins;  // smallest eigenvalue of gamma^2 I - B^T R_k(M) B
    double ineq_M_margin = 0.0;           // smallest eigenvalue of R(M) - M
    double ineq_M3_margin = 0.0;          // smallest eigenvalue of M B (gamma^2 I - B^T M B)^{-1} B^T M
    bool feasible = false;

    // True when successive Riccati iterates of M converged in Frobenius norm
    // below match_rtol before horizon K; feasibility beyond K is then
    // extrapolated from the fixed point.
    bool fixed_point_reached = false;
    std::optional<std::string> violation;  // which inequality failed, and where

    // ||P P^{-1} - I||_F for the inverted rank-inequality pivot.
    double pivot_inversion_residual = 0.0;
};

// Basis Hessian M together with the feasibility evidence gathered for it.
struct DualityConfig {
    SymMat M;
    int horizon_checked = 0;
    std::optional<AssumptionReport> report;
};

// Evaluates the order-interval inequality once, the rank inequality once,
// and the recursion pivots for k = 0..K-1 by iterating the Riccati operator
// from M. Stops at the first violation. A singular recursion pivot is
// reported as a violation, not thrown.
AssumptionReport check_assumption(const ProblemData& prob, const SymMat& M, int K,
                                  const Tolerances& tol = {});

}  // namespace mpdre
