#pragma once

#include <Eigen/Dense>
#include <optional>
#include <random>

#include "mpdre/problem.hpp"
#include "mpdre/riccati.hpp"

namespace mpdre::testing {

inline Eigen::MatrixXd mat1(double a) {
    Eigen::MatrixXd m(1, 1);
    m << a;
    return m;
}

inline Eigen::MatrixXd mat2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return m;
}

struct Instance {
    ProblemData prob;
    SymMat M;
};

// The worked scalar instance used throughout: A = 0.5, B = 1, Phi = 0.1,
// gamma = 1, M = -1.
inline Instance scalar_instance() {
    return Instance{make_problem(mat1(0.5), mat1(1.0), symmetrize(mat1(0.1)), 1.0),
                    symmetrize(mat1(-1.0))};
}

// A fixed two-dimensional instance that passes the assumption check:
// stable triangular A, B = I, small Phi, M = -I.
inline Instance instance_2d() {
    Eigen::MatrixXd A = mat2(0.4, 0.1, 0.0, 0.3);
    return Instance{make_problem(A, Eigen::MatrixXd::Identity(2, 2),
                                 SymMat(0.1 * Eigen::MatrixXd::Identity(2, 2)), 1.0),
                    SymMat(-Eigen::MatrixXd::Identity(2, 2))};
}

// Scalar Riccati map evaluated with plain double arithmetic; independent of
// the matrix implementation.
inline double scalar_riccati(double a, double b, double phi, double gamma, double p) {
    const double pivot = gamma * gamma - b * p * b;
    return phi + a * p * a + a * p * b * (1.0 / pivot) * b * p * a;
}

// Iterates the scalar map; returns the trajectory p_0..p_k, stopping early
// when the pivot is lost.
inline std::vector<double> scalar_riccati_path(double a, double b, double phi, double gamma,
                                               double p0, int k) {
    std::vector<double> path{p0};
    for (int i = 0; i < k; ++i) {
        const double p = path.back();
        if (gamma * gamma - b * p * b <= 0.0) break;
        path.push_back(scalar_riccati(a, b, phi, gamma, p));
    }
    return path;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols,
                                     double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) m(r, c) = u(rng);
    }
    return m;
}

inline SymMat random_sym(std::mt19937_64& rng, int n, double scale = 1.0) {
    return symmetrize(random_matrix(rng, n, n, scale));
}

inline SymMat random_psd(std::mt19937_64& rng, int n, double scale = 1.0) {
    const Eigen::MatrixXd l = random_matrix(rng, n, n, scale);
    return SymMat(l * l.transpose());
}

// Draws one instance with n in 1..4, m in 1..2, A scaled to a random
// spectral radius below 0.9, and a basis M = -c I selected by the
// assumption check. Instances that admit no feasible scale are rejected.
inline std::optional<Instance> try_random_feasible_instance(std::mt19937_64& rng,
                                                            int horizon = 24) {
    std::uniform_int_distribution<int> dn(1, 4);
    std::uniform_int_distribution<int> dm(1, 2);
    std::uniform_real_distribution<double> dr(0.4, 0.85);
    std::uniform_real_distribution<double> dg(1.0, 2.5);

    const int n = dn(rng);
    const int m = dm(rng);
    if (m > n) return std::nullopt;

    Eigen::MatrixXd A = random_matrix(rng, n, n);
    const double rho = A.eigenvalues().cwiseAbs().maxCoeff();
    if (rho < 1e-6) return std::nullopt;
    A *= dr(rng) / rho;

    const Eigen::MatrixXd B = random_matrix(rng, n, m);
    const Eigen::MatrixXd L = random_matrix(rng, n, n);
    const SymMat Phi(0.05 * Eigen::MatrixXd::Identity(n, n) + 0.15 * L * L.transpose());
    const double gamma = dg(rng);

    ProblemData prob = make_problem(A, B, Phi, gamma);
    for (double c : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        const SymMat M(-c * Eigen::MatrixXd::Identity(n, n));
        if (check_assumption(prob, M, horizon).feasible) {
            return Instance{std::move(prob), M};
        }
    }
    return std::nullopt;
}

inline Instance random_feasible_instance(std::mt19937_64& rng, int horizon = 24) {
    for (;;) {
        if (auto inst = try_random_feasible_instance(rng, horizon)) return *inst;
    }
}

}  // namespace mpdre::testing
