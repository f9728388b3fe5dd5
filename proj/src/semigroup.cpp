#include "mpdre/semigroup.hpp"

#include <functional>
#include <string>
#include <utility>

#include "mpdre/riccati.hpp"

namespace mpdre {

const char* to_string(SemigroupKind kind) {
    switch (kind) {
        case SemigroupKind::Q: return "Q";
        case SemigroupKind::Theta: return "Theta";
        case SemigroupKind::Lambda: return "Lambda";
    }
    return "?";
}

PivotMatrix star_pivot(const BlockSymMat& left, const BlockSymMat& right) {
    SymMat value = left.b22() + right.b11();
    const Eigen::VectorXd eigs = sym_eigenvalues(value);
    return PivotMatrix{std::move(value), eigs.minCoeff(), eigs.maxCoeff()};
}

BlockSymMat q_initial(const SymMat& M) {
    return BlockSymMat(M, -M.mat(), M);
}

BlockSymMat q_step(const BlockSymMat& Qk, const ProblemData& prob, const Tolerances& tol) {
    if (Qk.block_dim() != prob.state_dim()) {
        throw InvalidMatrix("q_step: block dimension mismatch");
    }
    // First recursion is the Riccati step itself; it also enforces the
    // shared pivot condition.
    SymMat b11 = riccati_step(Qk.b11(), prob, tol);

    const int m = prob.input_dim();
    const SymMat pivot(prob.gamma * prob.gamma * Eigen::MatrixXd::Identity(m, m) -
                       prob.B.transpose() * Qk.b11().mat() * prob.B);
    const Eigen::MatrixXd corr = prob.B * invert(pivot, tol).mat() * prob.B.transpose();

    Eigen::MatrixXd b12 =
        prob.A.transpose() * Qk.b12() + prob.A.transpose() * Qk.b11().mat() * corr * Qk.b12();
    SymMat b22(Qk.b22().mat() + Qk.b12().transpose() * corr * Qk.b12());
    return BlockSymMat(std::move(b11), b12, std::move(b22));
}

std::vector<BlockSymMat> q_path(const ProblemData& prob, const SymMat& M, int k,
                                const Tolerances& tol) {
    std::vector<BlockSymMat> path;
    path.reserve(k + 1);
    path.push_back(q_initial(M));
    for (int i = 0; i < k; ++i) {
        path.push_back(q_step(path.back(), prob, tol));
    }
    return path;
}

SemigroupElement q_element(const ProblemData& prob, const SymMat& M, int k,
                           const Tolerances& tol) {
    if (k < 0) throw Error("q_element: k must be >= 0");
    BlockSymMat Qk = q_initial(M);
    for (int i = 0; i < k; ++i) {
        Qk = q_step(Qk, prob, tol);
    }
    return SemigroupElement{SemigroupKind::Q, k, std::move(Qk)};
}

BlockSymMat theta_initial(const ProblemData& prob, const SymMat& M, const Tolerances& tol) {
    const BlockSymMat Q1 = q_step(q_initial(M), prob, tol);
    const Eigen::MatrixXd Uinv = invert(M - Q1.b11(), tol).mat();
    SymMat b11(M.mat() * Uinv * M.mat() - M.mat());
    Eigen::MatrixXd b12 = M.mat() * Uinv * Q1.b12();
    SymMat b22(Q1.b12().transpose() * Uinv * Q1.b12() + Q1.b22().mat());
    return BlockSymMat(std::move(b11), b12, std::move(b22));
}

BlockSymMat lambda_initial(const ProblemData& prob, const SymMat& M, const Tolerances& tol) {
    const BlockSymMat Q1 = q_step(q_initial(M), prob, tol);
    const Eigen::MatrixXd Vinv = invert(M - Q1.b22(), tol).mat();
    SymMat b11(Q1.b12() * Vinv * Q1.b12().transpose() + Q1.b11().mat());
    Eigen::MatrixXd b12 = Q1.b12() * Vinv * M.mat();
    SymMat b22(M.mat() * Vinv * M.mat() - M.mat());
    return BlockSymMat(std::move(b11), b12, std::move(b22));
}

BlockSymMat star(const BlockSymMat& left, const BlockSymMat& right, const Tolerances& tol) {
    if (left.block_dim() != right.block_dim()) {
        throw InvalidMatrix("star: block dimension mismatch");
    }
    const PivotMatrix pivot = star_pivot(left, right);
    if (!(pivot.max_eigenvalue < -definiteness_threshold(pivot.value, tol))) {
        throw PivotIndefinite("star: pivot left.b22 + right.b11 not negative definite, "
                              "largest eigenvalue " + std::to_string(pivot.max_eigenvalue),
                              pivot.max_eigenvalue);
    }
    const Eigen::MatrixXd pinv = invert(pivot.value, tol).mat();
    SymMat b11(left.b11().mat() - left.b12() * pinv * left.b12().transpose());
    Eigen::MatrixXd b12 = -left.b12() * pinv * right.b12();
    SymMat b22(right.b22().mat() - right.b12().transpose() * pinv * right.b12());
    return BlockSymMat(std::move(b11), b12, std::move(b22));
}

namespace {

// star() with the (k1, k2) indices attached to pivot failures.
BlockSymMat star_at(const BlockSymMat& left, int k1, const BlockSymMat& right, int k2,
                    const Tolerances& tol) {
    try {
        return star(left, right, tol);
    } catch (PivotIndefinite& e) {
        PivotIndefinite out(std::string(e.what()) + " at (k1, k2) = (" + std::to_string(k1) +
                                ", " + std::to_string(k2) + ")",
                            e.max_eigenvalue);
        out.failing_pair = std::make_pair(k1, k2);
        throw out;
    }
}

BlockSymMat build_by_strategy(const BlockSymMat& initial, int k, Strategy strategy,
                              const Tolerances& tol) {
    if (strategy == Strategy::sequential) {
        BlockSymMat elem = initial;
        for (int i = 1; i < k; ++i) {
            elem = star_at(elem, i, initial, 1, tol);
        }
        return elem;
    }
    // Left-to-right binary exponentiation: square along the bits of k,
    // multiplying in the initial element where a bit is set.
    int msb = 31;
    while (((k >> msb) & 1) == 0) --msb;
    BlockSymMat elem = initial;
    int built = 1;
    for (int bit = msb - 1; bit >= 0; --bit) {
        elem = star_at(elem, built, elem, built, tol);
        built *= 2;
        if ((k >> bit) & 1) {
            elem = star_at(elem, built, initial, 1, tol);
            built += 1;
        }
    }
    return elem;
}

}  // namespace

SemigroupElement semigroup_element(SemigroupKind kind, int k, const ProblemData& prob,
                                   const SymMat& M, Strategy strategy, const Tolerances& tol) {
    if (k < 1) throw Error("semigroup_element: k must be >= 1");
    if (kind == SemigroupKind::Q) {
        throw Error("semigroup_element: Q is built by its own recursion, see q_element");
    }
    const BlockSymMat initial = (kind == SemigroupKind::Theta) ? theta_initial(prob, M, tol)
                                                               : lambda_initial(prob, M, tol);
    return SemigroupElement{kind, k, build_by_strategy(initial, k, strategy, tol)};
}

namespace {

SymMat schur_solution_map(const BlockSymMat& elem, const SymMat& Omega0, const Tolerances& tol,
                          const char* name) {
    if (elem.block_dim() != Omega0.dim()) {
        throw InvalidMatrix(std::string(name) + ": dimension mismatch");
    }
    const SymMat pivot = Omega0 + elem.b22();
    const double top = max_eigenvalue(pivot);
    if (!(top < -definiteness_threshold(pivot, tol))) {
        throw ExistenceViolated(std::string(name) +
                                    ": existence pivot not negative definite, largest "
                                    "eigenvalue " + std::to_string(top),
                                top);
    }
    const Eigen::MatrixXd pinv = invert(pivot, tol).mat();
    return SymMat(elem.b11().mat() - elem.b12() * pinv * elem.b12().transpose());
}

}  // namespace

SymMat psi_p(const BlockSymMat& Lam, const SymMat& P0, const Tolerances& tol) {
    return schur_solution_map(Lam, P0, tol, "psi_p");
}

SymMat psi_d(const BlockSymMat& Theta, const SymMat& O0, const Tolerances& tol) {
    return schur_solution_map(Theta, O0, tol, "psi_d");
}

BlockSymMat gamma_transform(const BlockSymMat& Om, const SymMat& M, const Tolerances& tol) {
    const SymMat T = M + Om.b11();
    if (!is_negative_definite(T, tol)) {
        throw DomainViolation("gamma_transform: Omega^11 + M not negative definite", "gamma");
    }
    const Eigen::MatrixXd Tinv = invert(T, tol).mat();
    SymMat b11(M.mat() - M.mat() * Tinv * M.mat());
    Eigen::MatrixXd b12 = M.mat() * Tinv * Om.b12();
    SymMat b22(Om.b22().mat() - Om.b12().transpose() * Tinv * Om.b12());
    return BlockSymMat(std::move(b11), b12, std::move(b22));
}

BlockSymMat gamma_inv(const BlockSymMat& Om, const SymMat& M, const Tolerances& tol) {
    const SymMat U = M - Om.b11();
    if (!is_negative_definite(U, tol)) {
        throw DomainViolation("gamma_inv: M - Omega^11 not negative definite", "gamma_inv");
    }
    const Eigen::MatrixXd Uinv = invert(U, tol).mat();
    SymMat b11(M.mat() * Uinv * M.mat() - M.mat());
    Eigen::MatrixXd b12 = M.mat() * Uinv * Om.b12();
    SymMat b22(Om.b12().transpose() * Uinv * Om.b12() + Om.b22().mat());
    return BlockSymMat(std::move(b11), b12, std::move(b22));
}

BlockSymMat delta_swap(const BlockSymMat& Om) {
    return BlockSymMat(Om.b22(), Om.b21(), Om.b11());
}

namespace {

BlockSymMat with_stage(const char* outer, const std::function<BlockSymMat()>& body) {
    try {
        return body();
    } catch (const DomainViolation& e) {
        throw DomainViolation(std::string(outer) + ": " + e.what(),
                              std::string(outer) + "/" + e.stage);
    }
}

}  // namespace

BlockSymMat pi_transform(const BlockSymMat& Om, const SymMat& M, const Tolerances& tol) {
    return with_stage("pi_transform",
                      [&] { return delta_swap(gamma_transform(delta_swap(Om), M, tol)); });
}

BlockSymMat pi_inv(const BlockSymMat& Om, const SymMat& M, const Tolerances& tol) {
    return with_stage("pi_inv", [&] { return delta_swap(gamma_inv(delta_swap(Om), M, tol)); });
}

BlockSymMat xi_transform(const BlockSymMat& Om, const SymMat& M, const Tolerances& tol) {
    return with_stage("xi_transform",
                      [&] { return pi_inv(gamma_transform(Om, M, tol), M, tol); });
}

BlockSymMat xi_inv(const BlockSymMat& Om, const SymMat& M, const Tolerances& tol) {
    return with_stage("xi_inv", [&] { return gamma_inv(pi_transform(Om, M, tol), M, tol); });
}

double eval_kernel(const BlockSymMat& hessian, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y) {
    const int n = hessian.block_dim();
    if (x.size() != n || y.size() != n) {
        throw InvalidMatrix("eval_kernel: argument dimension mismatch");
    }
    return 0.5 * x.dot(hessian.b11().mat() * x) + x.dot(hessian.b12() * y) +
           0.5 * y.dot(hessian.b22().mat() * y);
}

double eval_kernel(const SemigroupElement& elem, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y) {
    return eval_kernel(elem.hessian, x, y);
}

double kernel_convolution_bruteforce(const BlockSymMat& left, const BlockSymMat& right,
                                     const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                     const GridSpec& search) {
    const auto objective = [&](const Eigen::VectorXd& rho) {
        return eval_kernel(left, x, rho) + eval_kernel(right, rho, y);
    };
    return maximize_on_grid(objective, search).value;
}

SemigroupCache::SemigroupCache(ProblemData prob, SymMat M, Strategy strategy, Tolerances tol)
    : prob_(std::move(prob)), M_(std::move(M)), strategy_(strategy), tol_(tol) {}

const BlockSymMat& SemigroupCache::element(SemigroupKind kind, int k) {
    if (k < 0 || (k < 1 && kind != SemigroupKind::Q)) {
        throw Error("SemigroupCache: invalid horizon");
    }
    const auto key = std::make_pair(static_cast<int>(kind), k);
    if (auto it = cache_.find(key); it != cache_.end()) {
        return it->second;
    }
    BlockSymMat built;
    if (kind == SemigroupKind::Q) {
        built = (k == 0) ? q_initial(M_)
                         : q_step(element(SemigroupKind::Q, k - 1), prob_, tol_);
    } else if (k == 1) {
        built = (kind == SemigroupKind::Theta) ? theta_initial(prob_, M_, tol_)
                                               : lambda_initial(prob_, M_, tol_);
    } else if (strategy_ == Strategy::sequential) {
        built = star(element(kind, k - 1), element(kind, 1), tol_);
    } else if (k % 2 == 0) {
        const BlockSymMat& half = element(kind, k / 2);
        built = star(half, half, tol_);
    } else {
        built = star(element(kind, k - 1), element(kind, 1), tol_);
    }
    return cache_.emplace(key, std::move(built)).first->second;
}

}  // namespace mpdre
