#include "mpdre/duality.hpp"

namespace mpdre {

DualQuad make_dual_quad(const SymMat& hessian_dual, const SymMat& M, const Tolerances& tol) {
    const SymMat gap = -M - hessian_dual;
    if (min_eigenvalue(gap) < -definiteness_threshold(gap, tol)) {
        throw DomainViolation("make_dual_quad: -M - Omega is not positive semidefinite");
    }
    return DualQuad{hessian_dual};
}

SymMat upsilon(const SymMat& Omega, const SymMat& M, const Tolerances& tol) {
    const SymMat gap = Omega - M;
    if (!is_positive_definite(gap, tol)) {
        throw DomainViolation("upsilon: Omega - M not positive definite");
    }
    const SymMat pivot = M - Omega;
    const Eigen::MatrixXd pinv = invert(pivot, tol).mat();
    return SymMat(M.mat() * pinv * M.mat() - M.mat());
}

SymMat upsilon_inv(const SymMat& Omega, const SymMat& M, const Tolerances& tol) {
    const SymMat gap = -M - Omega;
    if (!is_positive_definite(gap, tol)) {
        throw DomainViolation("upsilon_inv: -M - Omega not positive definite");
    }
    const SymMat pivot = M + Omega;
    const Eigen::MatrixXd pinv = invert(pivot, tol).mat();
    return SymMat(-M.mat() * pinv * M.mat() + M.mat());
}

namespace {

double quad_basis(const Eigen::VectorXd& x, const Eigen::VectorXd& z, const SymMat& M) {
    const Eigen::VectorXd d = x - z;
    return 0.5 * d.dot(M.mat() * d);
}

}  // namespace

double dual_transform_bruteforce(const QuadFunction& phi, const SymMat& M,
                                 const Eigen::VectorXd& z, const GridSpec& search) {
    const auto objective = [&](const Eigen::VectorXd& x) {
        return quad_basis(x, z, M) - 0.5 * x.dot(phi.hessian.mat() * x);
    };
    return -maximize_on_grid(objective, search).value;
}

double inverse_dual_transform_bruteforce(const DualQuad& phat, const SymMat& M,
                                         const Eigen::VectorXd& x, const GridSpec& search) {
    const auto objective = [&](const Eigen::VectorXd& z) {
        return quad_basis(x, z, M) + 0.5 * z.dot(phat.hessian_dual.mat() * z);
    };
    return maximize_on_grid(objective, search).value;
}

}  // namespace mpdre
