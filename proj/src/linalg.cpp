#include "mpdre/linalg.hpp"

#include <cmath>

namespace mpdre {

SymMat::SymMat(const Eigen::MatrixXd& raw) {
    if (raw.rows() != raw.cols()) {
        throw InvalidMatrix("SymMat: input is not square");
    }
    if (!raw.allFinite()) {
        throw InvalidMatrix("SymMat: non-finite entries");
    }
    max_asym_ = (raw - raw.transpose()).cwiseAbs().maxCoeff();
    m_ = 0.5 * (raw + raw.transpose());
}

SymMat operator+(const SymMat& a, const SymMat& b) { return SymMat(a.mat() + b.mat()); }
SymMat operator-(const SymMat& a, const SymMat& b) { return SymMat(a.mat() - b.mat()); }
SymMat operator-(const SymMat& a) { return SymMat(-a.mat()); }
SymMat operator*(double s, const SymMat& a) { return SymMat(s * a.mat()); }

SymMat symmetrize(const Eigen::MatrixXd& raw) { return SymMat(raw); }

Eigen::VectorXd sym_eigenvalues(const SymMat& s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.mat(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double min_eigenvalue(const SymMat& s) { return sym_eigenvalues(s).minCoeff(); }
double max_eigenvalue(const SymMat& s) { return sym_eigenvalues(s).maxCoeff(); }

double definiteness_threshold(const SymMat& s, const Tolerances& tol) {
    return tol.pd_margin * (1.0 + s.norm_fro());
}

bool is_negative_definite(const SymMat& s, const Tolerances& tol) {
    return max_eigenvalue(s) < -definiteness_threshold(s, tol);
}

bool is_positive_definite(const SymMat& s, const Tolerances& tol) {
    return min_eigenvalue(s) > definiteness_threshold(s, tol);
}

double inversion_residual(const SymMat& s, const SymMat& inverse) {
    const int n = s.dim();
    return (s.mat() * inverse.mat() - Eigen::MatrixXd::Identity(n, n)).norm();
}

SymMat invert(const SymMat& s, const Tolerances& tol, double* residual) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.mat());
    const Eigen::VectorXd d = es.eigenvalues();
    const double sigma_max = d.cwiseAbs().maxCoeff();
    const double sigma_min = d.cwiseAbs().minCoeff();
    if (sigma_min <= tol.pd_margin * (1.0 + sigma_max)) {
        throw SingularPivot("invert: smallest singular value " + std::to_string(sigma_min) +
                            " below conditioning threshold");
    }
    const Eigen::MatrixXd inv =
        es.eigenvectors() * d.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    SymMat out(inv);
    if (residual != nullptr) {
        *residual = inversion_residual(s, out);
    }
    return out;
}

BlockSymMat::BlockSymMat(SymMat b11, const Eigen::MatrixXd& b12, SymMat b22)
    : b11_(std::move(b11)), b12_(b12), b22_(std::move(b22)) {
    const int n = b11_.dim();
    if (b22_.dim() != n || b12_.rows() != n || b12_.cols() != n) {
        throw InvalidMatrix("BlockSymMat: inconsistent block dimensions");
    }
    if (!b12_.allFinite()) {
        throw InvalidMatrix("BlockSymMat: non-finite entries in off-diagonal block");
    }
}

Eigen::MatrixXd BlockSymMat::assembled() const {
    const int n = block_dim();
    Eigen::MatrixXd full(2 * n, 2 * n);
    full.topLeftCorner(n, n) = b11_.mat();
    full.topRightCorner(n, n) = b12_;
    full.bottomLeftCorner(n, n) = b12_.transpose();
    full.bottomRightCorner(n, n) = b22_.mat();
    return full;
}

BlockSymMat operator-(const BlockSymMat& a) {
    return BlockSymMat(-a.b11(), -a.b12(), -a.b22());
}

double rel_dev(const Eigen::MatrixXd& x, const Eigen::MatrixXd& ref) {
    return (x - ref).norm() / (1.0 + ref.norm());
}

double rel_dev(const SymMat& x, const SymMat& ref) { return rel_dev(x.mat(), ref.mat()); }

double rel_dev(const BlockSymMat& x, const BlockSymMat& ref) {
    return rel_dev(x.assembled(), ref.assembled());
}

}  // namespace mpdre
