#pragma once

#include <Eigen/Dense>

#include "mpdre/errors.hpp"

namespace mpdre {

// Numerical knobs shared across the library.
//   pd_margin:  base eigenvalue threshold for definiteness tests; the
//               effective threshold scales as pd_margin * (1 + ||S||_F).
//   match_rtol: relative tolerance for equality assertions between two
//               computation routes.
struct Tolerances {
    double pd_margin = 1e-10;
    double match_rtol = 1e-8;
};

// Dense real symmetric matrix. Symmetry is enforced on construction by
// averaging with the transpose; the largest asymmetry seen is retained.
class SymMat {
  public:
    SymMat() = default;
    explicit SymMat(const Eigen::MatrixXd& raw);

    static SymMat zero(int n) { return SymMat(Eigen::MatrixXd::Zero(n, n)); }
    static SymMat identity(int n) { return SymMat(Eigen::MatrixXd::Identity(n, n)); }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXd& mat() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }
    double max_asymmetry() const { return max_asym_; }
    double norm_fro() const { return m_.norm(); }

  private:
    Eigen::MatrixXd m_;
    double max_asym_ = 0.0;
};

SymMat operator+(const SymMat& a, const SymMat& b);
SymMat operator-(const SymMat& a, const SymMat& b);
SymMat operator-(const SymMat& a);
SymMat operator*(double s, const SymMat& a);

// (raw + raw^T) / 2. Rejects non-finite input.
SymMat symmetrize(const Eigen::MatrixXd& raw);

// Eigenvalues of a symmetric matrix, ascending.
Eigen::VectorXd sym_eigenvalues(const SymMat& s);
double min_eigenvalue(const SymMat& s);
double max_eigenvalue(const SymMat& s);

// Effective definiteness threshold for S under `tol`.
double definiteness_threshold(const SymMat& s, const Tolerances& tol);

// True iff the largest eigenvalue of S is below -threshold (strict at the
// boundary: the zero matrix is neither positive nor negative definite).
bool is_negative_definite(const SymMat& s, const Tolerances& tol = {});
bool is_positive_definite(const SymMat& s, const Tolerances& tol = {});

// ||S * inverse - I||_F
double inversion_residual(const SymMat& s, const SymMat& inverse);

// Symmetric inverse via spectral decomposition. Raises SingularPivot when
// the smallest singular value falls below pd_margin * (1 + sigma_max).
// When `residual` is non-null it receives ||S S^{-1} - I||_F.
SymMat invert(const SymMat& s, const Tolerances& tol = {}, double* residual = nullptr);

// 2n x 2n symmetric matrix kept in block form; the 21 block is implied as
// the transpose of the 12 block.
class BlockSymMat {
  public:
    BlockSymMat() = default;
    BlockSymMat(SymMat b11, const Eigen::MatrixXd& b12, SymMat b22);

    int block_dim() const { return b11_.dim(); }
    const SymMat& b11() const { return b11_; }
    const Eigen::MatrixXd& b12() const { return b12_; }
    Eigen::MatrixXd b21() const { return b12_.transpose(); }
    const SymMat& b22() const { return b22_; }

    Eigen::MatrixXd assembled() const;
    double norm_fro() const { return assembled().norm(); }

  private:
    SymMat b11_;
    Eigen::MatrixXd b12_;
    SymMat b22_;
};

BlockSymMat operator-(const BlockSymMat& a);

// ||x - ref||_F / (1 + ||ref||_F)
double rel_dev(const Eigen::MatrixXd& x, const Eigen::MatrixXd& ref);
double rel_dev(const SymMat& x, const SymMat& ref);
double rel_dev(const BlockSymMat& x, const BlockSymMat& ref);

}  // namespace mpdre
