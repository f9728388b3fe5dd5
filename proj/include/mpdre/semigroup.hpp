#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "mpdre/grid.hpp"
#include "mpdre/linalg.hpp"
#include "mpdre/problem.hpp"

namespace mpdre {

enum class SemigroupKind { Q, Theta, Lambda };
enum class Strategy { sequential, doubling };

const char* to_string(SemigroupKind kind);

// One horizon-indexed element of the auxiliary (Q), dual (Theta) or primal
// (Lambda) fundamental-solution family.
struct SemigroupElement {
    SemigroupKind kind;
    int k;
    BlockSymMat hessian;
};

// Inner block sum inverted inside a circled-star product, with its spectrum
// bounds attached. Negative definiteness of `value` is what makes the
// underlying max-plus convolution finite.
struct PivotMatrix {
    SymMat value;
    double min_eigenvalue;
    double max_eigenvalue;
};

PivotMatrix star_pivot(const BlockSymMat& left, const BlockSymMat& right);

// Auxiliary-kernel recursion.
BlockSymMat q_initial(const SymMat& M);
BlockSymMat q_step(const BlockSymMat& Qk, const ProblemData& prob, const Tolerances& tol = {});
// Q_0 .. Q_k.
std::vector<BlockSymMat> q_path(const ProblemData& prob, const SymMat& M, int k,
                                const Tolerances& tol = {});
SemigroupElement q_element(const ProblemData& prob, const SymMat& M, int k,
                           const Tolerances& tol = {});

// First elements of the dual and primal families, both assembled from Q_1.
BlockSymMat theta_initial(const ProblemData& prob, const SymMat& M, const Tolerances& tol = {});
BlockSymMat lambda_initial(const ProblemData& prob, const SymMat& M, const Tolerances& tol = {});

// Circled-star product: the Schur-complement composition of two quadratic
// kernels induced by max-plus convolution. Requires the pivot
// left.b22 + right.b11 to be negative definite.
BlockSymMat star(const BlockSymMat& left, const BlockSymMat& right, const Tolerances& tol = {});

// Builds the k-th element of the Theta or Lambda family, either by folding
// the initial element sequentially or by binary exponentiation over star.
SemigroupElement semigroup_element(SemigroupKind kind, int k, const ProblemData& prob,
                                   const SymMat& M, Strategy strategy = Strategy::doubling,
                                   const Tolerances& tol = {});

// Primal solution map: Lambda^11 - Lambda^12 (P0 + Lambda^22)^{-1} Lambda^21.
// Requires Lambda^22 + P0 negative definite; a violation signals that the
// DRE solution at this horizon does not exist.
SymMat psi_p(const BlockSymMat& Lam, const SymMat& P0, const Tolerances& tol = {});

// Dual solution map, same Schur form on dual Hessians.
SymMat psi_d(const BlockSymMat& Theta, const SymMat& O0, const Tolerances& tol = {});

// Block transform algebra connecting the three families.
BlockSymMat gamma_transform(const BlockSymMat& Om, const SymMat& M, const Tolerances& tol = {});
BlockSymMat gamma_inv(const BlockSymMat& Om, const SymMat& M, const Tolerances& tol = {});
BlockSymMat delta_swap(const BlockSymMat& Om);
BlockSymMat pi_transform(const BlockSymMat& Om, const SymMat& M, const Tolerances& tol = {});
BlockSymMat pi_inv(const BlockSymMat& Om, const SymMat& M, const Tolerances& tol = {});
BlockSymMat xi_transform(const BlockSymMat& Om, const SymMat& M, const Tolerances& tol = {});
BlockSymMat xi_inv(const BlockSymMat& Om, const SymMat& M, const Tolerances& tol = {});

// Kernel value (1/2)[x; y]^T H [x; y]; for the Lambda family this is the
// max-plus Green's function at (x, y).
double eval_kernel(const BlockSymMat& hessian, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y);
double eval_kernel(const SemigroupElement& elem, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y);

// Grid evaluation of the max-plus kernel convolution
//   sup_rho { K_left(x, rho) + K_right(rho, y) },
// the independent check on star().
double kernel_convolution_bruteforce(const BlockSymMat& left, const BlockSymMat& right,
                                     const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                     const GridSpec& search);

// Memoizing builder for one (problem, M) pair. Build first, then share
// read-only: lookups mutate the cache, so populate it from a single thread
// before any concurrent reads through element() on a const reference.
class SemigroupCache {
  public:
    SemigroupCache(ProblemData prob, SymMat M, Strategy strategy = Strategy::doubling,
                   Tolerances tol = {});

    const BlockSymMat& element(SemigroupKind kind, int k);

    const ProblemData& problem() const { return prob_; }
    const SymMat& basis() const { return M_; }
    const Tolerances& tolerances() const { return tol_; }

  private:
    ProblemData prob_;
    SymMat M_;
    Strategy strategy_;
    Tolerances tol_;
    std::map<std::pair<int, int>, BlockSymMat> cache_;
};

}  // namespace mpdre
