#pragma once

#include <Eigen/Dense>

#include "mpdre/grid.hpp"
#include "mpdre/linalg.hpp"
#include "mpdre/riccati.hpp"

namespace mpdre {

// Quadratic z -> (1/2) z^T Omega-hat z living on the dual side of the
// pairing: -M - Omega-hat must be positive semidefinite up to pd_margin.
struct DualQuad {
    SymMat hessian_dual;
};

DualQuad make_dual_quad(const SymMat& hessian_dual, const SymMat& M, const Tolerances& tol = {});

// Hessian-level dual transform: M (M - Omega)^{-1} M - M, for Omega > M.
SymMat upsilon(const SymMat& Omega, const SymMat& M, const Tolerances& tol = {});

// Inverse transform: -M (M + Omega)^{-1} M + M, for Omega < -M.
SymMat upsilon_inv(const SymMat& Omega, const SymMat& M, const Tolerances& tol = {});

// Grid evaluation of the dual pairing at one point:
//   -sup_x { psi(x, z) - phi(x) },  psi(x, z) = (1/2)(x - z)^T M (x - z).
// Independent of the closed form above.
double dual_transform_bruteforce(const QuadFunction& phi, const SymMat& M,
                                 const Eigen::VectorXd& z, const GridSpec& search);

// Grid evaluation of the inverse pairing: sup_z { psi(x, z) + phi_hat(z) }.
double inverse_dual_transform_bruteforce(const DualQuad& phat, const SymMat& M,
                                         const Eigen::VectorXd& x, const GridSpec& search);

}  // namespace mpdre
