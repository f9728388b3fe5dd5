#pragma once

#include <Eigen/Dense>
#include <functional>

#include "mpdre/errors.hpp"
#include "mpdre/linalg.hpp"

namespace mpdre {

// Coarse-to-fine grid maximization. The box [lo, hi] is sampled with
// `points_per_axis` points per axis; each refinement pass re-grids a box of
// half the previous width centered on the incumbent. Used only as an
// independent check on closed-form optima.
struct GridSpec {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
    int points_per_axis = 21;
    int refinements = 2;

    static GridSpec cube(int dim, double half_width, int points = 21, int refinements = 2);
};

struct GridSearchResult {
    double value = 0.0;
    Eigen::VectorXd argmax;
    Eigen::VectorXd final_spacing;  // per-axis cell size of the last pass

    double spacing_sq_sum() const { return final_spacing.squaredNorm(); }
};

// Maximizes f over the spec's box. Raises SearchBoxTooSmall when the
// coarse-pass maximizer lies on the boundary of the supplied box.
GridSearchResult maximize_on_grid(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const GridSpec& spec);

// Per-axis cell size of the last refinement pass: halves once per pass.
Eigen::VectorXd final_grid_spacing(const GridSpec& spec);

// Worst-case |grid max - true max| for a concave quadratic with Hessian
// `hess` whose maximizer lies inside the box. The final-pass resolution
// applies when every refinement box provably contains the maximizer, which
// holds when cond(H) * dim <= ((points - 1) / 2)^2; otherwise only the
// coarse-pass bound ||H||_2 / 8 * sum h0_i^2 is guaranteed.
double grid_error_bound(const GridSpec& spec, const SymMat& hess);

}  // namespace mpdre
