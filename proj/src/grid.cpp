#include "mpdre/grid.hpp"

#include <limits>
#include <vector>

namespace mpdre {

GridSpec GridSpec::cube(int dim, double half_width, int points, int refinements) {
    GridSpec spec;
    spec.lo = Eigen::VectorXd::Constant(dim, -half_width);
    spec.hi = Eigen::VectorXd::Constant(dim, half_width);
    spec.points_per_axis = points;
    spec.refinements = refinements;
    return spec;
}

namespace {

struct PassResult {
    double value;
    Eigen::VectorXd argmax;
    std::vector<int> argmax_index;
    Eigen::VectorXd spacing;
};

PassResult run_pass(const std::function<double(const Eigen::VectorXd&)>& f,
                    const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, int points) {
    const int dim = static_cast<int>(lo.size());
    PassResult best;
    best.value = -std::numeric_limits<double>::infinity();
    best.argmax = lo;
    best.argmax_index.assign(dim, 0);
    best.spacing = (hi - lo) / static_cast<double>(points - 1);

    std::vector<int> idx(dim, 0);
    Eigen::VectorXd x(dim);
    for (;;) {
        for (int a = 0; a < dim; ++a) {
            x[a] = lo[a] + best.spacing[a] * idx[a];
        }
        const double v = f(x);
        if (v > best.value) {
            best.value = v;
            best.argmax = x;
            best.argmax_index = idx;
        }
        int axis = 0;
        while (axis < dim && ++idx[axis] == points) {
            idx[axis] = 0;
            ++axis;
        }
        if (axis == dim) break;
    }
    return best;
}

}  // namespace

Eigen::VectorXd final_grid_spacing(const GridSpec& spec) {
    Eigen::VectorXd spacing = (spec.hi - spec.lo) / (spec.points_per_axis - 1);
    for (int r = 0; r < spec.refinements; ++r) spacing *= 0.5;
    return spacing;
}

double grid_error_bound(const GridSpec& spec, const SymMat& hess) {
    const Eigen::VectorXd eigs = sym_eigenvalues(hess).cwiseAbs();
    const double h_max = eigs.maxCoeff();
    const double h_min = eigs.minCoeff();
    const double dim = static_cast<double>(spec.lo.size());
    const double safe = (spec.points_per_axis - 1) / 2.0;
    const bool contained =
        h_min > 0.0 && (h_max / h_min) * dim <= safe * safe;
    const Eigen::VectorXd spacing = contained
                                        ? final_grid_spacing(spec)
                                        : (spec.hi - spec.lo) / (spec.points_per_axis - 1);
    return h_max / 8.0 * spacing.squaredNorm();
}

GridSearchResult maximize_on_grid(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const GridSpec& spec) {
    const int dim = static_cast<int>(spec.lo.size());
    if (dim <= 0 || spec.hi.size() != dim || spec.points_per_axis < 3) {
        throw Error("maximize_on_grid: malformed GridSpec");
    }
    if (((spec.hi - spec.lo).array() <= 0.0).any()) {
        throw Error("maximize_on_grid: box must have positive extent on every axis");
    }

    PassResult pass = run_pass(f, spec.lo, spec.hi, spec.points_per_axis);
    for (int a = 0; a < dim; ++a) {
        if (pass.argmax_index[a] == 0 || pass.argmax_index[a] == spec.points_per_axis - 1) {
            throw SearchBoxTooSmall("maximize_on_grid: coarse maximizer on box boundary, axis " +
                                    std::to_string(a));
        }
    }

    GridSearchResult out;
    out.value = pass.value;
    out.argmax = pass.argmax;
    out.final_spacing = pass.spacing;

    // Each pass re-grids half the previous width around the incumbent; the
    // incumbent stays on the new grid, so the value never regresses.
    Eigen::VectorXd half_width = 0.25 * (spec.hi - spec.lo);
    for (int r = 0; r < spec.refinements; ++r) {
        pass = run_pass(f, out.argmax - half_width, out.argmax + half_width,
                        spec.points_per_axis);
        if (pass.value > out.value) {
            out.value = pass.value;
            out.argmax = pass.argmax;
        }
        out.final_spacing = pass.spacing;
        half_width *= 0.5;
    }
    return out;
}

}  // namespace mpdre
