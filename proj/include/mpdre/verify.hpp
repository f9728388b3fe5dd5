#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpdre/limit_sweep.hpp"
#include "mpdre/problem.hpp"
#include "mpdre/semigroup.hpp"

namespace mpdre {

// One row of the verification table. `value` is the measured margin or
// deviation, `threshold` what it was compared against.
struct CheckRow {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct VerifyOptions {
    int max_k = 16;            // semigroup-law and triangle horizon
    int riccati_horizon = 20;  // route-agreement and monotonicity horizon
    int monotonicity_pairs = 20;
    int route_samples = 8;
    int oracle_points = 4;
    unsigned seed = 20240801;
    Strategy strategy = Strategy::doubling;
    bool limit_sweep = false;
    std::vector<double> scales = default_limit_scales();
};

struct VerifyReport {
    std::vector<CheckRow> rows;
    std::optional<LimitSweep> sweep;

    bool all_pass() const;
};

// Runs the invariant suite on one instance: assumption margins, auxiliary
// kernel structure, semigroup laws, the transform triangle, route
// agreement, monotonicity, grid-oracle agreement, strategy agreement, and
// (n = 1) the existence boundary. Deterministic for a fixed seed.
VerifyReport run_verify_suite(const ProblemData& prob, const SymMat& M,
                              const VerifyOptions& options = {}, const Tolerances& tol = {});

// Scalar existence-boundary sweep: increases P0 from -Lambda_k^22 - 1 in
// fixed steps and locates the first recursion failure and the first
// nonnegative existence pivot.
struct BoundarySweep {
    double first_recursion_failure;  // smallest swept P0 whose recursion terminates before k
    double first_pivot_nonneg;       // smallest swept P0 with Lambda_k^22 + P0 not negative
};
BoundarySweep existence_boundary_sweep(const ProblemData& prob, const SymMat& M, int k,
                                       double step = 0.01, const Tolerances& tol = {});

std::string verify_table_text(const VerifyReport& report);

}  // namespace mpdre
