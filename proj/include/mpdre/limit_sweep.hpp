#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpdre/problem.hpp"

namespace mpdre {

// Study of the primal/dual families as the basis Hessian steepens:
// M = -m I for increasing scales m. The two families coincide in the limit,
// so the relative Frobenius distance between them should shrink.
struct LimitScaleResult {
    double scale = 0.0;
    bool feasible = false;
    std::optional<double> distance;   // ||Lambda_k - Theta_k||_F / (1 + ||Theta_k||_F)
    std::optional<std::string> skip_reason;
};

struct LimitSweep {
    int k = 0;
    std::vector<LimitScaleResult> results;

    // Relative distances of the feasible scales, in sweep order.
    std::vector<double> feasible_distances() const;
};

inline std::vector<double> default_limit_scales() { return {1.0, 3.16, 10.0, 31.6, 100.0}; }

// Builds both families at M = -m I for each scale and records their
// relative distance. Scales must be strictly increasing and positive;
// infeasible scales are skipped with the violated inequality recorded.
LimitSweep run_limit_sweep(const ProblemData& prob, int k, const std::vector<double>& scales,
                           const Tolerances& tol = {});

}  // namespace mpdre
