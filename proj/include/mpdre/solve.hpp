#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpdre/problem.hpp"
#include "mpdre/semigroup.hpp"

namespace mpdre {

// One initial condition solved three ways: direct Riccati recursion, the
// primal solution map, and the dual pipeline (map in, propagate, map back).
struct SolveEntry {
    int index = 0;
    SymMat P0;
    bool exists = false;                    // direct recursion reached step k
    std::optional<int> first_failure_step;  // pivot-loss index when it did not
    std::optional<SymMat> pk_direct;
    std::optional<SymMat> pk_primal;
    std::optional<SymMat> pk_dual;
    std::optional<double> dev_primal_direct;
    std::optional<double> dev_dual_direct;
    std::optional<double> dev_primal_dual;
    // ||P P^{-1} - I||_F for the inverted primal existence pivot.
    std::optional<double> existence_pivot_residual;
    std::string status;  // "OK" | "NO_SOLUTION" | "FAILED"
    std::optional<std::string> note;
};

struct SolveReport {
    int k = 0;
    double match_rtol = 0.0;
    std::vector<SolveEntry> entries;

    bool all_ok() const;
};

// Solves every P0 at horizon k along all applicable routes and compares
// them pairwise against match_rtol. The dual route applies only to
// P0 > M and is skipped (with a note) otherwise; a route disagreeing with
// the direct recursion on existence marks the entry FAILED.
SolveReport solve_batch(const ProblemData& prob, const SymMat& M, int k,
                        const std::vector<SymMat>& p0s,
                        Strategy strategy = Strategy::doubling, const Tolerances& tol = {});

std::string solve_report_json(const SolveReport& report);

}  // namespace mpdre
