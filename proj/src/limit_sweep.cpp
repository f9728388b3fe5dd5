#include "mpdre/limit_sweep.hpp"

#include "mpdre/semigroup.hpp"

namespace mpdre {

std::vector<double> LimitSweep::feasible_distances() const {
    std::vector<double> out;
    for (const auto& r : results) {
        if (r.feasible && r.distance) out.push_back(*r.distance);
    }
    return out;
}

LimitSweep run_limit_sweep(const ProblemData& prob, int k, const std::vector<double>& scales,
                           const Tolerances& tol) {
    if (k < 1) throw Error("run_limit_sweep: k must be >= 1");
    if (scales.empty()) throw Error("run_limit_sweep: empty scale list");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (scales[i] <= 0.0 || (i > 0 && scales[i] <= scales[i - 1])) {
            throw Error("run_limit_sweep: scales must be positive and strictly increasing");
        }
    }

    const int n = prob.state_dim();
    LimitSweep sweep;
    sweep.k = k;
    for (double m : scales) {
        LimitScaleResult res;
        res.scale = m;
        const SymMat M(-m * Eigen::MatrixXd::Identity(n, n));
        const AssumptionReport report = check_assumption(prob, M, k, tol);
        if (!report.feasible) {
            res.skip_reason = report.violation.value_or("assumption check failed");
            sweep.results.push_back(std::move(res));
            continue;
        }
        res.feasible = true;
        const BlockSymMat Lam =
            semigroup_element(SemigroupKind::Lambda, k, prob, M, Strategy::doubling, tol).hessian;
        const BlockSymMat The =
            semigroup_element(SemigroupKind::Theta, k, prob, M, Strategy::doubling, tol).hessian;
        res.distance = rel_dev(Lam, The);
        sweep.results.push_back(std::move(res));
    }
    return sweep;
}

}  // namespace mpdre
