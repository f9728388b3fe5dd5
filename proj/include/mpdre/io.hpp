#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "mpdre/limit_sweep.hpp"
#include "mpdre/problem.hpp"
#include "mpdre/semigroup.hpp"

namespace mpdre {

inline constexpr int kDefaultHorizon = 64;

// A problem document bundled with its duality basis.
struct LoadedProblem {
    ProblemData problem;
    DualityConfig duality;
};

// Parses a problem document. Shape and type violations (including unknown
// keys) raise ParseError; semantic violations raise InvalidProblem.
// Document keys: "A", "B", "Phi", "gamma", "M", optional "horizon".
LoadedProblem load_problem(const std::string& json_text, const Tolerances& tol = {});
LoadedProblem load_problem_file(const std::string& path, const Tolerances& tol = {});

// All emitted documents format floats with 17 significant digits and fixed
// field order so identical inputs produce byte-identical output.
std::string format_double(double v);
std::string matrix_json(const Eigen::MatrixXd& m);

std::string semigroup_element_json(const SemigroupElement& elem);
std::string semigroup_export_json(const std::vector<SemigroupElement>& elems);

std::string check_report_json(const AssumptionReport& report, int horizon_checked);

std::string limit_sweep_csv(const LimitSweep& sweep);

// Kernel samples as CSV rows (x, y, value) under a header line.
std::string kernel_csv(const std::vector<std::array<double, 3>>& rows);

// Initial-condition spec: a bare number c (meaning c * I), a JSON array of
// n x n matrices, a JSON array of scalars (n = 1), or "start:stop:step"
// (n = 1 sweep).
std::vector<SymMat> parse_p0_spec(const std::string& spec, int n);

// "lo:hi:count" axis spec for kernel sampling.
struct AxisSpec {
    double lo;
    double hi;
    int count;
};
AxisSpec parse_axis_spec(const std::string& spec);

// "u1,...,un;v1,...,vn" direction pair for kernel slices when n > 1.
std::pair<Eigen::VectorXd, Eigen::VectorXd> parse_ray_spec(const std::string& spec, int n);

}  // namespace mpdre
