#include "mpdre/io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mpdre {

namespace {

using nlohmann::json;

Eigen::MatrixXd parse_matrix(const json& j, const std::string& key) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("problem document: \"" + key + "\" must be a non-empty array of rows");
    }
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    Eigen::MatrixXd m;
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.empty()) {
            throw ParseError("problem document: \"" + key + "\" row " + std::to_string(r) +
                             " is not a non-empty array");
        }
        if (r == 0) {
            cols = row.size();
            m.resize(rows, cols);
        } else if (row.size() != cols) {
            throw ParseError("problem document: \"" + key + "\" has ragged rows");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row[c].is_number()) {
                throw ParseError("problem document: \"" + key + "\" contains a non-number");
            }
            m(r, c) = row[c].get<double>();
        }
    }
    return m;
}

}  // namespace

LoadedProblem load_problem(const std::string& json_text, const Tolerances& tol) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("problem document: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("problem document: top level must be an object");
    }
    static const std::array<const char*, 6> allowed = {"A", "B", "Phi", "gamma", "M", "horizon"};
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ParseError("problem document: unknown key \"" + key + "\"");
    }
    for (const char* key : {"A", "B", "Phi", "gamma", "M"}) {
        if (!doc.contains(key)) {
            throw ParseError("problem document: missing key \"" + std::string(key) + "\"");
        }
    }
    if (!doc["gamma"].is_number()) {
        throw ParseError("problem document: \"gamma\" must be a number");
    }

    const Eigen::MatrixXd A = parse_matrix(doc["A"], "A");
    const Eigen::MatrixXd B = parse_matrix(doc["B"], "B");
    const Eigen::MatrixXd Phi_raw = parse_matrix(doc["Phi"], "Phi");
    const Eigen::MatrixXd M_raw = parse_matrix(doc["M"], "M");
    if (Phi_raw.rows() != Phi_raw.cols() || M_raw.rows() != M_raw.cols()) {
        throw ParseError("problem document: \"Phi\" and \"M\" must be square");
    }

    int horizon = kDefaultHorizon;
    if (doc.contains("horizon")) {
        if (!doc["horizon"].is_number_integer()) {
            throw ParseError("problem document: \"horizon\" must be an integer");
        }
        horizon = doc["horizon"].get<int>();
        if (horizon < 1) throw InvalidProblem("problem document: horizon must be >= 1");
    }

    LoadedProblem loaded{make_problem(A, B, symmetrize(Phi_raw), doc["gamma"].get<double>(), tol),
                         DualityConfig{symmetrize(M_raw), horizon, std::nullopt}};
    if (loaded.duality.M.dim() != loaded.problem.state_dim()) {
        throw InvalidProblem("problem document: M dimension mismatch");
    }
    return loaded;
}

LoadedProblem load_problem_file(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_problem(buf.str(), tol);
}

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string matrix_json(const Eigen::MatrixXd& m) {
    std::string out = "[";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out += (r == 0) ? "[" : ",[";
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out += ",";
            out += format_double(m(r, c));
        }
        out += "]";
    }
    out += "]";
    return out;
}

std::string semigroup_element_json(const SemigroupElement& elem) {
    std::string out = "{\"kind\":\"";
    out += to_string(elem.kind);
    out += "\",\"k\":" + std::to_string(elem.k);
    out += ",\"n\":" + std::to_string(elem.hessian.block_dim());
    out += ",\"b11\":" + matrix_json(elem.hessian.b11().mat());
    out += ",\"b12\":" + matrix_json(elem.hessian.b12());
    out += ",\"b22\":" + matrix_json(elem.hessian.b22().mat());
    out += "}";
    return out;
}

std::string semigroup_export_json(const std::vector<SemigroupElement>& elems) {
    std::string out = "[";
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i > 0) out += ",";
        out += "\n  " + semigroup_element_json(elems[i]);
    }
    out += "\n]\n";
    return out;
}

std::string check_report_json(const AssumptionReport& report, int horizon_checked) {
    std::string out = "{";
    out += "\"feasible\":" + std::string(report.feasible ? "true" : "false");
    out += ",\"extrapolated\":" +
           std::string(report.feasible && report.fixed_point_reached ? "true" : "false");
    out += ",\"horizon_checked\":" + std::to_string(horizon_checked);
    out += ",\"violation\":";
    if (report.violation) {
        out += "\"" + *report.violation + "\"";
    } else {
        out += "null";
    }
    out += ",\"ineq_M_margin\":" + format_double(report.ineq_M_margin);
    out += ",\"ineq_M3_margin\":" + format_double(report.ineq_M3_margin);
    out += ",\"pivot_inversion_residual\":" + format_double(report.pivot_inversion_residual);
    out += ",\"ineq_M2_margins\":[";
    for (std::size_t i = 0; i < report.ineq_M2_margins.size(); ++i) {
        if (i > 0) out += ",";
        out += format_double(report.ineq_M2_margins[i]);
    }
    out += "]}\n";
    return out;
}

std::string limit_sweep_csv(const LimitSweep& sweep) {
    std::string out = "m,d,feasible\n";
    for (const auto& r : sweep.results) {
        out += format_double(r.scale);
        out += ",";
        out += r.distance ? format_double(*r.distance) : "nan";
        out += ",";
        out += r.feasible ? "1" : "0";
        out += "\n";
    }
    return out;
}

std::string kernel_csv(const std::vector<std::array<double, 3>>& rows) {
    std::string out = "x,y,Sk\n";
    for (const auto& row : rows) {
        out += format_double(row[0]);
        out += ",";
        out += format_double(row[1]);
        out += ",";
        out += format_double(row[2]);
        out += "\n";
    }
    return out;
}

namespace {

std::vector<double> split_numbers(const std::string& text, char sep, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError(what + ": cannot parse number \"" + tok + "\"");
        }
    }
    return out;
}

}  // namespace

std::vector<SymMat> parse_p0_spec(const std::string& spec, int n) {
    if (spec.empty()) throw ParseError("p0 spec: empty");
    if (spec.find(':') != std::string::npos) {
        if (n != 1) throw ParseError("p0 spec: start:stop:step sweeps require n = 1");
        const std::vector<double> parts = split_numbers(spec, ':', "p0 spec");
        if (parts.size() != 3) throw ParseError("p0 spec: expected start:stop:step");
        const double start = parts[0], stop = parts[1], step = parts[2];
        if (step <= 0.0 || stop < start) {
            throw ParseError("p0 spec: need step > 0 and stop >= start");
        }
        std::vector<SymMat> out;
        const double span = stop - start;
        const int count = static_cast<int>(span / step + 1e-9) + 1;
        for (int i = 0; i < count; ++i) {
            Eigen::MatrixXd p(1, 1);
            p(0, 0) = start + i * step;
            out.emplace_back(p);
        }
        return out;
    }
    if (spec.find('[') != std::string::npos) {
        json doc;
        try {
            doc = json::parse(spec);
        } catch (const json::exception& e) {
            throw ParseError(std::string("p0 spec: invalid JSON: ") + e.what());
        }
        if (!doc.is_array() || doc.empty()) {
            throw ParseError("p0 spec: expected a non-empty JSON array");
        }
        std::vector<SymMat> out;
        for (const json& item : doc) {
            if (item.is_number()) {
                if (n != 1) throw ParseError("p0 spec: scalar entries require n = 1");
                Eigen::MatrixXd p(1, 1);
                p(0, 0) = item.get<double>();
                out.emplace_back(p);
            } else {
                Eigen::MatrixXd p = parse_matrix(item, "p0");
                if (p.rows() != n || p.cols() != n) {
                    throw ParseError("p0 spec: matrix entry has wrong dimension");
                }
                out.push_back(symmetrize(p));
            }
        }
        return out;
    }
    double value = 0.0;
    try {
        std::size_t pos = 0;
        value = std::stod(spec, &pos);
        if (pos != spec.size()) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
        throw ParseError("p0 spec: cannot parse \"" + spec + "\"");
    }
    return {SymMat(value * Eigen::MatrixXd::Identity(n, n))};
}

AxisSpec parse_axis_spec(const std::string& spec) {
    const std::vector<double> parts = split_numbers(spec, ':', "grid spec");
    if (parts.size() != 3) throw ParseError("grid spec: expected lo:hi:count");
    AxisSpec axis{parts[0], parts[1], static_cast<int>(parts[2])};
    if (axis.count < 2 || axis.hi <= axis.lo ||
        static_cast<double>(axis.count) != parts[2]) {
        throw ParseError("grid spec: need hi > lo and an integer count >= 2");
    }
    return axis;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> parse_ray_spec(const std::string& spec, int n) {
    const auto semi = spec.find(';');
    if (semi == std::string::npos) {
        throw ParseError("ray spec: expected \"u1,..,un;v1,..,vn\"");
    }
    const std::vector<double> u = split_numbers(spec.substr(0, semi), ',', "ray spec");
    const std::vector<double> v = split_numbers(spec.substr(semi + 1), ',', "ray spec");
    if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n) {
        throw ParseError("ray spec: directions must have length n");
    }
    Eigen::VectorXd uu(n), vv(n);
    for (int i = 0; i < n; ++i) {
        uu[i] = u[i];
        vv[i] = v[i];
    }
    if (uu.norm() == 0.0 || vv.norm() == 0.0) {
        throw ParseError("ray spec: directions must be nonzero");
    }
    return {uu, vv};
}

}  // namespace mpdre
