#include "mpdre/solve.hpp"

#include <algorithm>

#include "mpdre/duality.hpp"
#include "mpdre/io.hpp"
#include "mpdre/riccati.hpp"

namespace mpdre {

bool SolveReport::all_ok() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const SolveEntry& e) { return e.status == "OK"; });
}

namespace {

void append_note(SolveEntry& entry, const std::string& text) {
    if (entry.note) {
        *entry.note += "; " + text;
    } else {
        entry.note = text;
    }
}

}  // namespace

SolveReport solve_batch(const ProblemData& prob, const SymMat& M, int k,
                        const std::vector<SymMat>& p0s, Strategy strategy,
                        const Tolerances& tol) {
    if (k < 1) throw Error("solve_batch: k must be >= 1");
    SolveReport report;
    report.k = k;
    report.match_rtol = tol.match_rtol;

    const BlockSymMat Lam =
        semigroup_element(SemigroupKind::Lambda, k, prob, M, strategy, tol).hessian;
    const BlockSymMat The =
        semigroup_element(SemigroupKind::Theta, k, prob, M, strategy, tol).hessian;

    for (std::size_t i = 0; i < p0s.size(); ++i) {
        SolveEntry entry;
        entry.index = static_cast<int>(i);
        entry.P0 = p0s[i];
        if (entry.P0.dim() != prob.state_dim()) {
            throw InvalidProblem("solve_batch: P0 dimension mismatch at index " +
                                 std::to_string(i));
        }

        const RiccatiPath path = riccati_iterate(entry.P0, k, prob, tol);
        entry.exists = path.exists_at(k);
        if (entry.exists) {
            entry.pk_direct = path.last();
        } else {
            entry.first_failure_step = path.terminated_at;
        }

        bool route_disagreement = false;
        try {
            entry.pk_primal = psi_p(Lam, entry.P0, tol);
            double residual = 0.0;
            (void)invert(entry.P0 + Lam.b22(), tol, &residual);
            entry.existence_pivot_residual = residual;
            if (!entry.exists) {
                route_disagreement = true;
                append_note(entry, "primal map succeeded where the recursion terminated");
            }
        } catch (const ExistenceViolated& e) {
            if (entry.exists) {
                route_disagreement = true;
                append_note(entry, std::string("primal map: ") + e.what());
            }
        }

        if (is_positive_definite(entry.P0 - M, tol)) {
            try {
                const SymMat O0 = upsilon(entry.P0, M, tol);
                const SymMat Ok = psi_d(The, O0, tol);
                entry.pk_dual = upsilon_inv(Ok, M, tol);
                if (!entry.exists) {
                    route_disagreement = true;
                    append_note(entry, "dual pipeline succeeded where the recursion terminated");
                }
            } catch (const ExistenceViolated& e) {
                if (entry.exists) {
                    route_disagreement = true;
                    append_note(entry, std::string("dual pipeline: ") + e.what());
                }
            } catch (const DomainViolation& e) {
                route_disagreement = entry.exists;
                append_note(entry, std::string("dual pipeline: ") + e.what());
            }
        } else {
            append_note(entry, "dual route skipped: P0 - M not positive definite");
        }

        double worst = 0.0;
        if (entry.pk_direct && entry.pk_primal) {
            entry.dev_primal_direct = rel_dev(*entry.pk_primal, *entry.pk_direct);
            worst = std::max(worst, *entry.dev_primal_direct);
        }
        if (entry.pk_direct && entry.pk_dual) {
            entry.dev_dual_direct = rel_dev(*entry.pk_dual, *entry.pk_direct);
            worst = std::max(worst, *entry.dev_dual_direct);
        }
        if (entry.pk_primal && entry.pk_dual) {
            entry.dev_primal_dual = rel_dev(*entry.pk_primal, *entry.pk_dual);
            worst = std::max(worst, *entry.dev_primal_dual);
        }

        if (route_disagreement || (entry.exists && worst > tol.match_rtol)) {
            entry.status = "FAILED";
        } else if (!entry.exists) {
            entry.status = "NO_SOLUTION";
        } else {
            entry.status = "OK";
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

namespace {

std::string optional_matrix_json(const std::optional<SymMat>& m) {
    return m ? matrix_json(m->mat()) : std::string("null");
}

std::string optional_double_json(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("null");
}

}  // namespace

std::string solve_report_json(const SolveReport& report) {
    std::string out = "{\"k\":" + std::to_string(report.k);
    out += ",\"match_rtol\":" + format_double(report.match_rtol);
    out += ",\"all_ok\":" + std::string(report.all_ok() ? "true" : "false");
    out += ",\"results\":[";
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        const SolveEntry& e = report.entries[i];
        out += (i == 0) ? "\n  {" : ",\n  {";
        out += "\"index\":" + std::to_string(e.index);
        out += ",\"p0\":" + matrix_json(e.P0.mat());
        out += ",\"exists\":" + std::string(e.exists ? "true" : "false");
        out += ",\"first_failure_step\":" +
               (e.first_failure_step ? std::to_string(*e.first_failure_step)
                                     : std::string("null"));
        out += ",\"pk_direct\":" + optional_matrix_json(e.pk_direct);
        out += ",\"pk_primal\":" + optional_matrix_json(e.pk_primal);
        out += ",\"pk_dual\":" + optional_matrix_json(e.pk_dual);
        out += ",\"dev_primal_direct\":" + optional_double_json(e.dev_primal_direct);
        out += ",\"dev_dual_direct\":" + optional_double_json(e.dev_dual_direct);
        out += ",\"dev_primal_dual\":" + optional_double_json(e.dev_primal_dual);
        out += ",\"existence_pivot_residual\":" + optional_double_json(e.existence_pivot_residual);
        out += ",\"status\":\"" + e.status + "\"";
        out += ",\"note\":" + (e.note ? "\"" + *e.note + "\"" : std::string("null"));
        out += "}";
    }
    out += "\n]}\n";
    return out;
}

}  // namespace mpdre
