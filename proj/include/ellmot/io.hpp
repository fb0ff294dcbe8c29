#ifndef ELLMOT_IO_HPP
#define ELLMOT_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "ellmot/galois.hpp"
#include "ellmot/verify.hpp"

namespace ellmot::io {

// ---- parsing (throws schema_error carrying the JSON field path) ----

cplx parse_complex(const nlohmann::json& j, const std::string& path);
mpq_class parse_rational(const nlohmann::json& j, const std::string& path);

// {"g2": [re,im], "g3": [re,im]} or {"omega1": [re,im], "omega2": [re,im]},
// exactly one form; optional {"cm": {"discriminant": d, "generator": [re,im]}}.
CurveData parse_curve(const nlohmann::json& j, const std::string& path);

// {"curves": [...], "q_logs": n x s, "p_logs": n x r, "l_logs": n x s x r,
//  "r": int, "s": int}  (r, s required only when n = 0)
OneMotiveSpec parse_motive(const nlohmann::json& j, const std::string& path);

// {"abelian_relations": [{"curve": j1, "coeffs": [c...]}], "pairing_kernel":
//  r x s bools, "pairing_relations": [[rat...]], "psi_relations": [[rat...]]}
// where a coefficient is a rational or a pair [a, b] meaning a + b*gamma, and
// a rational is an integer or a string "n/d".
DependenceProfile parse_profile(const nlohmann::json& j, const OneMotiveSpec& m,
                                const std::string& path);

// ---- deterministic emission: fixed field order, %.17g floats ----

std::string format_double(double x);

std::string period_matrix_json(const PeriodMatrix& m);
std::string period_matrix_csv(const PeriodMatrix& m);
std::string galois_dims_json(const GaloisDims& dims, bool deficient);
std::string galois_dims_csv(const GaloisDims& dims, bool deficient);
std::string case_table_json(const std::vector<CaseTableRow>& rows);
std::string case_table_csv(const std::vector<CaseTableRow>& rows);
std::string conjecture_report_json(const ConjectureReport& report);
std::string conjecture_report_csv(const ConjectureReport& report);
std::string residuals_json(const std::vector<RelationResidual>& residuals);
std::string residuals_csv(const std::vector<RelationResidual>& residuals);
std::string check_results_json(const std::vector<CheckResult>& checks);
std::string check_results_csv(const std::vector<CheckResult>& checks);

} // namespace ellmot::io

#endif
