#pragma once

#include <string>

#include "json.hpp"
#include "qns/mean_value.hpp"
#include "qns/scalar_field.hpp"

namespace qns {

/// Shortest round-trippable decimal form (17 significant digits), '.' decimal
/// point, no locale. Non-finite values print as inf/-inf/nan.
std::string fmt17(double v);

/// JSON value for a double; non-finite values are emitted as strings since
/// JSON has no representation for them.
nlohmann::json json_number(double v);

/// CSV columns: x0..x{n-1}, r, lhs, rhs, ratio, pass  (plus m when any row
/// carries a truncation level).
void write_violation_csv(const std::string& path, const ViolationReport& report, int dim);
void write_violation_jsonl(const std::string& path, const ViolationReport& report, int dim);

nlohmann::json violation_summary_json(const ViolationReport& report);

/// Grid CSV: x0..x{n-1}, value.
void write_grid_csv(const std::string& path, const ScalarField& field);

}  // namespace qns
