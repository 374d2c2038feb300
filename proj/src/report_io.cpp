#include "qns/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qns {

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return fmt17(v);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

bool any_truncation(const ViolationReport& report) {
  for (const auto& row : report.rows)
    if (!std::isnan(row.m)) return true;
  return false;
}

}  // namespace

void write_violation_csv(const std::string& path, const ViolationReport& report, int dim) {
  std::ofstream out = open_out(path);
  const bool with_m = any_truncation(report);
  for (int d = 0; d < dim; ++d) out << "x" << d << ",";
  out << "r,lhs,rhs,ratio,pass";
  if (with_m) out << ",m";
  out << "\n";
  for (const auto& row : report.rows) {
    for (int d = 0; d < dim; ++d) out << fmt17(row.x[d]) << ",";
    out << fmt17(row.r) << "," << fmt17(row.lhs) << "," << fmt17(row.rhs) << ","
        << fmt17(row.ratio) << "," << (row.pass ? 1 : 0);
    if (with_m) out << "," << fmt17(row.m);
    out << "\n";
  }
}

void write_violation_jsonl(const std::string& path, const ViolationReport& report, int dim) {
  std::ofstream out = open_out(path);
  for (const auto& row : report.rows) {
    nlohmann::json j;
    nlohmann::json x = nlohmann::json::array();
    for (int d = 0; d < dim; ++d) x.push_back(row.x[d]);
    j["x"] = x;
    j["r"] = row.r;
    j["lhs"] = json_number(row.lhs);
    j["rhs"] = json_number(row.rhs);
    j["ratio"] = json_number(row.ratio);
    j["pass"] = row.pass;
    if (row.touched_floor) j["touched_floor"] = true;
    if (!std::isnan(row.m)) j["m"] = row.m;
    out << j.dump() << "\n";
  }
}

nlohmann::json violation_summary_json(const ViolationReport& report) {
  nlohmann::json j;
  j["samples"] = report.rows.size();
  j["violations"] = report.violations;
  j["tol"] = report.tol;
  j["worst_margin"] = json_number(report.worst_margin);
  j["fitted_k"] = json_number(report.fitted_k);
  j["floor_touched"] = report.floor_touched_count;
  j["pass"] = report.pass();
  return j;
}

void write_grid_csv(const std::string& path, const ScalarField& field) {
  std::ofstream out = open_out(path);
  const int n = field.domain().dim();
  for (int d = 0; d < n; ++d) out << "x" << d << ",";
  out << "value\n";
  for (std::size_t i = 0; i < field.values().size(); ++i) {
    const Point x = field.domain().node(i);
    for (int d = 0; d < n; ++d) out << fmt17(x[d]) << ",";
    out << fmt17(field[i]) << "\n";
  }
}

}  // namespace qns
