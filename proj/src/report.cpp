#include "radon/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "radon/errors.hpp"

namespace radon {

namespace {

using nlohmann::ordered_json;

void require_finite_tree(const ordered_json& j, const char* what) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw ArgumentError(std::string("report ") + what +
                        " must contain only finite numbers");
  if (j.is_object() || j.is_array())
    for (const auto& item : j) require_finite_tree(item, what);
}

double finite_field(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ArgumentError(std::string("report JSON missing numeric field '") +
                        key + "'");
  double v = j.at(key).get<double>();
  if (!std::isfinite(v))
    throw ArgumentError(std::string("report field '") + key +
                        "' must be finite");
  return v;
}

}  // namespace

bool report_all_pass(const RatioReport& report) {
  if (report.pass.empty()) return false;
  for (const auto& [name, ok] : report.pass)
    if (!ok) return false;
  return true;
}

ordered_json report_to_json(const RatioReport& report) {
  if (!std::isfinite(report.sup_ratio))
    throw ArgumentError("report sup_ratio must be finite");
  require_finite_tree(report.parameters, "parameters");
  require_finite_tree(report.samples, "samples");

  ordered_json j;
  j["scenario"] = report.scenario;
  j["seed"] = report.seed;
  j["deterministic"] = report.deterministic;
  j["parameters"] = report.parameters;
  j["sup_ratio"] = report.sup_ratio;
  ordered_json buckets = ordered_json::array();
  for (const BucketStat& b : report.buckets) {
    if (!std::isfinite(b.size) || !std::isfinite(b.max_ratio))
      throw ArgumentError("report buckets must be finite");
    ordered_json row;
    row["size"] = b.size;
    row["max_ratio"] = b.max_ratio;
    buckets.push_back(std::move(row));
  }
  j["buckets"] = std::move(buckets);
  ordered_json trend;
  if (!std::isfinite(report.trend.slope) ||
      !std::isfinite(report.trend.stderr_slope))
    throw ArgumentError("report trend must be finite");
  trend["slope"] = report.trend.slope;
  trend["stderr"] = report.trend.stderr_slope;
  j["trend"] = std::move(trend);
  ordered_json pass;  // std::map iteration: keys already sorted
  for (const auto& [name, ok] : report.pass) pass[name] = ok;
  j["pass"] = std::move(pass);
  j["accuracy_errors"] = report.accuracy_errors;
  j["samples"] = report.samples;
  if (!report.deterministic) {
    if (!std::isfinite(report.wall_time_seconds))
      throw ArgumentError("report wall time must be finite");
    j["wall_time_seconds"] = report.wall_time_seconds;
  }
  return j;
}

RatioReport report_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ArgumentError("report JSON must be an object");
  RatioReport report;
  if (!j.contains("scenario") || !j.at("scenario").is_string())
    throw ArgumentError("report JSON missing string field 'scenario'");
  report.scenario = j.at("scenario").get<std::string>();
  if (!j.contains("seed") || !j.at("seed").is_number_unsigned())
    throw ArgumentError("report JSON missing unsigned field 'seed'");
  report.seed = j.at("seed").get<std::uint64_t>();
  if (!j.contains("deterministic") || !j.at("deterministic").is_boolean())
    throw ArgumentError("report JSON missing boolean field 'deterministic'");
  report.deterministic = j.at("deterministic").get<bool>();
  if (!j.contains("parameters") || !j.at("parameters").is_object())
    throw ArgumentError("report JSON missing object field 'parameters'");
  report.parameters = j.at("parameters");
  report.sup_ratio = finite_field(j, "sup_ratio");
  if (!j.contains("buckets") || !j.at("buckets").is_array())
    throw ArgumentError("report JSON missing array field 'buckets'");
  for (const auto& row : j.at("buckets")) {
    BucketStat b;
    b.size = finite_field(row, "size");
    b.max_ratio = finite_field(row, "max_ratio");
    report.buckets.push_back(b);
  }
  if (!j.contains("trend") || !j.at("trend").is_object())
    throw ArgumentError("report JSON missing object field 'trend'");
  report.trend.slope = finite_field(j.at("trend"), "slope");
  report.trend.stderr_slope = finite_field(j.at("trend"), "stderr");
  if (!j.contains("pass") || !j.at("pass").is_object())
    throw ArgumentError("report JSON missing object field 'pass'");
  for (const auto& [name, val] : j.at("pass").items()) {
    if (!val.is_boolean())
      throw ArgumentError("report pass entries must be booleans");
    report.pass[name] = val.get<bool>();
  }
  if (!j.contains("accuracy_errors") ||
      !j.at("accuracy_errors").is_number_integer())
    throw ArgumentError("report JSON missing integer field 'accuracy_errors'");
  report.accuracy_errors = j.at("accuracy_errors").get<int>();
  if (!j.contains("samples") || !j.at("samples").is_array())
    throw ArgumentError("report JSON missing array field 'samples'");
  report.samples = j.at("samples");
  if (!report.deterministic)
    report.wall_time_seconds = finite_field(j, "wall_time_seconds");
  return report;
}

std::string render_report(const RatioReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

void emit_report(const RatioReport& report, const std::string& path) {
  const std::string text = render_report(report);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open report file for writing: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing report file: " + path);
}

void emit_curve_csv(const TransformCurve& curve, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open curve file for writing: " + path);
  out << "s,value,err_est\n";
  char buf[128];
  for (const CurveSample& c : curve.samples()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", c.s, c.value,
                  c.err_est);
    out << buf;
  }
  out.flush();
  if (!out) throw IoError("failed writing curve file: " + path);
}

RatioReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open report file for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ordered_json j;
  try {
    j = ordered_json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("cannot parse report file " + path + ": " + e.what());
  }
  return report_from_json(j);
}

}  // namespace radon
