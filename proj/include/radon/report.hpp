#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "radon/curve.hpp"
#include "radon/math_util.hpp"

// Machine-readable verification artifacts.  A RatioReport records one
// scenario run: the configuration that produced it (so the run can be
// repeated from the report alone), every per-sample ratio, the family
// statistics (sup, per-bucket maxima, log-log trend slope), and the pass
// booleans with their tolerances baked into the scenario.
//
// Serialization contract: reports contain only finite numbers (scenarios
// convert failed samples into flagged records instead of infinities), key
// order is fixed, and doubles round-trip exactly through the shortest
// decimal representation — so a report is byte-stable for fixed inputs and
// parses back to an equal report.

namespace radon {

struct TrendStats {
  double slope = 0.0;
  double stderr_slope = 0.0;
};

struct BucketStat {
  double size = 0.0;       // bucket label (annulus count l, cap index, ...)
  double max_ratio = 0.0;  // max primary statistic over the bucket
};

struct RatioReport {
  std::string scenario;
  std::uint64_t seed = 0;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  double sup_ratio = 0.0;
  std::vector<BucketStat> buckets;
  TrendStats trend;
  std::map<std::string, bool> pass;
  int accuracy_errors = 0;
  bool deterministic = false;
  // Excluded from serialization when deterministic (reports must be
  // byte-identical across reruns and thread counts).
  double wall_time_seconds = 0.0;
};

bool report_all_pass(const RatioReport& report);

nlohmann::ordered_json report_to_json(const RatioReport& report);
RatioReport report_from_json(const nlohmann::ordered_json& j);

// The exact bytes emit_report writes (JSON, two-space indent, trailing
// newline).
std::string render_report(const RatioReport& report);

// Writes render_report(report) to path; IoError names the path on failure.
void emit_report(const RatioReport& report, const std::string& path);

// CSV dump: header "s,value,err_est", one row per sample, 17 significant
// digits.  IoError names the path on failure.
void emit_curve_csv(const TransformCurve& curve, const std::string& path);

// Parses a report back from a file written by emit_report.
RatioReport read_report(const std::string& path);

}  // namespace radon
