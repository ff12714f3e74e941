#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "radon/errors.hpp"

// Sampled Abel transform output: ordered (s, value, err_est) triples plus a
// geometry tag. Values are nonnegative; +infinity marks grid points whose
// integral was flagged divergent.

namespace radon {

struct CurveSample {
  double s;
  double value;
  double err_est;
};

class TransformCurve {
 public:
  TransformCurve(std::string geometry, std::vector<CurveSample> samples)
      : geometry_(std::move(geometry)), samples_(std::move(samples)) {
    if (samples_.empty())
      throw ArgumentError("TransformCurve: need at least one sample");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const CurveSample& c = samples_[i];
      if (std::isnan(c.s) || std::isinf(c.s) || c.s < 0.0)
        throw ArgumentError("TransformCurve: abscissae must be finite, >= 0");
      if (i > 0 && !(c.s > samples_[i - 1].s))
        throw ArgumentError("TransformCurve: abscissae must strictly increase");
      if (std::isnan(c.value) || c.value < 0.0)
        throw ArgumentError("TransformCurve: values must be >= 0 (or +inf)");
      if (std::isnan(c.err_est) || c.err_est < 0.0)
        throw ArgumentError("TransformCurve: err_est must be >= 0");
    }
  }

  const std::string& geometry() const { return geometry_; }
  const std::vector<CurveSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

  bool all_finite() const {
    for (const CurveSample& c : samples_)
      if (std::isinf(c.value)) return false;
    return true;
  }

  double max_value() const {
    double m = 0.0;
    for (const CurveSample& c : samples_) m = std::max(m, c.value);
    return m;
  }

 private:
  std::string geometry_;
  std::vector<CurveSample> samples_;
};

}  // namespace radon
