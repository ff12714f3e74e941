#include "radon/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "radon/errors.hpp"
#include "radon/math_util.hpp"

namespace radon {

AlternatingCheck alternating_power_check(const std::vector<double>& x,
                                         double gamma) {
  if (x.empty()) throw ArgumentError("alternating check needs a nonempty tuple");
  if (!(gamma >= 1.0) || !std::isfinite(gamma))
    throw ArgumentError("alternating check needs gamma >= 1");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || x[i] < 0.0)
      throw ArgumentError("alternating check needs finite nonnegative entries");
    if (i > 0 && x[i] > x[i - 1])
      throw ArgumentError("alternating check needs a nonincreasing tuple");
  }

  NeumaierSum base;
  NeumaierSum powered;
  double sign = 1.0;
  for (double v : x) {
    base.add(sign * v);
    powered.add(sign * std::pow(v, gamma));
    sign = -sign;
  }
  // The alternating sum of a decreasing nonnegative tuple is nonnegative;
  // clamp away any rounding residue before exponentiating.
  const double s = std::max(base.value(), 0.0);
  AlternatingCheck out;
  out.lhs = std::pow(s, gamma);
  out.rhs = powered.value();
  out.holds = out.lhs <= out.rhs + 1e-12 * std::max(1.0, out.rhs);
  return out;
}

namespace {

void require_weight_inputs(const StepProfile& profile, double delta, double p) {
  if (!profile.is_indicator())
    throw ArgumentError("weight checks need an indicator profile");
  if (delta == 0.0 || !std::isfinite(delta))
    throw ArgumentError("weight checks need a finite nonzero delta");
  if (!(p > 1.0) || !std::isfinite(p))
    throw ArgumentError("weight checks need a finite p > 1");
}

// sum over intervals of (e^{c b} - e^{c a})/c, written via expm1 for accuracy.
double exponential_sum(const StepProfile& profile, double c) {
  NeumaierSum total;
  for (const Interval& iv : profile.intervals()) {
    total.add(std::exp(c * iv.lower) * std::expm1(c * (iv.upper - iv.lower)) /
              c);
  }
  return total.value();
}

// sum over intervals of (b^c - a^c)/c.
double power_sum(const StepProfile& profile, double c) {
  NeumaierSum total;
  for (const Interval& iv : profile.intervals()) {
    total.add((std::pow(iv.upper, c) - std::pow(iv.lower, c)) / c);
  }
  return total.value();
}

}  // namespace

WeightCheck exponential_weight_check(const StepProfile& profile, double delta,
                                     double p) {
  require_weight_inputs(profile, delta, p);
  WeightCheck out;
  out.lhs = exponential_sum(profile, delta);
  const double inner = exponential_sum(profile, p * delta);
  out.rhs = inner > 0.0 ? std::pow(inner, 1.0 / p) : 0.0;
  out.defined = out.rhs > 0.0;
  out.ratio = out.defined ? out.lhs / out.rhs : 0.0;
  return out;
}

WeightCheck power_weight_check(const StepProfile& profile, double delta,
                               double p) {
  require_weight_inputs(profile, delta, p);
  if (delta < 0.0 && profile.support_lower() <= 0.0)
    throw ArgumentError(
        "negative-exponent power weights need support bounded away from 0");
  WeightCheck out;
  out.lhs = power_sum(profile, delta);
  const double inner = power_sum(profile, p * delta);
  out.rhs = inner > 0.0 ? std::pow(inner, 1.0 / p) : 0.0;
  out.defined = out.rhs > 0.0;
  out.ratio = out.defined ? out.lhs / out.rhs : 0.0;
  return out;
}

}  // namespace radon
