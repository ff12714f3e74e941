#pragma once

#include <vector>

#include "radon/profiles.hpp"

// Property-check oracles for the two elementary inequalities behind the
// endpoint bounds: the alternating-power comparison
//
//   (x1 - x2 + x3 - ...)^gamma <= x1^gamma - x2^gamma + x3^gamma - ...
//
// for decreasing nonnegative x and gamma >= 1, and the exponential-weight
// comparison for indicators phi of finite interval unions,
//
//   int phi(t) e^{delta t} dt <= C (int phi(t) e^{p delta t} dt)^{1/p},
//
// whose power-weight form (t = log s) reads
// int phi s^{delta-1} ds <= C (int phi s^{p delta - 1} ds)^{1/p}.  Both are
// evaluated in exact antiderivative closed form; the checks report the two
// sides so families of inputs can bound the constant empirically.

namespace radon {

struct AlternatingCheck {
  double lhs;
  double rhs;
  bool holds;  // lhs <= rhs + 1e-12 * max(1, rhs)
};

// x must be nonincreasing and nonnegative, gamma >= 1.
AlternatingCheck alternating_power_check(const std::vector<double>& x,
                                         double gamma);

struct WeightCheck {
  double lhs;
  double rhs;     // already raised to the 1/p
  double ratio;   // lhs / rhs; meaningful only when defined
  bool defined;   // rhs > 0
};

// lhs = sum_i (e^{delta b_i} - e^{delta a_i})/delta over the indicator's
// intervals; rhs = (same with p*delta)^{1/p}.  Needs an indicator profile,
// delta != 0, p > 1.
WeightCheck exponential_weight_check(const StepProfile& profile, double delta,
                                     double p);

// lhs = sum_i (b_i^delta - a_i^delta)/delta; rhs = (same with p*delta)^{1/p}.
// Needs an indicator profile, delta != 0, p > 1; negative delta additionally
// needs the support bounded away from 0.
WeightCheck power_weight_check(const StepProfile& profile, double delta,
                               double p);

}  // namespace radon
