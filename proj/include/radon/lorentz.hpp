#pragma once

#include <optional>

#include "radon/profiles.hpp"

// L^{p,q} machinery for radial step functions: distribution functions,
// decreasing rearrangements and Lorentz norms, exact on steps.
//
// For a step function f = sum_i h_i chi_{[a_i,b_i)} under a radial measure
// mu with density w(t) dt:
//
//   d_f(lambda)    = mu{t : f(t) > lambda}
//   f*(t)          = inf{lambda : d_f(lambda) <= t}
//   ||f||_{p,q}    = ((q/p) int_0^inf (t^{1/p} f*(t))^q dt/t)^{1/q},  q < inf
//   ||f||_{p,inf}  = sup_{lambda>0} lambda d_f(lambda)^{1/p}
//
// This normalization gives ||chi_E||_{p,q} = mu(E)^{1/p} for every q, and
// ||f||_{p,p} equals the plain L^p norm. For q < inf the definition above
// and the equivalent distribution-function expression
//
//   (q int_0^inf lambda^{q-1} d_f(lambda)^{q/p} dlambda)^{1/q}
//
// are both evaluated in closed form on the rearranged steps. The two closed
// forms group the same terms differently (Abel summation), so their
// agreement is a meaningful floating-point cross-check, not a tautology.

namespace radon {

struct LorentzIndex {
  double p;  // [1, inf)
  double q;  // [1, inf]; +inf selects the weak norm

  LorentzIndex(double p_in, double q_in);
  bool weak() const;
};

// mu{t : profile(t) > level}; exact sum of single-interval measures over the
// intervals with height above the level. Nonincreasing and right-continuous
// in the level.
double distribution_function(const StepProfile& profile,
                             const RadialMeasure& measure, double level);

// The nonincreasing rearrangement f* as a step profile on (0, infinity)
// carrying Lebesgue measure: heights sorted decreasing (equal heights
// merged), interval lengths equal to the level-set measures.
StepProfile decreasing_rearrangement(const StepProfile& profile,
                                     const RadialMeasure& measure);

// ||f||_{p,q} via the rearrangement route, exact on steps.
double lorentz_norm(const StepProfile& profile, const RadialMeasure& measure,
                    const LorentzIndex& index);

// ||f||_{p,q} via the distribution-function route (the alternative
// expression above); equal to lorentz_norm up to floating-point grouping.
double lorentz_norm_via_distribution(const StepProfile& profile,
                                     const RadialMeasure& measure,
                                     const LorentzIndex& index);

// Midpoint quantization of an evaluable profile onto a uniform grid over
// [0, support_upper], for feeding general profiles through the exact step
// norm path. Adjacent equal heights are merged. Returns nothing when the
// profile vanishes at every midpoint (its norm is 0 for any index).
// Requires finite support_upper and grid_points >= 2.
std::optional<StepProfile> quantize_profile(const RadialProfile& profile,
                                            int grid_points);

}  // namespace radon
