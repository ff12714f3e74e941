#pragma once

#include <string>
#include <vector>

#include "radon/curve.hpp"
#include "radon/lorentz.hpp"
#include "radon/profiles.hpp"

// The d-plane Abel transform of radial functions on the affine Grassmannian
// G(n,k); k = 0 is the Euclidean d-plane transform of radial functions on
// R^n. For a radial profile f(|tau|) the transform depends only on the
// distance s of the output plane from the origin and reduces to
//
//   A f(s) = |S^{m-1}| int_s^inf f(t) (t^2 - s^2)^{m/2 - 1} t dt,  m = d - k,
//
// which the substitution r = sqrt(t^2 - s^2) turns into the plain polar
// integral int_{R^m} f(sqrt(|r|^2 + s^2)) dr. The normalization makes A of
// an indicator the literal Lebesgue measure of the plane's slice through the
// annuli, so ball-volume sanity checks come out exact.
//
// Radial measures: the domain G(n,k) carries density |S^{n-k-1}| r^{n-k-1},
// the target G(n,d) carries |S^{n-d-1}| s^{n-d-1} (probability measure on
// the plane directions, Lebesgue in the offset).

namespace radon {

struct GrassmannGeometry {
  int n, d, k;

  GrassmannGeometry(int n_in, int d_in, int k_in);

  int radial_power() const { return d - k; }              // m above
  double critical_p() const;                              // (n-k)/(d-k)
  double normalization() const;                           // |S^{d-k-1}|
  std::string tag() const;
};

RadialMeasure grassmann_domain_measure(const GrassmannGeometry& geom);
RadialMeasure grassmann_target_measure(const GrassmannGeometry& geom);

// Quadrature evaluation over a strictly increasing s-grid, integrating in
// the substituted variable r (smooth integrand, split at profile
// breakpoints). Grid points whose integral diverges are flagged +inf.
TransformCurve abel_numeric(const GrassmannGeometry& geom,
                            const StepProfile& profile,
                            const std::vector<double>& s_grid);
TransformCurve abel_numeric(const GrassmannGeometry& geom,
                            const RadialProfile& profile,
                            const std::vector<double>& s_grid);

// Exact piecewise closed form on step profiles:
//   A chi(s) = sum_i h_i vol_m [ (b_i^2-s^2)_+^{m/2} - (a_i^2-s^2)_+^{m/2} ]
// with vol_m the unit m-ball volume |S^{m-1}|/m.
double abel_step_closed(const GrassmannGeometry& geom,
                        const StepProfile& profile, double s);

// Lorentz norm of the profile under the G(n,k) radial density.
double domain_lorentz_norm(const GrassmannGeometry& geom,
                           const StepProfile& profile,
                           const LorentzIndex& index);

// ||chi_{E cap {t > s}}||_{(n-k)/(d-k),1}: the critical norm of the profile
// truncated below s; exact closed form (power-density suffix sums).
double truncated_critical_norm(const GrassmannGeometry& geom,
                               const StepProfile& profile, double s);

// Endpoint ratios over an adaptive s-sweep (uniform grid plus clusters at
// the profile breakpoints), for indicator profiles:
//   sharp: sup_s A(s) / ||chi_{E cap {t>s}}||_{crit,1}   (truncated norm)
//   plain: sup_s A(s) / ||chi_E||_{crit,1}               (fixed norm)
struct EndpointRatio {
  double sharp_ratio;
  double sharp_arg_s;
  double plain_ratio;
  double plain_arg_s;
};
EndpointRatio endpoint_ratio(const GrassmannGeometry& geom,
                             const StepProfile& profile);

// q solving (n-k)/p = (d-k) + (n-d)/q for 1 <= p < (n-k)/(d-k).
double lp_lq_exponent(const GrassmannGeometry& geom, double p);

// ||A f||_{L^q(target)} / ||f||_{L^p(domain)} at the exponent pair above.
// The numerator integrates the closed-form transform panel by panel between
// breakpoints; the denominator is the exact step L^p norm.
double lp_lq_ratio(const GrassmannGeometry& geom, const StepProfile& profile,
                   double p);

}  // namespace radon
