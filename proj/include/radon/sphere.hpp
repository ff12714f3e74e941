#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "radon/curve.hpp"
#include "radon/lorentz.hpp"
#include "radon/profiles.hpp"

// The great-subsphere Abel transform on S^n.  Even radial profiles are
// stored in the u = cos r variable with support in [0, 1] (odd parts are
// annihilated by the transform; sphere_even_part folds full-sphere inputs).
// With all spherical measures normalized to probability measures,
//
//   A f(theta) = (C / cos^{d-1} theta)
//                * int_0^{cos theta} f~(u) (cos^2 theta - u^2)^{(d-2)/2} du,
//   C = 2 Gamma((d+1)/2) / (sqrt(pi) Gamma(d/2)),
//
// so that A 1 = 1 identically.  theta in [0, pi/2] is the distance of the
// subsphere plane from the base point; at theta = pi/2 the value is the
// continuity limit f~(0+).  The space of d-subspheres carries the radial
// density sin^{n-d-1} theta cos^d theta; the sphere itself carries
// sin^{n-1} theta d theta, equivalently (1-u^2)^{(n-2)/2} du (constants
// dropped: every acceptance check is a ratio or a rate).

namespace radon {

struct SphereGeometry {
  int n, d;

  SphereGeometry(int n_in, int d_in);

  double critical_p() const { return static_cast<double>(n) / d; }
  int weak_index() const { return d + 1; }
  double normalization() const;     // C above
  double catalan_constant() const;  // C/2, the inner-product reduction weight
  std::string tag() const;
};

// Radial density sin^{n-d-1} theta cos^d theta of the subsphere space.
std::function<double(double)> subsphere_density(const SphereGeometry& geom);

// Quadrature evaluation over theta_grid in [0, pi/2]; u-form on u-variable
// profiles.
TransformCurve abel_numeric(const SphereGeometry& geom,
                            const StepProfile& profile,
                            const std::vector<double>& theta_grid);
TransformCurve abel_numeric(const SphereGeometry& geom,
                            const RadialProfile& profile,
                            const std::vector<double>& theta_grid);
// r-form: kernel cos^2 theta - cos^2 r = sin(r-theta) sin(r+theta), for the
// two-forms agreement check.
TransformCurve abel_numeric_r(const SphereGeometry& geom,
                              const StepProfile& profile,
                              const std::vector<double>& theta_grid);

// Exact piecewise closed form (any d) via the antiderivative recurrence for
// J_m(a,b;c) = int_a^b (c^2-u^2)^{m/2} du, m = d-2, J_{-1} by arcsin.
double abel_step_closed(const SphereGeometry& geom, const StepProfile& profile,
                        double theta);

// The d = 1 arcsin closed form
//   (2/pi) sum_i h_i [arcsin(min(b_i,c)/c) - arcsin(min(a_i,c)/c)], c = cos theta.
double abel_step_closed_d1(const SphereGeometry& geom,
                           const StepProfile& profile, double theta);

// Closed-form transform sampled over [0, pi/2] with breakpoint clusters.
TransformCurve sample_curve(const SphereGeometry& geom,
                            const StepProfile& profile, int base_points = 2048);

// Monte-Carlo vs quadrature agreement for the inner-product reduction
//   int_{S^d} psi(<x, w>) dsigma(w) = C_d int_{-1}^1 psi(s|x|)(1-s^2)^{(d-2)/2} ds
// on polynomials psi (ascending coefficients).  Needs d >= 2.
struct CatalanCheck {
  double lhs;        // Monte-Carlo average over N uniform points of S^d
  double rhs;        // one-dimensional weighted quadrature
  double abs_diff;   // |lhs - rhs|
  double mc_stderr;  // sample standard error of the Monte-Carlo mean
};
CatalanCheck catalan_check(int d, const std::vector<double>& psi,
                           double x_norm, long long n_samples,
                           std::uint64_t seed);

// Lorentz norm of a u-variable profile under (1-u^2)^{(n-2)/2} du on (0,1),
// computed exactly through the theta = arccos u change of variables.
double sphere_lorentz_norm(const StepProfile& profile,
                           const SphereGeometry& geom,
                           const LorentzIndex& index);

// sup_theta cos(theta) A f(theta) / ||f||_{(n/d,1)} for indicator profiles.
double weighted_endpoint_ratio(const SphereGeometry& geom,
                               const StepProfile& profile);

// sup_{lambda>0} lambda * mu{theta : A > lambda}^{1/(d+1)} with dmu the
// subsphere density; curve on [0, pi/2], no tail analysis needed.
double weak_norm(const TransformCurve& curve, const SphereGeometry& geom);

// Flat caps chi_{[0,a_i]}: the transform sup stays exactly at 1 (the profile
// saturates the whole integration range once cos theta <= a_i) while the
// (p,1) norm vanishes with a_i — no endpoint bound without the cos weight.
struct FlatCapRow {
  double a;
  double sup_transform;
  double norm;
};
std::vector<FlatCapRow> counterexample_flat(const SphereGeometry& geom,
                                            const std::vector<double>& a_list,
                                            double p);

// Shrinking caps chi_{[a_m,1]}, a_m = (m-1)/(m+1): norm decays like
// (m+1)^{-n/(2p)} while cos(s) A f(s), probed at cos s midway between
// (m-1)/m and m/(m+1), decays no faster than (m+1)^{-d/2} — so the cos
// weight cannot be traded below the critical index.
struct CapRow {
  double m;
  double norm;
  double lower_bound;
};
std::vector<CapRow> counterexample_cap(const SphereGeometry& geom, double p,
                                       const std::vector<double>& m_grid);

// ||A f||_p / ||f||_p with the subsphere density upstairs; p in [1, inf],
// p = inf compares sups.
double lp_ratio(const SphereGeometry& geom, const StepProfile& profile,
                double p);

// q solving n/p = (n-d)/q + d for 1 <= p < n/d.
double weighted_lp_lq_exponent(const SphereGeometry& geom, double p);

// ||cos(.) A f||_q / ||f||_p at the exponent pair above.
double weighted_lp_lq_ratio(const SphereGeometry& geom,
                            const StepProfile& profile, double p);

// Even-part reduction of a full-sphere step function on [-1, 1]:
// f1(u) = (f(u) + f(-u))/2 restricted to [0, 1].  All-zero even part is an
// ArgumentError (the transform of an odd function vanishes identically).
StepProfile sphere_even_part(const std::vector<Interval>& intervals,
                             const std::vector<double>& heights);

}  // namespace radon
