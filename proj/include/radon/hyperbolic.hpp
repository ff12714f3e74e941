#pragma once

#include <functional>
#include <string>
#include <vector>

#include "radon/curve.hpp"
#include "radon/lorentz.hpp"
#include "radon/profiles.hpp"

// The totally geodesic d-plane Abel transform on real hyperbolic n-space.
// For a radial profile, written as f~(cosh r) in the geodesic distance r,
// the transform at a plane of distance s from the origin is
//
//   A f(s) = (sigma_{d-1} / cosh^{d-1} s)
//            * int_{cosh s}^inf f~(t) (t^2 - cosh^2 s)^{(d-2)/2} dt
//
// with sigma_{d-1} = |S^{d-1}|.  Substituting t = cosh r gives the
// equivalent r-form with kernel cosh^2 r - cosh^2 s = sinh(r-s) sinh(r+s).
//
// Step profiles are canonically stored in the t = cosh r variable
// (intervals in [1, inf)), where the closed forms are elementary;
// hyperbolic_step_from_r converts r-variable annuli.  Radial measures: the
// domain carries c_n sinh^{n-1} r dr with c_n = |S^{n-1}|; the target space
// of d-planes carries sinh^{n-d-1} u cosh^d u du (constant normalized to 1).

namespace radon {

struct HyperbolicGeometry {
  int n, d;

  HyperbolicGeometry(int n_in, int d_in);

  double critical_p() const;        // (n-1)/(d-1); +inf when d = 1
  double sigma() const;             // |S^{d-1}|
  double ambient_constant() const;  // c_n = |S^{n-1}|
  // The weighted endpoint bound needs n >= 3 and d >= 2.
  bool endpoint_regime() const { return n >= 3 && d >= 2; }
  std::string tag() const;
};

// c_n sinh^{n-1} r dr on (0, inf).
RadialMeasure hn_radial_measure(const HyperbolicGeometry& geom);

// Radial density sinh^{n-d-1} u cosh^d u of the d-plane space.
std::function<double(double)> xi_density(const HyperbolicGeometry& geom);

// r-variable annuli [r_a, r_b) -> canonical t = cosh r intervals.
StepProfile hyperbolic_step_from_r(const StepProfile& profile_r);

// t-form quadrature on a step profile in the t variable.
TransformCurve abel_numeric(const HyperbolicGeometry& geom,
                            const StepProfile& profile,
                            const std::vector<double>& s_grid);
// r-form quadrature on a radial profile in the r variable.  Unbounded
// support requires a decay_hint rate exceeding d-1 (else the transform may
// genuinely diverge); uncertified grid points are flagged +inf.
TransformCurve abel_numeric(const HyperbolicGeometry& geom,
                            const RadialProfile& profile,
                            const std::vector<double>& s_grid);
// r-form quadrature on a step profile (agreement check for the two forms).
TransformCurve abel_numeric_r(const HyperbolicGeometry& geom,
                              const StepProfile& profile,
                              const std::vector<double>& s_grid);

// Exact piecewise closed form on step profiles via the antiderivative
// recurrence for I_m(a,b;c) = int_a^b (t^2-c^2)^{m/2} dt, m = d-2.
double abel_step_closed(const HyperbolicGeometry& geom,
                        const StepProfile& profile, double s);

// Closed-form transform of a step profile sampled over s in
// [0, arccosh(support end)] on a breakpoint-clustered grid.
TransformCurve sample_curve(const HyperbolicGeometry& geom,
                            const StepProfile& profile,
                            int base_points = 2048);

// (int_0^inf A(u)^p sinh^{n-d-1} u cosh^d u du)^{1/p} for the sampled
// curve.  A nonvanishing final sample triggers tail certification: the
// fitted decay rate kappa must satisfy p*kappa > n-1, and the implied
// geometric tail bound is added; otherwise AccuracyError.
double xi_norm(const TransformCurve& curve, const HyperbolicGeometry& geom,
               double p);

// Lorentz norm of a t-variable step profile under c_n sinh^{n-1} r dr.
double hn_lorentz_norm(const StepProfile& profile,
                       const HyperbolicGeometry& geom,
                       const LorentzIndex& index);

// Endpoint ratios for indicator profiles (needs the n >= 3, d >= 2 regime):
//   weighted: sup_s cosh(s) A(s) / (int f~(cosh t) sinh^{n-1} t dt)^{(d-1)/(n-1)}
//   lorentz:  sup_s A(s) / ||f||_{(n-1)/(d-1),1}
struct HyperbolicEndpoint {
  double weighted_ratio;
  double weighted_arg_s;
  double lorentz_ratio;
  double lorentz_arg_s;
};
HyperbolicEndpoint endpoint_bound_ratio(const HyperbolicGeometry& geom,
                                        const StepProfile& profile);

// sup_{lambda>0} lambda * mu{A > lambda}^{1/(n-1)} with mu the d-plane
// density above.  The curve overload analyses the tail decay (rate >= 1
// keeps the sup finite; slower decay raises AccuracyError), the profile
// overload samples the closed form first.
double weak_norm_decay(const HyperbolicGeometry& geom,
                       const TransformCurve& curve);
double weak_norm_decay(const HyperbolicGeometry& geom,
                       const StepProfile& profile);

// q solving (n-1)/p = d-1 + (n-d)/q; for d = 1 this gives q = p.
double lp_lq_exponent(const HyperbolicGeometry& geom, double p);

// xi_norm(A f, q) / hn_lorentz_norm(f, (p,p)) at the exponent pair above.
double lp_lq_ratio(const HyperbolicGeometry& geom, const StepProfile& profile,
                   double p);

// Truncated integrals I(T) = int_0^T e^{-((n-1)/p-(d-1))t}/(1+t) dt of the
// borderline profile f~(cosh t) = e^{-(n-1)t/p}/(1+t), an L^p function
// whose transform at the origin diverges exactly when p reaches the
// critical index: I(T) grows like log T there and converges below it.
std::vector<double> divergence_probe(const HyperbolicGeometry& geom, double p,
                                     const std::vector<double>& T_grid);

}  // namespace radon
