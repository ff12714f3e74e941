#pragma once

#include <functional>
#include <optional>

namespace radon::quadrature {

struct IntegralResult {
  double value = 0.0;
  double err_est = 0.0;  // conservative upper bound on |value - exact|
};

// An integrand with declared algebraic endpoint behaviour:
//   core(t) ~ C_a (t-a)^left_exponent   as t -> a+
//   core(t) ~ C_b (b-t)^right_exponent  as t -> b-
// The singular factors are part of core itself; the exponents just tell the
// integrator what to expect.  Exponents must be > -1 (else the integral does
// not exist).  Exponent 0 means "nothing special at this end".
struct SingularIntegrand {
  std::function<double(double)> core;
  double left_exponent = 0.0;
  double right_exponent = 0.0;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b] with algebraic endpoint
// singularities removed by the substitution t = a + v^2 (resp. t = b - v^2),
// applied repeatedly until the local exponent is a nonnegative integer or
// >= 2 (one pass turns exponent s into 2s+1, so half-integers become exact
// polynomials in v).  Refinement is strict left-to-right bisection with a
// halved error budget per split, which makes the result independent of
// evaluation order and bitwise reproducible.
//
// rel_tol must lie in (1e-14, 1e-2); the absolute tolerance floor is 1e-12.
// Throws ArgumentError on bad exponents/tolerances and AccuracyError
// (carrying the best estimate) when the refinement budget is exhausted.
IntegralResult integrate_singular(const SingularIntegrand& f, double a,
                                  double b, double rel_tol = 1e-9);

// Convenience wrapper for integrands with no declared endpoint behaviour.
IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, double rel_tol = 1e-9);

// Integral over [a, infinity) of an absolutely integrable integrand.
// The truncation point is certified by doubling windows: integration stops
// once consecutive window contributions decay geometrically and the implied
// tail bound drops below the tolerance.  decay_hint, when given, is an
// (approximate) exponential decay rate of f used only to size the first
// window; certification never trusts it.  Divergent or non-decaying tails
// raise AccuracyError.
IntegralResult integrate_semi_infinite(const std::function<double(double)>& f,
                                       double a,
                                       std::optional<double> decay_hint,
                                       double rel_tol = 1e-9);

}  // namespace radon::quadrature
