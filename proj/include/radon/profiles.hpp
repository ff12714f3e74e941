#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace radon {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

// Finite nonnegative step function on [0, inf): height h_i on the half-open
// interval [a_i, b_i), zero elsewhere.  Intervals are strictly increasing and
// pairwise disjoint (b_i <= a_{i+1}); heights are strictly positive.
class StepProfile {
 public:
  StepProfile(std::vector<Interval> intervals, std::vector<double> heights);

  // All-heights-one profile (an indicator of a union of intervals).
  static StepProfile indicator(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return intervals_; }
  const std::vector<double>& heights() const { return heights_; }
  std::size_t size() const { return intervals_.size(); }
  double support_lower() const { return intervals_.front().lower; }
  double support_upper() const { return intervals_.back().upper; }
  bool is_indicator() const;
  double max_height() const;

  // Value at t >= 0 with the half-open convention f(a_i) = h_i, f(b_i) = 0.
  double evaluate(double t) const;

  // Breakpoints a_1, b_1, ..., a_l, b_l in increasing order.
  std::vector<double> breakpoints() const;

 private:
  std::vector<Interval> intervals_;
  std::vector<double> heights_;
};

// General nonnegative radial profile given by an evaluator on [0, inf).
// support_upper = +inf means unbounded support; evaluate() is clamped to 0
// beyond a finite support_upper.  decay_hint, when present, is an
// approximate exponential decay rate used to size tail truncations.
class RadialProfile {
 public:
  explicit RadialProfile(
      std::function<double(double)> evaluator,
      double support_upper = std::numeric_limits<double>::infinity(),
      std::optional<double> decay_hint = std::nullopt);

  // Piecewise-linear interpolant of tabulated nonnegative samples; constant
  // before the first node, zero beyond the last (or beyond support_upper).
  static RadialProfile from_table(std::vector<double> ts,
                                  std::vector<double> values,
                                  double support_upper);

  double evaluate(double t) const;
  double support_upper() const { return support_upper_; }
  std::optional<double> decay_hint() const { return decay_hint_; }

 private:
  std::function<double(double)> evaluator_;
  double support_upper_;
  std::optional<double> decay_hint_;
};

// Radial weight  w(t) = c * t^alpha * sinh(t)^beta * cosh(t)^gamma
//                        * sin(t)^delta * cos(t)^epsilon   on (t_min, t_max).
// Covers every radial density used by the transforms: r^(n-k-1) on flat
// space, sinh^(n-1) r on hyperbolic space, sin^(n-1) on the sphere, and the
// mixed sinh^a cosh^b / sin^a cos^b plane-space densities.
class RadialMeasure {
 public:
  RadialMeasure(double c, double alpha, double beta, double gamma,
                double delta, double epsilon, double t_min, double t_max);

  static RadialMeasure lebesgue(
      double t_min = 0.0,
      double t_max = std::numeric_limits<double>::infinity());
  static RadialMeasure power(
      double c, double alpha, double t_min = 0.0,
      double t_max = std::numeric_limits<double>::infinity());

  double density(double t) const;

  // Exact closed form for pure power / sinh^m / sin^m / cos^m weights
  // (antiderivative recurrences), adaptive quadrature at 1e-12 otherwise.
  // Throws DomainError when [a, b] leaves (t_min, t_max) and
  // IntegrabilityError when an endpoint exponent is <= -1 or a negative
  // exponent factor vanishes strictly inside [a, b].
  double integrate(double a, double b) const;

  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }

 private:
  double c_, alpha_, beta_, gamma_, delta_, epsilon_, t_min_, t_max_;
};

// integral of profile d(measure) = sum_i h_i * measure([a_i, b_i)).
double weighted_measure(const StepProfile& profile,
                        const RadialMeasure& measure);

// Deterministic random profile: 2*count uniforms in (low, high) are sorted
// and paired into count disjoint intervals, heights all 1.  Identical for
// identical (seed, count, range) regardless of call order or threading.
StepProfile random_step_profile(std::uint64_t seed, int count, double low,
                                double high);

double profile_evaluate(const StepProfile& profile, double t);
double profile_evaluate(const RadialProfile& profile, double t);

// JSON profile file:
//   {"type": "step", "intervals": [[a,b], ...], "heights": [h, ...]}
//   {"type": "table", "ts": [...], "values": [...], "support_upper": x}
// Table profiles accept an optional "decay_hint" rate.
using AnyProfile = std::variant<StepProfile, RadialProfile>;
AnyProfile load_profile(const std::string& path);
AnyProfile parse_profile(const std::string& json_text);

}  // namespace radon
