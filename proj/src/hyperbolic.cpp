#include "radon/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "radon/curve_norms.hpp"
#include "radon/errors.hpp"
#include "radon/math_util.hpp"
#include "radon/quadrature.hpp"

namespace radon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (x - s)(x + s) clamped at zero: accurate (x^2 - s^2)_+ near x = s.
double diff_sq_pos(double x, double s) {
  double v = (x - s) * (x + s);
  return v > 0.0 ? v : 0.0;
}

void require_t_profile(const StepProfile& profile) {
  if (profile.support_lower() < 1.0)
    throw ArgumentError(
        "hyperbolic: step profiles live in the t = cosh r variable and need "
        "support in [1, inf)");
}

// int_a^b (t^2 - c^2)^{m/2} dt for c <= a <= b, m >= -1, via the
// antiderivative recurrence
//   (m+1) I_m = [t (t^2-c^2)^{m/2}]_a^b - m c^2 I_{m-2},
//   I_0 = b - a,  I_{-1} = log((b + sqrt(b^2-c^2)) / (a + sqrt(a^2-c^2))).
double kernel_integral(int m, double a, double b, double c) {
  if (m == -1) {
    double ra = std::sqrt(diff_sq_pos(a, c));
    double rb = std::sqrt(diff_sq_pos(b, c));
    return std::log((b + rb) / (a + ra));
  }
  if (m == 0) return b - a;
  double half = 0.5 * m;
  double boundary = b * std::pow(diff_sq_pos(b, c), half) -
                    a * std::pow(diff_sq_pos(a, c), half);
  return (boundary - m * c * c * kernel_integral(m - 2, a, b, c)) / (m + 1.0);
}

std::vector<double> r_breakpoints(const StepProfile& profile) {
  std::vector<double> out;
  for (double t : profile.breakpoints()) out.push_back(std::acosh(t));
  return out;
}

StepProfile profile_in_r(const StepProfile& profile_t) {
  std::vector<Interval> r_iv;
  r_iv.reserve(profile_t.size());
  for (const Interval& iv : profile_t.intervals())
    r_iv.push_back({std::acosh(iv.lower), std::acosh(iv.upper)});
  return StepProfile(std::move(r_iv), profile_t.heights());
}

}  // namespace

HyperbolicGeometry::HyperbolicGeometry(int n_in, int d_in) : n(n_in), d(d_in) {
  if (n < 2 || d < 1 || d > n - 1) {
    std::ostringstream msg;
    msg << "hyperbolic: need n >= 2 and 1 <= d <= n-1, got n=" << n
        << " d=" << d;
    throw ArgumentError(msg.str());
  }
}

double HyperbolicGeometry::critical_p() const {
  if (d == 1) return kInf;
  return (n - 1.0) / (d - 1.0);
}

double HyperbolicGeometry::sigma() const { return unit_sphere_area(d - 1); }

double HyperbolicGeometry::ambient_constant() const {
  return unit_sphere_area(n - 1);
}

std::string HyperbolicGeometry::tag() const {
  std::ostringstream msg;
  msg << "hyperbolic(n=" << n << ",d=" << d << ")";
  return msg.str();
}

RadialMeasure hn_radial_measure(const HyperbolicGeometry& geom) {
  return RadialMeasure(geom.ambient_constant(), 0.0, geom.n - 1.0, 0.0, 0.0,
                       0.0, 0.0, kInf);
}

std::function<double(double)> xi_density(const HyperbolicGeometry& geom) {
  int sinh_pow = geom.n - geom.d - 1;
  int cosh_pow = geom.d;
  return [sinh_pow, cosh_pow](double u) {
    return std::pow(std::sinh(u), sinh_pow) * std::pow(std::cosh(u), cosh_pow);
  };
}

StepProfile hyperbolic_step_from_r(const StepProfile& profile_r) {
  std::vector<Interval> t_iv;
  t_iv.reserve(profile_r.size());
  for (const Interval& iv : profile_r.intervals())
    t_iv.push_back({std::cosh(iv.lower), std::cosh(iv.upper)});
  return StepProfile(std::move(t_iv), profile_r.heights());
}

TransformCurve abel_numeric(const HyperbolicGeometry& geom,
                            const StepProfile& profile,
                            const std::vector<double>& s_grid) {
  require_t_profile(profile);
  const double ke = 0.5 * (geom.d - 2);
  std::vector<CurveSample> samples;
  samples.reserve(s_grid.size());
  for (double s : s_grid) {
    double c = std::cosh(s);
    NeumaierSum value;
    double err = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      const Interval& iv = profile.intervals()[i];
      if (iv.upper <= c) continue;
      double lo = std::max(iv.lower, c);
      quadrature::SingularIntegrand g;
      g.core = [c, ke](double t) { return std::pow(diff_sq_pos(t, c), ke); };
      g.left_exponent = (lo == c) ? ke : 0.0;
      auto piece = quadrature::integrate_singular(g, lo, iv.upper, 1e-10);
      value.add(profile.heights()[i] * piece.value);
      err += profile.heights()[i] * piece.err_est;
    }
    double prefactor = geom.sigma() / std::pow(c, geom.d - 1);
    samples.push_back({s, prefactor * value.value(), prefactor * err});
  }
  return TransformCurve("hyperbolic", std::move(samples));
}

TransformCurve abel_numeric(const HyperbolicGeometry& geom,
                            const RadialProfile& profile,
                            const std::vector<double>& s_grid) {
  const double ke = 0.5 * (geom.d - 2);
  const double su = profile.support_upper();
  std::optional<double> net_decay;
  if (!std::isfinite(su)) {
    std::optional<double> hint = profile.decay_hint();
    if (!hint || !(*hint > geom.d - 1.0))
      throw AccuracyError(
          "hyperbolic: unbounded profiles need a decay hint exceeding d-1 "
          "(the transform may diverge otherwise)",
          0.0, kInf);
    net_decay = *hint - (geom.d - 1.0);
  }
  std::vector<CurveSample> samples;
  samples.reserve(s_grid.size());
  for (double s : s_grid) {
    // f~(cosh r) [sinh(r-s) sinh(r+s)]^{(d-2)/2} sinh r on r > s.
    auto core = [&profile, ke, s](double r) {
      double kernel = std::sinh(r - s) * std::sinh(r + s);
      return profile.evaluate(r) * std::pow(kernel > 0.0 ? kernel : 0.0, ke) *
             std::sinh(r);
    };
    double value = 0.0;
    double err = 0.0;
    try {
      NeumaierSum acc;
      if (std::isfinite(su)) {
        if (su > s) {
          quadrature::SingularIntegrand g{core, ke, 0.0};
          auto piece = quadrature::integrate_singular(g, s, su, 1e-10);
          acc.add(piece.value);
          err += piece.err_est;
        }
      } else {
        quadrature::SingularIntegrand g{core, ke, 0.0};
        auto head = quadrature::integrate_singular(g, s, s + 2.0, 1e-10);
        auto tail =
            quadrature::integrate_semi_infinite(core, s + 2.0, net_decay,
                                                1e-10);
        acc.add(head.value);
        acc.add(tail.value);
        err += head.err_est + tail.err_est;
      }
      double prefactor = geom.sigma() / std::pow(std::cosh(s), geom.d - 1);
      value = prefactor * acc.value();
      err *= prefactor;
    } catch (const AccuracyError& e) {
      value = kInf;
      err = std::isfinite(e.err_est) ? e.err_est : kInf;
    }
    samples.push_back({s, value, err});
  }
  return TransformCurve("hyperbolic", std::move(samples));
}

TransformCurve abel_numeric_r(const HyperbolicGeometry& geom,
                              const StepProfile& profile,
                              const std::vector<double>& s_grid) {
  require_t_profile(profile);
  const double ke = 0.5 * (geom.d - 2);
  std::vector<CurveSample> samples;
  samples.reserve(s_grid.size());
  for (double s : s_grid) {
    double c = std::cosh(s);
    NeumaierSum value;
    double err = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      const Interval& iv = profile.intervals()[i];
      if (iv.upper <= c) continue;
      double r_lo = std::max(std::acosh(iv.lower), s);
      double r_hi = std::acosh(iv.upper);
      if (iv.lower <= c) r_lo = s;
      quadrature::SingularIntegrand g;
      g.core = [ke, s](double r) {
        double kernel = std::sinh(r - s) * std::sinh(r + s);
        return std::pow(kernel > 0.0 ? kernel : 0.0, ke) * std::sinh(r);
      };
      g.left_exponent = (r_lo == s) ? ke : 0.0;
      auto piece = quadrature::integrate_singular(g, r_lo, r_hi, 1e-10);
      value.add(profile.heights()[i] * piece.value);
      err += profile.heights()[i] * piece.err_est;
    }
    double prefactor = geom.sigma() / std::pow(c, geom.d - 1);
    samples.push_back({s, prefactor * value.value(), prefactor * err});
  }
  return TransformCurve("hyperbolic", std::move(samples));
}

double abel_step_closed(const HyperbolicGeometry& geom,
                        const StepProfile& profile, double s) {
  if (!(s >= 0.0))
    throw ArgumentError("hyperbolic: plane distance s must be >= 0");
  require_t_profile(profile);
  double c = std::cosh(s);
  NeumaierSum sum;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Interval& iv = profile.intervals()[i];
    if (iv.upper <= c) continue;
    sum.add(profile.heights()[i] *
            kernel_integral(geom.d - 2, std::max(iv.lower, c), iv.upper, c));
  }
  return geom.sigma() / std::pow(c, geom.d - 1) * sum.value();
}

TransformCurve sample_curve(const HyperbolicGeometry& geom,
                            const StepProfile& profile, int base_points) {
  require_t_profile(profile);
  auto breaks = r_breakpoints(profile);
  auto grid = sup_grid(0.0, std::acosh(profile.support_upper()), breaks,
                       base_points, 32);
  std::vector<CurveSample> samples;
  samples.reserve(grid.size());
  for (double s : grid)
    samples.push_back({s, abel_step_closed(geom, profile, s), 0.0});
  return TransformCurve("hyperbolic", std::move(samples));
}

double xi_norm(const TransformCurve& curve, const HyperbolicGeometry& geom,
               double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ArgumentError("xi norm: p must lie in [1, inf)");
  double integral = curve_power_integral(curve, xi_density(geom), p);
  const CurveSample& last = curve.samples().back();
  double vmax = curve.max_value();
  if (last.value > 0.0 && last.value > 1e-12 * vmax) {
    auto kappa = curve_tail_decay(curve);
    if (!kappa)
      throw AccuracyError("xi norm: cannot fit a tail decay rate",
                          std::pow(integral, 1.0 / p), kInf);
    double margin = p * *kappa - (geom.n - 1.0);
    if (!(margin > 0.0))
      throw AccuracyError(
          "xi norm: fitted tail decay too slow for a p-integrable tail",
          std::pow(integral, 1.0 / p), kInf);
    double u_end = last.s;
    double tail = std::pow(last.value, p) *
                  std::pow(1.0 + std::exp(-2.0 * u_end), geom.d) *
                  std::exp((geom.n - 1.0) * u_end) /
                  (std::pow(2.0, geom.n - 1) * margin);
    if (tail > 0.5 * integral)
      throw AccuracyError(
          "xi norm: sample window too short to certify the tail",
          std::pow(integral + tail, 1.0 / p), tail);
    integral += tail;
  }
  return std::pow(integral, 1.0 / p);
}

double hn_lorentz_norm(const StepProfile& profile,
                       const HyperbolicGeometry& geom,
                       const LorentzIndex& index) {
  require_t_profile(profile);
  return lorentz_norm(profile_in_r(profile), hn_radial_measure(geom), index);
}

HyperbolicEndpoint endpoint_bound_ratio(const HyperbolicGeometry& geom,
                                        const StepProfile& profile) {
  if (!geom.endpoint_regime())
    throw ArgumentError(
        "hyperbolic: the weighted endpoint bound needs n >= 3 and d >= 2");
  require_t_profile(profile);
  if (!profile.is_indicator())
    throw ArgumentError("hyperbolic: endpoint ratios take indicator profiles");
  StepProfile in_r = profile_in_r(profile);

  RadialMeasure bare(1.0, 0.0, geom.n - 1.0, 0.0, 0.0, 0.0, 0.0, kInf);
  double bare_integral = weighted_measure(in_r, bare);
  double denom_weighted =
      std::pow(bare_integral, (geom.d - 1.0) / (geom.n - 1.0));
  double denom_lorentz = lorentz_norm(in_r, hn_radial_measure(geom),
                                      LorentzIndex(geom.critical_p(), 1.0));

  auto grid = sup_grid(0.0, std::acosh(profile.support_upper()),
                       r_breakpoints(profile));
  double max_weighted = 0.0, arg_weighted = 0.0;
  double max_plain = 0.0, arg_plain = 0.0;
  for (double s : grid) {
    double a = abel_step_closed(geom, profile, s);
    double w = std::cosh(s) * a;
    if (w > max_weighted) {
      max_weighted = w;
      arg_weighted = s;
    }
    if (a > max_plain) {
      max_plain = a;
      arg_plain = s;
    }
  }
  return {max_weighted / denom_weighted, arg_weighted,
          max_plain / denom_lorentz, arg_plain};
}

double weak_norm_decay(const HyperbolicGeometry& geom,
                       const TransformCurve& curve) {
  if (!curve.all_finite())
    throw AccuracyError("weak norm: curve carries divergent samples", kInf,
                        kInf);
  double clipped = curve_weak_sup(curve, xi_density(geom), geom.n - 1.0);
  const CurveSample& last = curve.samples().back();
  double vmax = curve.max_value();
  if (last.value > 0.0 && last.value > 1e-10 * vmax) {
    auto kappa = curve_tail_decay(curve);
    if (!kappa || *kappa < 0.98)
      throw AccuracyError(
          "weak norm: tail decays slower than e^{-u}, the level-set measure "
          "is not finite at small levels",
          clipped, kInf);
    if (*kappa < 1.05) {
      // Near the critical rate the lambda -> 0 branch tends to the constant
      // A_end e^U / (2 (n-1)^{1/(n-1)}); keep it as a candidate.
      double asym = 0.5 * last.value * std::exp(last.s) *
                    std::pow(geom.n - 1.0, -1.0 / (geom.n - 1.0));
      clipped = std::max(clipped, asym);
    }
  }
  return clipped;
}

double weak_norm_decay(const HyperbolicGeometry& geom,
                       const StepProfile& profile) {
  if (!geom.endpoint_regime())
    throw ArgumentError(
        "hyperbolic: the weak-type bound needs n >= 3 and d >= 2");
  require_t_profile(profile);
  if (!profile.is_indicator())
    throw ArgumentError("hyperbolic: weak-norm decay takes indicator profiles");
  return weak_norm_decay(geom, sample_curve(geom, profile));
}

double lp_lq_exponent(const HyperbolicGeometry& geom, double p) {
  if (!(p >= 1.0) || !std::isfinite(p) || !(p < geom.critical_p())) {
    std::ostringstream msg;
    msg << "hyperbolic: p must lie in [1, " << geom.critical_p()
        << "), got p=" << p;
    throw ArgumentError(msg.str());
  }
  return (geom.n - geom.d) / ((geom.n - 1.0) / p - (geom.d - 1.0));
}

double lp_lq_ratio(const HyperbolicGeometry& geom, const StepProfile& profile,
                   double p) {
  double q = lp_lq_exponent(geom, p);
  double denom = hn_lorentz_norm(profile, geom, LorentzIndex(p, p));
  if (!(denom > 0.0))
    throw ArgumentError("hyperbolic: profile has zero measure");
  return xi_norm(sample_curve(geom, profile), geom, q) / denom;
}

std::vector<double> divergence_probe(const HyperbolicGeometry& geom, double p,
                                     const std::vector<double>& T_grid) {
  if (!(p >= 1.0))
    throw ArgumentError("divergence probe: p must be >= 1");
  if (T_grid.empty())
    throw ArgumentError("divergence probe: empty T grid");
  double prev = 0.0;
  for (double t : T_grid) {
    if (!(t > prev) || !std::isfinite(t))
      throw ArgumentError(
          "divergence probe: T grid must be positive and increasing");
    prev = t;
  }
  double delta = (geom.n - 1.0) / p - (geom.d - 1.0);
  auto probe = [delta](double t) {
    return std::exp(-delta * t) / (1.0 + t);
  };
  std::vector<double> out;
  out.reserve(T_grid.size());
  NeumaierSum acc;
  double lo = 0.0;
  for (double t : T_grid) {
    acc.add(quadrature::integrate(probe, lo, t, 1e-10).value);
    out.push_back(acc.value());
    lo = t;
  }
  return out;
}

}  // namespace radon
