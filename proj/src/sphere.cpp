#include "radon/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "radon/curve_norms.hpp"
#include "radon/errors.hpp"
#include "radon/math_util.hpp"
#include "radon/quadrature.hpp"
#include "radon/rng.hpp"

namespace radon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = 1.57079632679489661923;

// (c - u)(c + u) clamped at zero: accurate (c^2 - u^2)_+ near u = c.
double diff_sq_pos(double c, double u) {
  double v = (c - u) * (c + u);
  return v > 0.0 ? v : 0.0;
}

void require_u_profile(const StepProfile& profile) {
  if (profile.support_upper() > 1.0 + 1e-12)
    throw ArgumentError(
        "sphere: profiles live in the u = cos r variable with support in "
        "[0, 1]");
}

void require_theta(double theta) {
  if (!(theta >= 0.0) || theta > kHalfPi + 1e-12)
    throw ArgumentError("sphere: theta must lie in [0, pi/2]");
}

bool at_pole(double c) { return c <= 1e-14; }

// int_a^b (c^2 - u^2)^{m/2} du for 0 <= a <= b <= c, m >= -1, via
//   (m+1) J_m = [u (c^2-u^2)^{m/2}]_a^b + m c^2 J_{m-2},
//   J_0 = b - a,  J_{-1} = arcsin(b/c) - arcsin(a/c).
double kernel_integral(int m, double a, double b, double c) {
  if (m == -1) return std::asin(std::min(b / c, 1.0)) - std::asin(a / c);
  if (m == 0) return b - a;
  double half = 0.5 * m;
  double boundary = b * std::pow(diff_sq_pos(c, b), half) -
                    a * std::pow(diff_sq_pos(c, a), half);
  return (boundary + m * c * c * kernel_integral(m - 2, a, b, c)) / (m + 1.0);
}

std::vector<double> theta_breakpoints(const StepProfile& profile) {
  std::vector<double> out;
  for (double u : profile.breakpoints())
    out.push_back(std::acos(std::min(u, 1.0)));
  std::sort(out.begin(), out.end());
  return out;
}

// Closed-form transform as a function of c = cos theta in (0, 1].
double closed_from_c(const SphereGeometry& geom, const StepProfile& profile,
                     double c) {
  int m = geom.d - 2;
  NeumaierSum sum;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Interval& iv = profile.intervals()[i];
    if (iv.lower >= c) continue;
    sum.add(profile.heights()[i] *
            kernel_integral(m, iv.lower, std::min(iv.upper, c), c));
  }
  return geom.normalization() / std::pow(c, geom.d - 1) * sum.value();
}

double closed_dispatch(const SphereGeometry& geom, const StepProfile& profile,
                       double theta) {
  return geom.d == 1 ? abel_step_closed_d1(geom, profile, theta)
                     : abel_step_closed(geom, profile, theta);
}

double horner(const std::vector<double>& coeffs, double t) {
  double v = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 0;) v = v * t + coeffs[j];
  return v;
}

StepProfile theta_profile(const StepProfile& profile) {
  std::vector<Interval> iv;
  std::vector<double> heights;
  iv.reserve(profile.size());
  for (std::size_t i = profile.size(); i-- > 0;) {
    const Interval& u_iv = profile.intervals()[i];
    iv.push_back({std::acos(std::min(u_iv.upper, 1.0)), std::acos(u_iv.lower)});
    heights.push_back(profile.heights()[i]);
  }
  return StepProfile(std::move(iv), std::move(heights));
}

RadialMeasure sin_power_measure(int n) {
  return RadialMeasure(1.0, 0.0, 0.0, 0.0, n - 1.0, 0.0, 0.0, kPi);
}

}  // namespace

SphereGeometry::SphereGeometry(int n_in, int d_in) : n(n_in), d(d_in) {
  if (n < 2 || d < 1 || d > n - 1) {
    std::ostringstream msg;
    msg << "sphere: need n >= 2 and 1 <= d <= n-1, got n=" << n << " d=" << d;
    throw ArgumentError(msg.str());
  }
}

double SphereGeometry::normalization() const {
  return 2.0 * std::tgamma(0.5 * (d + 1)) /
         (std::sqrt(kPi) * std::tgamma(0.5 * d));
}

double SphereGeometry::catalan_constant() const {
  return 0.5 * normalization();
}

std::string SphereGeometry::tag() const {
  std::ostringstream msg;
  msg << "sphere(n=" << n << ",d=" << d << ")";
  return msg.str();
}

std::function<double(double)> subsphere_density(const SphereGeometry& geom) {
  int sin_pow = geom.n - geom.d - 1;
  int cos_pow = geom.d;
  return [sin_pow, cos_pow](double theta) {
    return std::pow(std::sin(theta), sin_pow) *
           std::pow(std::cos(theta), cos_pow);
  };
}

TransformCurve abel_numeric(const SphereGeometry& geom,
                            const StepProfile& profile,
                            const std::vector<double>& theta_grid) {
  require_u_profile(profile);
  const double ke = 0.5 * (geom.d - 2);
  std::vector<CurveSample> samples;
  samples.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    require_theta(theta);
    double c = std::cos(theta);
    if (at_pole(c)) {
      samples.push_back({theta, profile.evaluate(0.0), 0.0});
      continue;
    }
    NeumaierSum value;
    double err = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      const Interval& iv = profile.intervals()[i];
      if (iv.lower >= c) continue;
      double hi = std::min(iv.upper, c);
      quadrature::SingularIntegrand g;
      g.core = [c, ke](double u) { return std::pow(diff_sq_pos(c, u), ke); };
      g.right_exponent = (hi == c) ? ke : 0.0;
      auto piece = quadrature::integrate_singular(g, iv.lower, hi, 1e-10);
      value.add(profile.heights()[i] * piece.value);
      err += profile.heights()[i] * piece.err_est;
    }
    double prefactor = geom.normalization() / std::pow(c, geom.d - 1);
    samples.push_back({theta, prefactor * value.value(), prefactor * err});
  }
  return TransformCurve("sphere", std::move(samples));
}

TransformCurve abel_numeric(const SphereGeometry& geom,
                            const RadialProfile& profile,
                            const std::vector<double>& theta_grid) {
  const double ke = 0.5 * (geom.d - 2);
  std::vector<CurveSample> samples;
  samples.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    require_theta(theta);
    double c = std::cos(theta);
    if (at_pole(c)) {
      samples.push_back({theta, profile.evaluate(0.0), 0.0});
      continue;
    }
    double hi = std::min(profile.support_upper(), c);
    double value = 0.0;
    double err = 0.0;
    if (hi > 0.0) {
      quadrature::SingularIntegrand g;
      g.core = [&profile, c, ke](double u) {
        return profile.evaluate(u) * std::pow(diff_sq_pos(c, u), ke);
      };
      g.right_exponent = (hi == c) ? ke : 0.0;
      auto piece = quadrature::integrate_singular(g, 0.0, hi, 1e-10);
      double prefactor = geom.normalization() / std::pow(c, geom.d - 1);
      value = prefactor * piece.value;
      err = prefactor * piece.err_est;
    }
    samples.push_back({theta, value, err});
  }
  return TransformCurve("sphere", std::move(samples));
}

TransformCurve abel_numeric_r(const SphereGeometry& geom,
                              const StepProfile& profile,
                              const std::vector<double>& theta_grid) {
  require_u_profile(profile);
  const double ke = 0.5 * (geom.d - 2);
  std::vector<CurveSample> samples;
  samples.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    require_theta(theta);
    double c = std::cos(theta);
    if (at_pole(c)) {
      samples.push_back({theta, profile.evaluate(0.0), 0.0});
      continue;
    }
    NeumaierSum value;
    double err = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      const Interval& iv = profile.intervals()[i];
      if (iv.lower >= c) continue;
      // u in [a, min(b, c)] maps to r in [max(arccos b, theta), arccos a].
      double r_lo = iv.upper >= c ? theta
                                  : std::acos(std::min(iv.upper, 1.0));
      double r_hi = std::acos(iv.lower);
      quadrature::SingularIntegrand g;
      g.core = [ke, theta](double r) {
        double kernel = std::sin(r - theta) * std::sin(r + theta);
        return std::pow(kernel > 0.0 ? kernel : 0.0, ke) * std::sin(r);
      };
      g.left_exponent = (r_lo == theta) ? ke : 0.0;
      auto piece = quadrature::integrate_singular(g, r_lo, r_hi, 1e-10);
      value.add(profile.heights()[i] * piece.value);
      err += profile.heights()[i] * piece.err_est;
    }
    double prefactor = geom.normalization() / std::pow(c, geom.d - 1);
    samples.push_back({theta, prefactor * value.value(), prefactor * err});
  }
  return TransformCurve("sphere", std::move(samples));
}

double abel_step_closed(const SphereGeometry& geom, const StepProfile& profile,
                        double theta) {
  require_u_profile(profile);
  require_theta(theta);
  double c = std::cos(theta);
  if (at_pole(c)) return profile.evaluate(0.0);
  return closed_from_c(geom, profile, c);
}

double abel_step_closed_d1(const SphereGeometry& geom,
                           const StepProfile& profile, double theta) {
  if (geom.d != 1)
    throw ArgumentError("sphere: the arcsin closed form is the d = 1 kernel");
  require_u_profile(profile);
  require_theta(theta);
  double c = std::cos(theta);
  if (at_pole(c)) return profile.evaluate(0.0);
  NeumaierSum sum;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Interval& iv = profile.intervals()[i];
    if (iv.lower >= c) continue;
    sum.add(profile.heights()[i] * (std::asin(std::min(iv.upper / c, 1.0)) -
                                    std::asin(iv.lower / c)));
  }
  return 2.0 / kPi * sum.value();
}

TransformCurve sample_curve(const SphereGeometry& geom,
                            const StepProfile& profile, int base_points) {
  require_u_profile(profile);
  auto grid =
      sup_grid(0.0, kHalfPi, theta_breakpoints(profile), base_points, 32);
  std::vector<CurveSample> samples;
  samples.reserve(grid.size());
  for (double theta : grid)
    samples.push_back({theta, closed_dispatch(geom, profile, theta), 0.0});
  return TransformCurve("sphere", std::move(samples));
}

CatalanCheck catalan_check(int d, const std::vector<double>& psi,
                           double x_norm, long long n_samples,
                           std::uint64_t seed) {
  if (d < 2)
    throw ArgumentError("catalan check: the reduction formula needs d >= 2");
  if (psi.empty()) throw ArgumentError("catalan check: empty polynomial");
  if (n_samples < 2) throw ArgumentError("catalan check: need n_samples >= 2");

  CounterRng rng(seed);
  NeumaierSum mean_acc, square_acc;
  const int dim = d + 1;
  for (long long i = 0; i < n_samples; ++i) {
    // Uniform direction on S^d from dim normals; first coordinate suffices
    // by rotation invariance.
    double first = 0.0, norm_sq = 0.0;
    for (int j = 0; j < dim; ++j) {
      double z = rng.normal(static_cast<std::uint64_t>(i) * dim + j);
      if (j == 0) first = z;
      norm_sq += z * z;
    }
    double v = horner(psi, x_norm * first / std::sqrt(norm_sq));
    mean_acc.add(v);
    square_acc.add(v * v);
  }
  double mean = mean_acc.value() / n_samples;
  double var = (square_acc.value() / n_samples - mean * mean) *
               (double(n_samples) / (n_samples - 1));
  double stderr_mean = std::sqrt(std::max(var, 0.0) / n_samples);

  double ke = 0.5 * (d - 2);
  quadrature::SingularIntegrand g;
  g.core = [&psi, x_norm, ke](double s) {
    return horner(psi, s * x_norm) * std::pow((1.0 - s) * (1.0 + s), ke);
  };
  g.left_exponent = ke;
  g.right_exponent = ke;
  auto integral = quadrature::integrate_singular(g, -1.0, 1.0, 1e-11);
  double c_d = std::tgamma(0.5 * (d + 1)) /
               (std::sqrt(kPi) * std::tgamma(0.5 * d));
  double rhs = c_d * integral.value;
  return {mean, rhs, std::abs(mean - rhs), stderr_mean};
}

double sphere_lorentz_norm(const StepProfile& profile,
                           const SphereGeometry& geom,
                           const LorentzIndex& index) {
  require_u_profile(profile);
  return lorentz_norm(theta_profile(profile), sin_power_measure(geom.n),
                      index);
}

double weighted_endpoint_ratio(const SphereGeometry& geom,
                               const StepProfile& profile) {
  require_u_profile(profile);
  if (!profile.is_indicator())
    throw ArgumentError("sphere: endpoint ratios take indicator profiles");
  double norm = sphere_lorentz_norm(profile, geom,
                                    LorentzIndex(geom.critical_p(), 1.0));
  if (!(norm > 0.0))
    throw ArgumentError("sphere: endpoint ratio needs a profile of positive norm");
  auto grid = sup_grid(0.0, kHalfPi, theta_breakpoints(profile));
  double best = 0.0;
  for (double theta : grid) {
    double w = std::cos(theta) * closed_dispatch(geom, profile, theta);
    best = std::max(best, w);
  }
  return best / norm;
}

double weak_norm(const TransformCurve& curve, const SphereGeometry& geom) {
  if (!curve.all_finite())
    throw AccuracyError("weak norm: curve carries divergent samples", kInf,
                        kInf);
  if (curve.samples().back().s > kHalfPi + 1e-9)
    throw ArgumentError("sphere: weak norm curves live on [0, pi/2]");
  return curve_weak_sup(curve, subsphere_density(geom), geom.weak_index());
}

std::vector<FlatCapRow> counterexample_flat(const SphereGeometry& geom,
                                            const std::vector<double>& a_list,
                                            double p) {
  if (!std::isfinite(p) || !(p >= 1.0))
    throw ArgumentError(
        "flat caps: p must be finite and >= 1 (the sup bound does hold at "
        "p = inf)");
  if (a_list.empty()) throw ArgumentError("flat caps: empty cap list");
  double prev = 2.0;
  std::vector<FlatCapRow> out;
  out.reserve(a_list.size());
  for (double a : a_list) {
    if (!(a > 0.0) || a > 1.0 || !(a < prev))
      throw ArgumentError(
          "flat caps: cap radii must decrease strictly within (0, 1]");
    prev = a;
    StepProfile cap = StepProfile::indicator({{0.0, a}});
    auto grid = sup_grid(0.0, kHalfPi, theta_breakpoints(cap));
    double sup = 0.0;
    for (double theta : grid)
      sup = std::max(sup, closed_dispatch(geom, cap, theta));
    double norm = sphere_lorentz_norm(cap, geom, LorentzIndex(p, 1.0));
    out.push_back({a, sup, norm});
  }
  return out;
}

std::vector<CapRow> counterexample_cap(const SphereGeometry& geom, double p,
                                       const std::vector<double>& m_grid) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ArgumentError("shrinking caps: p must be finite and >= 1");
  if (m_grid.empty()) throw ArgumentError("shrinking caps: empty m grid");
  double prev = 0.0;
  std::vector<CapRow> out;
  out.reserve(m_grid.size());
  for (double m : m_grid) {
    if (!(m >= 2.0) || !(m > prev) || !std::isfinite(m))
      throw ArgumentError(
          "shrinking caps: m grid must be increasing with m >= 2");
    prev = m;
    double a = (m - 1.0) / (m + 1.0);
    StepProfile cap = StepProfile::indicator({{a, 1.0}});
    double norm = sphere_lorentz_norm(cap, geom, LorentzIndex(p, 1.0));
    // Midpoint of ((m-1)/m, m/(m+1)), strictly inside (a, 1): the transform
    // sees the cap through a sliver [a, cos s] of relative width >= 1/(m+1).
    double c = (2.0 * m * m - 1.0) / (2.0 * m * (m + 1.0));
    double lower = c * closed_from_c(geom, cap, c);
    out.push_back({m, norm, lower});
  }
  return out;
}

double lp_ratio(const SphereGeometry& geom, const StepProfile& profile,
                double p) {
  require_u_profile(profile);
  if (!(p >= 1.0)) throw ArgumentError("sphere: p must be >= 1 (or inf)");
  TransformCurve curve = sample_curve(geom, profile);
  if (std::isinf(p)) return curve_sup(curve) / profile.max_height();
  double numerator =
      std::pow(curve_power_integral(curve, subsphere_density(geom), p),
               1.0 / p);
  return numerator / sphere_lorentz_norm(profile, geom, LorentzIndex(p, p));
}

double weighted_lp_lq_exponent(const SphereGeometry& geom, double p) {
  if (!(p >= 1.0) || !(p < geom.critical_p())) {
    std::ostringstream msg;
    msg << "sphere: p must lie in [1, " << geom.critical_p() << "), got p="
        << p;
    throw ArgumentError(msg.str());
  }
  return (geom.n - geom.d) / (geom.n / p - geom.d);
}

double weighted_lp_lq_ratio(const SphereGeometry& geom,
                            const StepProfile& profile, double p) {
  require_u_profile(profile);
  double q = weighted_lp_lq_exponent(geom, p);
  TransformCurve curve = sample_curve(geom, profile);
  std::vector<CurveSample> weighted;
  weighted.reserve(curve.size());
  for (const CurveSample& c : curve.samples())
    weighted.push_back({c.s, std::cos(c.s) * c.value, c.err_est});
  TransformCurve weighted_curve("sphere", std::move(weighted));
  double numerator = std::pow(
      curve_power_integral(weighted_curve, subsphere_density(geom), q),
      1.0 / q);
  return numerator / sphere_lorentz_norm(profile, geom, LorentzIndex(p, p));
}

StepProfile sphere_even_part(const std::vector<Interval>& intervals,
                             const std::vector<double>& heights) {
  if (intervals.empty() || intervals.size() != heights.size())
    throw ArgumentError("even part: intervals and heights must match");
  double prev = -1.0 - 1e-12;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const Interval& iv = intervals[i];
    if (!(iv.lower >= -1.0 - 1e-12) || iv.upper > 1.0 + 1e-12 ||
        !(iv.upper > iv.lower) || iv.lower < prev)
      throw ArgumentError(
          "even part: need disjoint increasing intervals within [-1, 1]");
    prev = iv.upper;
    if (!(heights[i] > 0.0) || !std::isfinite(heights[i]))
      throw ArgumentError("even part: heights must be positive");
  }
  auto full_value = [&](double u) {
    for (std::size_t i = 0; i < intervals.size(); ++i)
      if (u >= intervals[i].lower && u < intervals[i].upper)
        return heights[i];
    return 0.0;
  };
  // Cell decomposition of [0,1] by the folded breakpoints; the even part is
  // constant on each open cell (boundary values follow cell interiors; the
  // folding is measure-theoretic).
  std::vector<double> cuts{0.0, 1.0};
  for (const Interval& iv : intervals) {
    for (double x : {iv.lower, iv.upper}) {
      double f = std::abs(x);
      if (f < 1.0) cuts.push_back(f);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Interval> out_iv;
  std::vector<double> out_h;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    double mid = 0.5 * (cuts[j] + cuts[j + 1]);
    double v = 0.5 * (full_value(mid) + full_value(-mid));
    if (v <= 0.0) continue;
    if (!out_iv.empty() && out_iv.back().upper == cuts[j] &&
        out_h.back() == v) {
      out_iv.back().upper = cuts[j + 1];
    } else {
      out_iv.push_back({cuts[j], cuts[j + 1]});
      out_h.push_back(v);
    }
  }
  if (out_iv.empty())
    throw ArgumentError(
        "even part: the even part vanishes (odd input transforms to zero)");
  return StepProfile(std::move(out_iv), std::move(out_h));
}

}  // namespace radon
