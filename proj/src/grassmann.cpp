#include "radon/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

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

}  // namespace

GrassmannGeometry::GrassmannGeometry(int n_in, int d_in, int k_in)
    : n(n_in), d(d_in), k(k_in) {
  if (k < 0 || d <= k || n <= d) {
    std::ostringstream msg;
    msg << "grassmann: need n > d > k >= 0, got n=" << n << " d=" << d
        << " k=" << k;
    throw ArgumentError(msg.str());
  }
}

double GrassmannGeometry::critical_p() const {
  return static_cast<double>(n - k) / static_cast<double>(d - k);
}

double GrassmannGeometry::normalization() const {
  return unit_sphere_area(d - k - 1);
}

std::string GrassmannGeometry::tag() const {
  std::ostringstream msg;
  msg << "grassmann(n=" << n << ",d=" << d << ",k=" << k << ")";
  return msg.str();
}

RadialMeasure grassmann_domain_measure(const GrassmannGeometry& geom) {
  return RadialMeasure::power(unit_sphere_area(geom.n - geom.k - 1),
                              geom.n - geom.k - 1);
}

RadialMeasure grassmann_target_measure(const GrassmannGeometry& geom) {
  return RadialMeasure::power(unit_sphere_area(geom.n - geom.d - 1),
                              geom.n - geom.d - 1);
}

TransformCurve abel_numeric(const GrassmannGeometry& geom,
                            const StepProfile& profile,
                            const std::vector<double>& s_grid) {
  const int m = geom.radial_power();
  const double norm = geom.normalization();
  std::vector<CurveSample> samples;
  samples.reserve(s_grid.size());
  for (double s : s_grid) {
    NeumaierSum value;
    double err = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      const Interval& iv = profile.intervals()[i];
      if (iv.upper <= s) continue;
      double r_lo = std::sqrt(diff_sq_pos(iv.lower, s));
      double r_hi = std::sqrt(diff_sq_pos(iv.upper, s));
      if (!(r_hi > r_lo)) continue;
      auto piece = quadrature::integrate(
          [m](double r) { return std::pow(r, m - 1); }, r_lo, r_hi, 1e-12);
      value.add(profile.heights()[i] * piece.value);
      err += profile.heights()[i] * piece.err_est;
    }
    samples.push_back({s, norm * value.value(), norm * err});
  }
  return TransformCurve("grassmann", std::move(samples));
}

TransformCurve abel_numeric(const GrassmannGeometry& geom,
                            const RadialProfile& profile,
                            const std::vector<double>& s_grid) {
  const int m = geom.radial_power();
  const double norm = geom.normalization();
  std::vector<CurveSample> samples;
  samples.reserve(s_grid.size());
  for (double s : s_grid) {
    auto integrand = [&profile, m, s](double r) {
      return profile.evaluate(std::hypot(r, s)) * std::pow(r, m - 1);
    };
    double value = 0.0;
    double err = 0.0;
    try {
      quadrature::IntegralResult piece;
      double su = profile.support_upper();
      if (std::isfinite(su)) {
        if (su > s) {
          double r_hi = std::sqrt(diff_sq_pos(su, s));
          piece = quadrature::integrate(integrand, 0.0, r_hi, 1e-10);
        }
      } else {
        piece =
            quadrature::integrate_semi_infinite(integrand, 0.0,
                                                profile.decay_hint(), 1e-10);
      }
      value = norm * piece.value;
      err = norm * piece.err_est;
    } catch (const AccuracyError& e) {
      value = kInf;
      err = std::isfinite(e.err_est) ? norm * e.err_est : kInf;
    }
    samples.push_back({s, value, err});
  }
  return TransformCurve("grassmann", std::move(samples));
}

double abel_step_closed(const GrassmannGeometry& geom,
                        const StepProfile& profile, double s) {
  if (!(s >= 0.0)) throw ArgumentError("grassmann: plane distance s must be >= 0");
  const int m = geom.radial_power();
  const double half_m = 0.5 * m;
  // |S^{m-1}| / m is the unit m-ball volume.
  const double vol_m = geom.normalization() / m;
  NeumaierSum sum;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Interval& iv = profile.intervals()[i];
    if (iv.upper <= s) continue;
    double outer = std::pow(diff_sq_pos(iv.upper, s), half_m);
    double inner = std::pow(diff_sq_pos(iv.lower, s), half_m);
    sum.add(profile.heights()[i] * (outer - inner));
  }
  return vol_m * sum.value();
}

double domain_lorentz_norm(const GrassmannGeometry& geom,
                           const StepProfile& profile,
                           const LorentzIndex& index) {
  return lorentz_norm(profile, grassmann_domain_measure(geom), index);
}

double truncated_critical_norm(const GrassmannGeometry& geom,
                               const StepProfile& profile, double s) {
  if (!(s >= 0.0)) throw ArgumentError("grassmann: truncation point must be >= 0");
  if (s >= profile.support_upper()) return 0.0;
  std::vector<Interval> clipped;
  std::vector<double> heights;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Interval& iv = profile.intervals()[i];
    if (iv.upper <= s) continue;
    clipped.push_back({std::max(iv.lower, s), iv.upper});
    heights.push_back(profile.heights()[i]);
  }
  if (clipped.empty()) return 0.0;
  StepProfile tail(std::move(clipped), std::move(heights));
  return domain_lorentz_norm(geom, tail,
                             LorentzIndex(geom.critical_p(), 1.0));
}

EndpointRatio endpoint_ratio(const GrassmannGeometry& geom,
                             const StepProfile& profile) {
  const double full_norm =
      domain_lorentz_norm(geom, profile, LorentzIndex(geom.critical_p(), 1.0));
  if (!(full_norm > 0.0))
    throw ArgumentError("grassmann: endpoint ratio needs a profile of positive norm");
  auto breakpoints = profile.breakpoints();
  auto grid = sup_grid(0.0, profile.support_upper(), breakpoints);
  EndpointRatio out{0.0, 0.0, 0.0, 0.0};
  for (double s : grid) {
    double a = abel_step_closed(geom, profile, s);
    if (a / full_norm > out.plain_ratio) {
      out.plain_ratio = a / full_norm;
      out.plain_arg_s = s;
    }
    double tail_norm = truncated_critical_norm(geom, profile, s);
    if (tail_norm > 0.0 && a / tail_norm > out.sharp_ratio) {
      out.sharp_ratio = a / tail_norm;
      out.sharp_arg_s = s;
    }
  }
  return out;
}

double lp_lq_exponent(const GrassmannGeometry& geom, double p) {
  if (!(p >= 1.0) || !(p < geom.critical_p())) {
    std::ostringstream msg;
    msg << "grassmann: p must lie in [1, " << geom.critical_p()
        << "), got p=" << p;
    throw ArgumentError(msg.str());
  }
  return (geom.n - geom.d) / ((geom.n - geom.k) / p - (geom.d - geom.k));
}

double lp_lq_ratio(const GrassmannGeometry& geom, const StepProfile& profile,
                   double p) {
  const double q = lp_lq_exponent(geom, p);
  const double denom = domain_lorentz_norm(geom, profile, LorentzIndex(p, p));
  if (!(denom > 0.0))
    throw ArgumentError("grassmann: profile has zero measure");

  const int m = geom.radial_power();
  const double target_c = unit_sphere_area(geom.n - geom.d - 1);
  const double target_pow = geom.n - geom.d - 1;

  std::vector<double> cuts = profile.breakpoints();
  cuts.insert(cuts.begin(), 0.0);
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  NeumaierSum total;
  double err = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    double lo = cuts[j];
    double hi = cuts[j + 1];
    if (!(hi > lo)) continue;
    quadrature::SingularIntegrand integrand;
    integrand.core = [&geom, &profile, q, target_c, target_pow](double s) {
      double a = abel_step_closed(geom, profile, s);
      return std::pow(a, q) * target_c * std::pow(s, target_pow);
    };
    integrand.left_exponent = (j == 0) ? target_pow : 0.0;
    bool last = (j + 2 == cuts.size());
    if (last) {
      // A(s) = h_l vol_m (b_l^2 - s^2)^{m/2} exactly on the final panel.
      integrand.right_exponent = q * 0.5 * m;
    } else {
      // A picks up an additive (c^2 - s^2)^{m/2} kink at interior
      // breakpoints; half-integer exponents trigger the healing
      // substitution, even ones leave the panel polynomial-smooth.
      integrand.right_exponent = (m % 2 == 1) ? 0.5 * m : 0.0;
    }
    auto piece = quadrature::integrate_singular(integrand, lo, hi, 1e-11);
    total.add(piece.value);
    err += piece.err_est;
  }
  (void)err;
  return std::pow(total.value(), 1.0 / q) / denom;
}

}  // namespace radon
