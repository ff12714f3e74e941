#include "radon/curve_norms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "radon/errors.hpp"
#include "radon/math_util.hpp"
#include "radon/quadrature.hpp"

namespace radon {

namespace {

void require_finite(const TransformCurve& curve) {
  if (!curve.all_finite())
    throw AccuracyError("curve norm: divergent samples present",
                        std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity());
}

double segment_density(const std::function<double(double)>& density, double a,
                       double b) {
  if (!(b > a)) return 0.0;
  return quadrature::integrate(density, a, b, 1e-10).value;
}

}  // namespace

double curve_power_integral(const TransformCurve& curve,
                            const std::function<double(double)>& density,
                            double p) {
  if (!(p >= 1.0) || std::isinf(p))
    throw ArgumentError("curve_power_integral: p must lie in [1, infinity)");
  require_finite(curve);
  const auto& s = curve.samples();
  NeumaierSum total;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    double a = s[i].s, b = s[i + 1].s;
    double va = s[i].value, vb = s[i + 1].value;
    if (va == 0.0 && vb == 0.0) continue;
    auto integrand = [&](double x) {
      double w = (x - a) / (b - a);
      return std::pow(va + w * (vb - va), p) * density(x);
    };
    total.add(quadrature::integrate(integrand, a, b, 1e-10).value);
  }
  return total.value();
}

double curve_sup(const TransformCurve& curve) {
  require_finite(curve);
  return curve.max_value();
}

double curve_weak_sup(const TransformCurve& curve,
                      const std::function<double(double)>& density,
                      double windex) {
  if (!(windex >= 1.0))
    throw ArgumentError("curve_weak_sup: weak index must be >= 1");
  require_finite(curve);
  const auto& s = curve.samples();
  double vmax = curve.max_value();
  if (vmax == 0.0) return 0.0;

  // Cumulative density over the sample segments.
  std::vector<double> seg(s.size() - 1, 0.0);
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    seg[i] = segment_density(density, s[i].s, s[i + 1].s);

  // mu{A > lambda} for the piecewise-linear interpolant.
  auto level_measure = [&](double lambda) {
    NeumaierSum mu;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      double va = s[i].value, vb = s[i + 1].value;
      bool ia = va > lambda, ib = vb > lambda;
      if (!ia && !ib) continue;
      if (ia && ib) {
        mu.add(seg[i]);
        continue;
      }
      double cross =
          s[i].s + (lambda - va) / (vb - va) * (s[i + 1].s - s[i].s);
      if (ia)
        mu.add(segment_density(density, s[i].s, cross));
      else
        mu.add(segment_density(density, cross, s[i + 1].s));
    }
    return mu.value();
  };
  auto h = [&](double lambda) {
    double mu = level_measure(lambda);
    return mu > 0.0 ? lambda * std::pow(mu, 1.0 / windex) : 0.0;
  };

  // Candidate levels: a spread of sample values (capped so the search stays
  // near-linear in the sample count), a geometric sweep and a cluster just
  // below the maximum (where decreasing curves often attain the sup).  The
  // refinement rounds below recover anything a capped stride skips.
  std::vector<double> values;
  for (const CurveSample& c : s)
    if (c.value > 0.0 && c.value < vmax) values.push_back(c.value);
  std::sort(values.begin(), values.end());
  std::vector<double> cand;
  const std::size_t value_cap = 256;
  const std::size_t stride = std::max<std::size_t>(1, values.size() / value_cap);
  for (std::size_t i = 0; i < values.size(); i += stride)
    cand.push_back(values[i]);
  if (!values.empty()) cand.push_back(values.back());
  double lo = vmax * 1e-8;
  for (const CurveSample& c : s)
    if (c.value > 0.0) lo = std::min(lo, c.value);
  for (int i = 0; i <= 200; ++i)
    cand.push_back(lo * std::pow(vmax / lo, i / 200.0));
  for (int j = 1; j <= 30; ++j) cand.push_back(vmax * (1.0 - std::pow(0.5, j)));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  double best = 0.0, best_lambda = cand.empty() ? vmax : cand.front();
  for (double lambda : cand) {
    double val = h(lambda);
    if (val > best) {
      best = val;
      best_lambda = lambda;
    }
  }
  // Local refinement around the best candidate.
  double span = best_lambda;
  for (int round = 0; round < 6; ++round) {
    span *= 0.25;
    double a = std::max(best_lambda - span, lo * 0.5);
    double b = std::min(best_lambda + span, vmax);
    for (int i = 0; i <= 16; ++i) {
      double lambda = a + (b - a) * i / 16.0;
      double val = h(lambda);
      if (val > best) {
        best = val;
        best_lambda = lambda;
      }
    }
  }
  return best;
}

std::optional<double> curve_tail_decay(const TransformCurve& curve) {
  const auto& s = curve.samples();
  // Trailing run of strictly positive finite values, capped at the last
  // quarter of the sample count.
  std::size_t end = s.size();
  std::size_t begin = end;
  std::size_t cap = std::max<std::size_t>(4, s.size() / 4);
  while (begin > 0 && end - begin < cap) {
    double v = s[begin - 1].value;
    if (!(v > 0.0) || std::isinf(v)) break;
    --begin;
  }
  if (end - begin < 4) return std::nullopt;
  std::vector<double> xs, ys;
  for (std::size_t i = begin; i < end; ++i) {
    xs.push_back(s[i].s);
    ys.push_back(std::log(s[i].value));
  }
  return -least_squares(xs, ys).slope;
}

}  // namespace radon
