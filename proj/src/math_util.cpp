#include "radon/math_util.hpp"

#include <algorithm>
#include <cmath>

#include "radon/errors.hpp"

namespace radon {

double unit_sphere_area(int dim) {
  if (dim < 0) throw ArgumentError("unit_sphere_area: dimension must be >= 0");
  double h = 0.5 * (dim + 1);
  return 2.0 * std::pow(kPi, h) / std::tgamma(h);
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ArgumentError("least_squares: need >= 2 paired points");
  size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw ArgumentError("least_squares: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double r = y[i] - (fit.intercept + fit.slope * x[i]);
      ss += r * r;
    }
    fit.stderr_slope = std::sqrt(ss / (double(n - 2) * sxx));
  }
  return fit;
}

std::vector<double> sup_grid(double lo, double hi,
                             std::span<const double> breakpoints,
                             int base_points, int per_breakpoint) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw ArgumentError("sup_grid: need finite lo < hi");
  if (base_points < 2) throw ArgumentError("sup_grid: base_points < 2");
  std::vector<double> g;
  g.reserve(size_t(base_points) + 1 + breakpoints.size() * (per_breakpoint + 1));
  double span = hi - lo;
  for (int i = 0; i <= base_points; ++i)
    g.push_back(lo + span * double(i) / double(base_points));
  double w = span * 0.02;
  int half = std::max(1, per_breakpoint / 2);
  for (double b : breakpoints) {
    if (!(b >= lo && b <= hi)) continue;
    g.push_back(b);
    for (int i = 0; i < half; ++i) {
      double f = double(i + 1) / double(half);
      double off = w * f * f;
      g.push_back(std::clamp(b - off, lo, hi));
      g.push_back(std::clamp(b + off, lo, hi));
    }
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

}  // namespace radon
