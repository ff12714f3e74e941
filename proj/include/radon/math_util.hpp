#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace radon {

inline constexpr double kPi = 3.14159265358979323846;

// Surface measure of the unit sphere S^dim sitting in R^(dim+1),
//   |S^dim| = 2 pi^((dim+1)/2) / Gamma((dim+1)/2),
// so |S^0| = 2, |S^1| = 2 pi, |S^2| = 4 pi.
double unit_sphere_area(int dim);

// Neumaier-compensated accumulator.  Used wherever sums of many terms feed a
// tolerance tighter than ~1e-12 (alternating sums, measure accumulation).
struct NeumaierSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

struct LineFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y = intercept + slope * x.  Needs at least two
// points and non-degenerate x; stderr_slope is 0 when there are exactly two.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

// Grid used by sup-over-s sweeps: base_points uniform samples of [lo, hi]
// plus per_breakpoint extra samples clustered quadratically around each
// breakpoint (where transforms of step profiles kink or spike).  Sorted,
// deduplicated, endpoints included.
std::vector<double> sup_grid(double lo, double hi,
                             std::span<const double> breakpoints,
                             int base_points = 512, int per_breakpoint = 32);

}  // namespace radon
