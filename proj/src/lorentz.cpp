#include "radon/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "radon/errors.hpp"
#include "radon/math_util.hpp"

namespace radon {

namespace {

// Heights merged strictly decreasing with cumulative measures:
//   d_f(lambda) = cum[j]  for lambda in [height[j+1], height[j]).
struct Rearranged {
  std::vector<double> heights;  // strictly decreasing
  std::vector<double> cum;      // strictly increasing cumulative measures
};

Rearranged rearrange(const StepProfile& profile, const RadialMeasure& measure) {
  const auto& intervals = profile.intervals();
  const auto& heights = profile.heights();
  std::vector<double> cell(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i)
    cell[i] = measure.integrate(intervals[i].lower, intervals[i].upper);

  std::vector<std::size_t> order(intervals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Stable sort keeps equal heights in interval order, so merged groups
  // accumulate in the same order weighted_measure uses.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return heights[a] > heights[b];
  });

  Rearranged out;
  NeumaierSum total;
  std::size_t i = 0;
  while (i < order.size()) {
    double h = heights[order[i]];
    NeumaierSum group;
    while (i < order.size() && heights[order[i]] == h) {
      group.add(cell[order[i]]);
      ++i;
    }
    if (group.value() <= 0.0) continue;  // measure-zero level set
    total.add(group.value());
    out.heights.push_back(h);
    out.cum.push_back(total.value());
  }
  if (out.heights.empty())
    throw ArgumentError("lorentz: profile has zero measure");
  return out;
}

}  // namespace

LorentzIndex::LorentzIndex(double p_in, double q_in) : p(p_in), q(q_in) {
  if (std::isnan(p) || p < 1.0 || std::isinf(p))
    throw ArgumentError("LorentzIndex: p must lie in [1, infinity)");
  if (std::isnan(q) || q < 1.0)
    throw ArgumentError("LorentzIndex: q must lie in [1, infinity]");
}

bool LorentzIndex::weak() const { return std::isinf(q); }

double distribution_function(const StepProfile& profile,
                             const RadialMeasure& measure, double level) {
  if (std::isnan(level) || level < 0.0)
    throw ArgumentError("distribution_function: level must be >= 0");
  const auto& intervals = profile.intervals();
  const auto& heights = profile.heights();
  NeumaierSum sum;
  for (std::size_t i = 0; i < intervals.size(); ++i)
    if (heights[i] > level)
      sum.add(measure.integrate(intervals[i].lower, intervals[i].upper));
  return sum.value();
}

StepProfile decreasing_rearrangement(const StepProfile& profile,
                                     const RadialMeasure& measure) {
  Rearranged r = rearrange(profile, measure);
  std::vector<Interval> iv;
  std::vector<double> h;
  double prev = 0.0;
  for (std::size_t j = 0; j < r.heights.size(); ++j) {
    if (r.cum[j] > prev) {
      iv.push_back({prev, r.cum[j]});
      h.push_back(r.heights[j]);
      prev = r.cum[j];
    }
  }
  return StepProfile(std::move(iv), std::move(h));
}

/* Closed forms on the merged steps. With H_1 > H_2 > ... > H_K and
   cumulative measures T_1 < ... < T_K (T_0 = 0):

     rearrangement route:  ||f||^q = sum_j H_j^q (T_j^{q/p} - T_{j-1}^{q/p})
     distribution route:   ||f||^q = sum_j T_j^{q/p} (H_j^q - H_{j+1}^q)

   (H_{K+1} = 0). Both reduce to mu(E)^{q/p} for indicators; the first one
   does so term by term, which keeps ||chi_E||_{p,q} = mu(E)^{1/p} exact. */

double lorentz_norm(const StepProfile& profile, const RadialMeasure& measure,
                    const LorentzIndex& index) {
  Rearranged r = rearrange(profile, measure);
  if (index.weak()) {
    double best = 0.0;
    for (std::size_t j = 0; j < r.heights.size(); ++j)
      best = std::max(best, r.heights[j] * std::pow(r.cum[j], 1.0 / index.p));
    return best;
  }
  NeumaierSum sum;
  double prev_pow = 0.0;
  for (std::size_t j = 0; j < r.heights.size(); ++j) {
    double cur_pow = std::pow(r.cum[j], index.q / index.p);
    sum.add(std::pow(r.heights[j], index.q) * (cur_pow - prev_pow));
    prev_pow = cur_pow;
  }
  return std::pow(sum.value(), 1.0 / index.q);
}

double lorentz_norm_via_distribution(const StepProfile& profile,
                                     const RadialMeasure& measure,
                                     const LorentzIndex& index) {
  Rearranged r = rearrange(profile, measure);
  if (index.weak()) {
    double best = 0.0;
    for (std::size_t j = 0; j < r.heights.size(); ++j)
      best = std::max(best, r.heights[j] * std::pow(r.cum[j], 1.0 / index.p));
    return best;
  }
  NeumaierSum sum;
  for (std::size_t j = 0; j < r.heights.size(); ++j) {
    double next_h = (j + 1 < r.heights.size()) ? r.heights[j + 1] : 0.0;
    sum.add(std::pow(r.cum[j], index.q / index.p) *
            (std::pow(r.heights[j], index.q) - std::pow(next_h, index.q)));
  }
  return std::pow(sum.value(), 1.0 / index.q);
}

std::optional<StepProfile> quantize_profile(const RadialProfile& profile,
                                            int grid_points) {
  if (grid_points < 2)
    throw ArgumentError("quantize_profile: need at least 2 grid points");
  double upper = profile.support_upper();
  if (!std::isfinite(upper))
    throw ArgumentError("quantize_profile: profile support must be bounded");

  std::vector<Interval> iv;
  std::vector<double> h;
  double cell = upper / grid_points;
  for (int i = 0; i < grid_points; ++i) {
    double lo = i * cell, hi = (i + 1 == grid_points) ? upper : (i + 1) * cell;
    double v = profile.evaluate(0.5 * (lo + hi));
    if (v <= 0.0) continue;
    if (!h.empty() && h.back() == v && iv.back().upper == lo)
      iv.back().upper = hi;  // merge equal-height neighbors
    else {
      iv.push_back({lo, hi});
      h.push_back(v);
    }
  }
  if (h.empty()) return std::nullopt;
  return StepProfile(std::move(iv), std::move(h));
}

}  // namespace radon
