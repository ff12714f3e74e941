#pragma once

#include <functional>
#include <optional>

#include "radon/curve.hpp"

// Norm machinery on sampled curves. A TransformCurve is read as the
// piecewise-linear interpolant of its samples; everything here integrates
// that interpolant against a caller-supplied radial density. Tail behavior
// beyond the sampled range is the caller's business: these routines clip to
// the sample range and the transform modules own the decay analysis.

namespace radon {

// int_{s_first}^{s_last} A(s)^p density(s) ds for the interpolant A, p >= 1.
// Throws AccuracyError if the curve carries divergent (+inf) samples.
double curve_power_integral(const TransformCurve& curve,
                            const std::function<double(double)>& density,
                            double p);

// max over samples (the interpolant's sup).
double curve_sup(const TransformCurve& curve);

// sup_{lambda>0} lambda * mu{s in range : A(s) > lambda}^{1/windex} with
// dmu = density(s) ds. Super-level sets of the interpolant are unions of
// intervals whose endpoints are samples or linear crossings; their measures
// are assembled from per-segment density integrals. The lambda search runs
// over sample values, a geometric grid and local refinement rounds.
double curve_weak_sup(const TransformCurve& curve,
                      const std::function<double(double)>& density,
                      double windex);

// Exponential decay rate of the curve tail: kappa from a least-squares fit
// of log A(s) ~ -kappa s over the trailing positive samples. Empty when
// fewer than four usable samples exist (e.g. a curve that ends in zeros).
std::optional<double> curve_tail_decay(const TransformCurve& curve);

}  // namespace radon
