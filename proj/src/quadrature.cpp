#include "radon/quadrature.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "radon/errors.hpp"
#include "radon/math_util.hpp"

namespace radon::quadrature {

namespace {

// 15-point Kronrod extension of 7-point Gauss-Legendre on [-1, 1].
// Odd-index abscissae are the embedded Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double value;
  double err;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  double hc = 0.5 * (b - a);
  double cen = 0.5 * (a + b);
  double fc = f(cen);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    double x = hc * kXgk[j];
    double f1 = f(cen - x);
    double f2 = f(cen + x);
    double fsum = f1 + f2;
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  Panel p;
  p.value = resk * hc;
  // |K15 - G7| dominates the true K15 error on resolved panels; the rounding
  // floor keeps the estimate honest once both rules agree to machine level.
  p.err = std::abs(resk - resg) * std::abs(hc) +
          10.0 * std::numeric_limits<double>::epsilon() * resabs * std::abs(hc);
  return p;
}

struct AdaptState {
  const std::function<double(double)>* f;
  long long evals = 0;
  long long max_evals = 400000;
  bool starved = false;  // a panel was accepted only because budget ran out
  NeumaierSum val;
  NeumaierSum err;
};

constexpr int kMaxDepth = 50;

void adapt_rec(AdaptState& st, double a, double b, double eps, int depth) {
  Panel p = gk15(*st.f, a, b);
  st.evals += 15;
  bool converged = p.err <= eps;
  if (converged || depth >= kMaxDepth || st.evals >= st.max_evals) {
    st.val.add(p.value);
    st.err.add(p.err);
    if (!converged) st.starved = true;
    return;
  }
  double m = 0.5 * (a + b);
  adapt_rec(st, a, m, 0.5 * eps, depth + 1);
  adapt_rec(st, m, b, 0.5 * eps, depth + 1);
}

// Adaptive refinement with an absolute error budget.
IntegralResult adapt(const std::function<double(double)>& f, double a,
                     double b, double eps_abs) {
  AdaptState st;
  st.f = &f;
  adapt_rec(st, a, b, eps_abs, 0);
  IntegralResult r{st.val.value(), st.err.value()};
  if (st.starved)
    throw AccuracyError("quadrature: refinement budget exhausted", r.value,
                        r.err_est);
  return r;
}

void check_rel_tol(double rel_tol) {
  if (!(rel_tol > 1e-14 && rel_tol < 1e-2))
    throw ArgumentError("quadrature: rel_tol must lie in (1e-14, 1e-2)");
}

// Absolute budget for a finite-interval integral: relative target against a
// two-level bootstrap estimate of the magnitude, floored at 1e-12.
double eps_budget(const std::function<double(double)>& f, double a, double b,
                  double rel_tol) {
  Panel whole = gk15(f, a, b);
  double m = 0.5 * (a + b);
  Panel l = gk15(f, a, m);
  Panel r = gk15(f, m, b);
  double scale = std::max(std::abs(l.value + r.value), std::abs(whole.value));
  return std::max(rel_tol * scale, 1e-12);
}

bool tame_exponent(double s) {
  if (s >= 2.0) return true;  // at least C^1 after any kinks; adapt copes
  double r = std::round(s);
  return s >= 0.0 && std::abs(s - r) < 1e-9;
}

// Integrate g over [a, b] where g ~ (t-a)^sigma at a and is smooth at b.
// Substitute t = a + v^2 until the endpoint exponent is tame: each pass maps
// sigma -> 2*sigma + 1, so -1/2 becomes 0 exactly and any sigma > -1
// escapes (-1, 2) in finitely many steps.
IntegralResult left_singular(std::function<double(double)> g, double a,
                             double b, double sigma, double eps_abs) {
  while (!tame_exponent(sigma)) {
    double aa = a;
    auto base = std::move(g);
    g = [base = std::move(base), aa](double v) {
      return base(aa + v * v) * 2.0 * v;
    };
    b = std::sqrt(b - a);
    a = 0.0;
    sigma = 2.0 * sigma + 1.0;
  }
  return adapt(g, a, b, eps_abs);
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, double rel_tol) {
  check_rel_tol(rel_tol);
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw ArgumentError("quadrature: endpoints must be finite");
  if (a == b) return {0.0, 0.0};
  if (a > b) throw ArgumentError("quadrature: need a <= b");
  return adapt(f, a, b, eps_budget(f, a, b, rel_tol));
}

IntegralResult integrate_singular(const SingularIntegrand& f, double a,
                                  double b, double rel_tol) {
  check_rel_tol(rel_tol);
  if (!f.core) throw ArgumentError("quadrature: empty integrand");
  if (!(f.left_exponent > -1.0) || !(f.right_exponent > -1.0))
    throw ArgumentError(
        "quadrature: endpoint exponents must be > -1 for integrability");
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw ArgumentError("quadrature: endpoints must be finite");
  if (a == b) return {0.0, 0.0};
  if (a > b) throw ArgumentError("quadrature: need a <= b");

  bool left_tame = tame_exponent(f.left_exponent);
  bool right_tame = tame_exponent(f.right_exponent);
  double eps = eps_budget(f.core, a, b, rel_tol);
  if (left_tame && right_tame) return adapt(f.core, a, b, eps);

  // Handle each end on its own half so the substitutions stay independent.
  double m = 0.5 * (a + b);
  IntegralResult left, right;
  if (left_tame) {
    left = adapt(f.core, a, m, 0.5 * eps);
  } else {
    left = left_singular(f.core, a, m, f.left_exponent, 0.5 * eps);
  }
  if (right_tame) {
    right = adapt(f.core, m, b, 0.5 * eps);
  } else {
    // Reflect so the singular end sits on the left: x -> a + b - x maps
    // [m, b] onto [a, m] and (b - t)^sigma into (x - a)^sigma.
    auto core = f.core;
    double ab = a + b;
    auto reflected = [core = std::move(core), ab](double x) {
      return core(ab - x);
    };
    right = left_singular(reflected, a, m, f.right_exponent, 0.5 * eps);
  }
  return {left.value + right.value, left.err_est + right.err_est};
}

IntegralResult integrate_semi_infinite(const std::function<double(double)>& f,
                                       double a,
                                       std::optional<double> decay_hint,
                                       double rel_tol) {
  check_rel_tol(rel_tol);
  if (!std::isfinite(a))
    throw ArgumentError("quadrature: lower endpoint must be finite");
  double w0 = 1.0;
  if (decay_hint && *decay_hint > 0.0) w0 = std::max(1.0, 3.0 / *decay_hint);

  // Doubling windows [a + w0 (2^k - 1), a + w0 (2^(k+1) - 1)].  Two
  // consecutive geometric decays certify the tail; a stall or growth after
  // many windows means the integral cannot be certified.
  constexpr int kMaxWindows = 44;
  NeumaierSum total;
  std::vector<double> cuts{a};
  std::vector<double> mags;
  double prev_mag = -1.0, prev_ratio = -1.0;
  double lo = a;
  double tail_bound = std::numeric_limits<double>::infinity();
  bool certified = false;
  for (int k = 0; k < kMaxWindows; ++k) {
    double hi = a + w0 * (std::pow(2.0, k + 1) - 1.0);
    double crude_eps =
        std::max(1e-9 * std::max(std::abs(total.value()), 1.0), 1e-13);
    IntegralResult win = adapt(f, lo, hi, crude_eps);
    total.add(win.value);
    cuts.push_back(hi);
    mags.push_back(std::abs(win.value));
    double mag = std::abs(win.value);
    if (prev_mag >= 0.0) {
      double ratio = (prev_mag > 0.0)
                         ? mag / prev_mag
                         : (mag > 0.0 ? std::numeric_limits<double>::infinity()
                                      : 0.0);
      bool two_decays = ratio <= 0.8 && prev_ratio >= 0.0 && prev_ratio <= 0.8;
      if (two_decays) {
        double rho = std::max(ratio, 1e-30);
        tail_bound = (mag == 0.0) ? 0.0 : mag * rho / (1.0 - rho);
        double target =
            0.25 * std::max(rel_tol * std::abs(total.value()), 1e-12);
        if (tail_bound <= target) {
          certified = true;
          break;
        }
      }
      prev_ratio = ratio;
    }
    prev_mag = mag;
    lo = hi;
  }
  if (!certified)
    throw AccuracyError(
        "quadrature: tail of semi-infinite integral could not be certified "
        "(divergent or too slowly decaying integrand)",
        total.value(), std::numeric_limits<double>::infinity());

  // Refine window by window, giving each window a budget proportional to its
  // crude share of the total.  A single pass over the whole certified range
  // would halve its budget at every bisection level, starving the near end
  // whenever certification pushed the range across many decades (slow
  // polynomial tails); proportional shares ask every window for the same
  // relative accuracy instead, which the panel rule meets uniformly.
  const double eps_total =
      std::max(rel_tol * std::abs(total.value()), 1e-12);
  double sum_mag = 0.0;
  for (double m : mags) sum_mag += m;
  const double eps_floor = 0.05 * eps_total / double(mags.size());
  NeumaierSum value, err;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    double share = sum_mag > 0.0 ? eps_total * (mags[j] / sum_mag) : 0.0;
    IntegralResult fin =
        adapt(f, cuts[j], cuts[j + 1], std::max(share, eps_floor));
    value.add(fin.value);
    err.add(fin.err_est);
  }
  return {value.value(), err.value() + tail_bound};
}

}  // namespace radon::quadrature
