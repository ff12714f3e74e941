#include "radon/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "radon/errors.hpp"
#include "radon/math_util.hpp"
#include "radon/quadrature.hpp"
#include "radon/rng.hpp"

namespace radon {

namespace {

bool finite(double x) { return std::isfinite(x); }

bool nonneg_integer(double x) {
  return x >= 0.0 && std::abs(x - std::round(x)) < 1e-12;
}

// Antiderivatives vanishing at 0, by the standard power-reduction
// recurrences.  All take integer m >= 0.
double int_sinh_pow(int m, double x) {
  // S_m(x) = sinh^(m-1)(x) cosh(x)/m - (m-1)/m S_{m-2}(x); S_0 = x,
  // S_1 = cosh x - 1.
  if (m == 0) return x;
  if (m == 1) return std::cosh(x) - 1.0;
  return std::pow(std::sinh(x), m - 1) * std::cosh(x) / m -
         double(m - 1) / m * int_sinh_pow(m - 2, x);
}

double int_sin_pow(int m, double x) {
  if (m == 0) return x;
  if (m == 1) return 1.0 - std::cos(x);
  return -std::pow(std::sin(x), m - 1) * std::cos(x) / m +
         double(m - 1) / m * int_sin_pow(m - 2, x);
}

double int_cos_pow(int m, double x) {
  if (m == 0) return x;
  if (m == 1) return std::sin(x);
  return std::pow(std::cos(x), m - 1) * std::sin(x) / m +
         double(m - 1) / m * int_cos_pow(m - 2, x);
}

}  // namespace

StepProfile::StepProfile(std::vector<Interval> intervals,
                         std::vector<double> heights)
    : intervals_(std::move(intervals)), heights_(std::move(heights)) {
  if (intervals_.empty())
    throw ArgumentError("StepProfile: need at least one interval");
  if (intervals_.size() != heights_.size())
    throw ArgumentError("StepProfile: intervals/heights size mismatch");
  if (!(intervals_.front().lower >= 0.0))
    throw ArgumentError("StepProfile: intervals must start at >= 0");
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const Interval& iv = intervals_[i];
    if (!finite(iv.lower) || !finite(iv.upper) || !(iv.lower < iv.upper))
      throw ArgumentError("StepProfile: intervals must be finite with a < b");
    if (i + 1 < intervals_.size() && !(iv.upper <= intervals_[i + 1].lower))
      throw ArgumentError("StepProfile: intervals must be disjoint and sorted");
    if (!finite(heights_[i]) || !(heights_[i] > 0.0))
      throw ArgumentError("StepProfile: heights must be finite and > 0");
  }
}

StepProfile StepProfile::indicator(std::vector<Interval> intervals) {
  std::vector<double> h(intervals.size(), 1.0);
  return StepProfile(std::move(intervals), std::move(h));
}

bool StepProfile::is_indicator() const {
  for (double h : heights_)
    if (h != 1.0) return false;
  return true;
}

double StepProfile::max_height() const {
  return *std::max_element(heights_.begin(), heights_.end());
}

double StepProfile::evaluate(double t) const {
  if (!(t >= 0.0)) throw ArgumentError("StepProfile: evaluate needs t >= 0");
  // First interval whose lower bound exceeds t; the one before can hold t.
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), t,
      [](double v, const Interval& iv) { return v < iv.lower; });
  if (it == intervals_.begin()) return 0.0;
  std::size_t i = std::size_t(it - intervals_.begin()) - 1;
  return (t < intervals_[i].upper) ? heights_[i] : 0.0;
}

std::vector<double> StepProfile::breakpoints() const {
  std::vector<double> b;
  b.reserve(2 * intervals_.size());
  for (const Interval& iv : intervals_) {
    b.push_back(iv.lower);
    b.push_back(iv.upper);
  }
  return b;
}

RadialProfile::RadialProfile(std::function<double(double)> evaluator,
                             double support_upper,
                             std::optional<double> decay_hint)
    : evaluator_(std::move(evaluator)),
      support_upper_(support_upper),
      decay_hint_(decay_hint) {
  if (!evaluator_) throw ArgumentError("RadialProfile: empty evaluator");
  if (std::isnan(support_upper_) || support_upper_ <= 0.0)
    throw ArgumentError("RadialProfile: support_upper must be > 0");
  if (decay_hint_ && !(*decay_hint_ > 0.0))
    throw ArgumentError("RadialProfile: decay_hint must be > 0");
}

RadialProfile RadialProfile::from_table(std::vector<double> ts,
                                        std::vector<double> values,
                                        double support_upper) {
  if (ts.size() != values.size() || ts.size() < 2)
    throw ArgumentError("RadialProfile: table needs >= 2 nodes");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!finite(ts[i]) || ts[i] < 0.0)
      throw ArgumentError("RadialProfile: table abscissae must be >= 0");
    if (i > 0 && !(ts[i] > ts[i - 1]))
      throw ArgumentError("RadialProfile: table abscissae must increase");
    if (!finite(values[i]) || values[i] < 0.0)
      throw ArgumentError("RadialProfile: table values must be >= 0");
  }
  auto eval = [ts = std::move(ts), values = std::move(values)](double t) {
    if (t <= ts.front()) return values.front();
    if (t >= ts.back()) return 0.0;
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t i = std::size_t(it - ts.begin()) - 1;
    double w = (t - ts[i]) / (ts[i + 1] - ts[i]);
    return values[i] + w * (values[i + 1] - values[i]);
  };
  return RadialProfile(std::move(eval), support_upper);
}

double RadialProfile::evaluate(double t) const {
  if (!(t >= 0.0)) throw ArgumentError("RadialProfile: evaluate needs t >= 0");
  if (t >= support_upper_) return 0.0;
  double v = evaluator_(t);
  if (std::isnan(v) || v < 0.0)
    throw ArgumentError("RadialProfile: evaluator produced a negative value");
  return v;
}

RadialMeasure::RadialMeasure(double c, double alpha, double beta, double gamma,
                             double delta, double epsilon, double t_min,
                             double t_max)
    : c_(c),
      alpha_(alpha),
      beta_(beta),
      gamma_(gamma),
      delta_(delta),
      epsilon_(epsilon),
      t_min_(t_min),
      t_max_(t_max) {
  if (!(c_ > 0.0) || !finite(c_))
    throw ArgumentError("RadialMeasure: constant must be finite and > 0");
  if (std::isnan(t_min_) || std::isnan(t_max_) || !(t_min_ < t_max_) ||
      t_min_ < 0.0)
    throw ArgumentError("RadialMeasure: need 0 <= t_min < t_max");
  for (double e : {alpha_, beta_, gamma_, delta_, epsilon_})
    if (!finite(e)) throw ArgumentError("RadialMeasure: exponents must be finite");
}

RadialMeasure RadialMeasure::lebesgue(double t_min, double t_max) {
  return RadialMeasure(1.0, 0, 0, 0, 0, 0, t_min, t_max);
}

RadialMeasure RadialMeasure::power(double c, double alpha, double t_min,
                                   double t_max) {
  return RadialMeasure(c, alpha, 0, 0, 0, 0, t_min, t_max);
}

double RadialMeasure::density(double t) const {
  double w = c_;
  if (alpha_ != 0.0) w *= std::pow(t, alpha_);
  if (beta_ != 0.0) w *= std::pow(std::sinh(t), beta_);
  if (gamma_ != 0.0) w *= std::pow(std::cosh(t), gamma_);
  if (delta_ != 0.0) w *= std::pow(std::sin(t), delta_);
  if (epsilon_ != 0.0) w *= std::pow(std::cos(t), epsilon_);
  return w;
}

double RadialMeasure::integrate(double a, double b) const {
  if (!(a <= b)) throw ArgumentError("RadialMeasure: need a <= b");
  if (!finite(a) || !finite(b))
    throw ArgumentError("RadialMeasure: integration endpoints must be finite");
  double slack = 1e-12 * std::max(1.0, std::abs(b));
  if (a < t_min_ - slack || b > t_max_ + slack)
    throw DomainError("RadialMeasure: interval leaves the measure's domain");
  a = std::max(a, t_min_);
  b = std::min(b, t_max_);
  if (a == b) return 0.0;

  // Local vanishing exponents at the two endpoints: t^alpha, sinh^beta and
  // sin^delta all vanish linearly at t = 0; sin^delta at multiples of pi;
  // cos^epsilon at odd multiples of pi/2.
  auto vanish_exponent = [&](double t) {
    double e = 0.0;
    if (t == 0.0) e += alpha_ + beta_ + delta_;
    else {
      if (delta_ != 0.0 && std::abs(std::remainder(t, kPi)) < 1e-12) e += delta_;
      if (epsilon_ != 0.0 &&
          std::abs(std::remainder(t - kPi / 2, kPi)) < 1e-12)
        e += epsilon_;
    }
    return e;
  };
  double sig_left = vanish_exponent(a);
  double sig_right = vanish_exponent(b);
  if (sig_left <= -1.0 || sig_right <= -1.0)
    throw IntegrabilityError("RadialMeasure: non-integrable density at an endpoint");
  if (delta_ < 0.0 || epsilon_ < 0.0) {
    // Negative-exponent trigonometric factors must not vanish inside (a, b).
    auto crosses = [&](double phase) {
      double first = std::ceil((a - phase) / kPi) * kPi + phase;
      return first < b - 1e-12 && first > a + 1e-12;
    };
    if ((delta_ < 0.0 && crosses(0.0)) || (epsilon_ < 0.0 && crosses(kPi / 2)))
      throw IntegrabilityError(
          "RadialMeasure: density singular inside the interval");
  }

  bool pure_power = beta_ == 0.0 && gamma_ == 0.0 && delta_ == 0.0 &&
                    epsilon_ == 0.0;
  if (pure_power) {
    if (alpha_ == 0.0) return c_ * (b - a);
    if (alpha_ == -1.0) return c_ * std::log(b / a);
    double e = alpha_ + 1.0;
    return c_ * (std::pow(b, e) - std::pow(a, e)) / e;
  }
  if (alpha_ == 0.0 && gamma_ == 0.0 && delta_ == 0.0 && epsilon_ == 0.0 &&
      nonneg_integer(beta_)) {
    int m = int(std::lround(beta_));
    return c_ * (int_sinh_pow(m, b) - int_sinh_pow(m, a));
  }
  if (alpha_ == 0.0 && beta_ == 0.0 && gamma_ == 0.0 && epsilon_ == 0.0 &&
      nonneg_integer(delta_)) {
    int m = int(std::lround(delta_));
    return c_ * (int_sin_pow(m, b) - int_sin_pow(m, a));
  }
  if (alpha_ == 0.0 && beta_ == 0.0 && gamma_ == 0.0 && delta_ == 0.0 &&
      nonneg_integer(epsilon_)) {
    int m = int(std::lround(epsilon_));
    return c_ * (int_cos_pow(m, b) - int_cos_pow(m, a));
  }

  quadrature::SingularIntegrand integrand;
  integrand.core = [this](double t) { return density(t); };
  integrand.left_exponent = sig_left;
  integrand.right_exponent = sig_right;
  return quadrature::integrate_singular(integrand, a, b, 1e-12).value;
}

double weighted_measure(const StepProfile& profile,
                        const RadialMeasure& measure) {
  NeumaierSum sum;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Interval& iv = profile.intervals()[i];
    sum.add(profile.heights()[i] * measure.integrate(iv.lower, iv.upper));
  }
  return sum.value();
}

StepProfile random_step_profile(std::uint64_t seed, int count, double low,
                                double high) {
  if (count < 1) throw ArgumentError("random_step_profile: count must be >= 1");
  if (!finite(low) || !finite(high) || !(low < high) || low < 0.0)
    throw ArgumentError("random_step_profile: need 0 <= low < high");
  std::vector<double> pts(std::size_t(2) * count);
  // Ties among 53-bit uniforms are astronomically unlikely; when they do
  // happen, redraw the whole batch from a salted stream so the result stays
  // a pure function of (seed, count, range).
  for (std::uint64_t salt = 0;; ++salt) {
    CounterRng draw(seed, salt);
    for (std::size_t i = 0; i < pts.size(); ++i)
      pts[i] = draw.uniform(i, low, high);
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) == pts.end()) break;
  }
  std::vector<Interval> iv(count);
  for (int i = 0; i < count; ++i)
    iv[i] = {pts[2 * std::size_t(i)], pts[2 * std::size_t(i) + 1]};
  return StepProfile::indicator(std::move(iv));
}

double profile_evaluate(const StepProfile& profile, double t) {
  return profile.evaluate(t);
}

double profile_evaluate(const RadialProfile& profile, double t) {
  return profile.evaluate(t);
}

AnyProfile parse_profile(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("profile: invalid JSON: ") + e.what());
  }
  try {
    std::string type = j.at("type").get<std::string>();
    if (type == "step") {
      std::vector<Interval> iv;
      for (const auto& pair : j.at("intervals")) {
        if (!pair.is_array() || pair.size() != 2)
          throw ArgumentError("profile: each interval must be a pair [a, b]");
        iv.push_back({pair[0].get<double>(), pair[1].get<double>()});
      }
      std::vector<double> h = j.at("heights").get<std::vector<double>>();
      return StepProfile(std::move(iv), std::move(h));
    }
    if (type == "table") {
      std::vector<double> ts = j.at("ts").get<std::vector<double>>();
      std::vector<double> vals = j.at("values").get<std::vector<double>>();
      double su = j.at("support_upper").get<double>();
      RadialProfile p = RadialProfile::from_table(std::move(ts),
                                                  std::move(vals), su);
      if (j.contains("decay_hint"))
        return RadialProfile([p](double t) { return p.evaluate(t); },
                             p.support_upper(),
                             j.at("decay_hint").get<double>());
      return p;
    }
    throw ArgumentError("profile: type must be \"step\" or \"table\"");
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("profile: malformed fields: ") + e.what());
  }
}

AnyProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("profile: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_profile(ss.str());
}

}  // namespace radon
