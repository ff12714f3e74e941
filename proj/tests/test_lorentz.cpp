#include <cmath>
#include <vector>

#include "doctest.h"
#include "radon/errors.hpp"
#include "radon/lorentz.hpp"
#include "radon/math_util.hpp"
#include "radon/profiles.hpp"
#include "radon/rng.hpp"

using namespace radon;

constexpr double kInf = std::numeric_limits<double>::infinity();

namespace {

// General (non-indicator) random step profile with varied heights.
StepProfile random_general_step(std::uint64_t seed, int count, double lo,
                                double hi) {
  StepProfile shape = random_step_profile(seed, count, lo, hi);
  CounterRng rng(derive_seed(seed, 999));
  std::vector<double> heights;
  for (int i = 0; i < count; ++i)
    heights.push_back(rng.uniform(static_cast<std::uint64_t>(i), 0.1, 3.0));
  return StepProfile(shape.intervals(), heights);
}

}  // namespace

TEST_CASE("two-step fixture: ||.||_{2,1} = 1 + sqrt(3)") {
  StepProfile f({{0.0, 1.0}, {1.0, 3.0}}, {2.0, 1.0});
  RadialMeasure leb = RadialMeasure::lebesgue();
  double v = lorentz_norm(f, leb, LorentzIndex(2.0, 1.0));
  CHECK(v == doctest::Approx(1.0 + std::sqrt(3.0)).epsilon(1e-12));
  double w = lorentz_norm_via_distribution(f, leb, LorentzIndex(2.0, 1.0));
  CHECK(w == doctest::Approx(v).epsilon(1e-12));
  // Weak norm of the same fixture: max(2 * 1^{1/2}, 1 * 3^{1/2}) = 2.
  CHECK(lorentz_norm(f, leb, LorentzIndex(2.0, kInf)) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("the two norm expressions agree on random families") {
  RadialMeasure leb = RadialMeasure::lebesgue();
  RadialMeasure flat = RadialMeasure::power(4.0 * kPi, 2.0);
  const std::vector<LorentzIndex> indices = {
      {1.0, 1.0}, {1.5, 1.0}, {2.0, 1.0}, {2.0, 2.0},
      {3.0, 1.5}, {1.5, 3.0}, {2.5, 2.5}};
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    StepProfile f = random_general_step(seed, 1 + static_cast<int>(seed % 5),
                                        0.0, 4.0);
    for (const RadialMeasure* mu : {&leb, &flat}) {
      for (const LorentzIndex& idx : indices) {
        double a = lorentz_norm(f, *mu, idx);
        double b = lorentz_norm_via_distribution(f, *mu, idx);
        CHECK(std::abs(a - b) <= 1e-9 * std::max(a, 1e-12));
      }
    }
  }
}

TEST_CASE("indicators: ||chi||_{p,1} and weak norm equal measure^{1/p}") {
  RadialMeasure flat = RadialMeasure::power(4.0 * kPi, 2.0);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    StepProfile chi = random_step_profile(seed, 1 + static_cast<int>(seed % 4),
                                          0.0, 3.0);
    double m = weighted_measure(chi, flat);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      double v1 = lorentz_norm(chi, flat, LorentzIndex(p, 1.0));
      double vw = lorentz_norm(chi, flat, LorentzIndex(p, kInf));
      CHECK(std::abs(v1 - std::pow(m, 1.0 / p)) <=
            1e-12 * std::max(1.0, v1));
      CHECK(std::abs(vw - std::pow(m, 1.0 / p)) <=
            1e-12 * std::max(1.0, vw));
    }
  }
}

TEST_CASE("norms are nonincreasing in the second exponent") {
  RadialMeasure leb = RadialMeasure::lebesgue();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    StepProfile f = random_general_step(seed, 3, 0.0, 5.0);
    for (double p : {1.5, 2.0, 4.0}) {
      double prev = std::numeric_limits<double>::infinity();
      for (double q : {1.0, 1.5, 2.0, 4.0, 16.0}) {
        double v = lorentz_norm(f, leb, LorentzIndex(p, q));
        CHECK(v <= prev * (1.0 + 1e-9));
        prev = v;
      }
      double weak = lorentz_norm(f, leb, LorentzIndex(p, kInf));
      CHECK(weak <= prev * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("p = q recovers the plain Lebesgue norm") {
  RadialMeasure leb = RadialMeasure::lebesgue();
  StepProfile f({{0.0, 2.0}, {3.0, 4.0}}, {2.0, 0.5});
  for (double p : {1.0, 2.0, 3.0}) {
    double direct = std::pow(std::pow(2.0, p) * 2.0 + std::pow(0.5, p) * 1.0,
                             1.0 / p);
    CHECK(lorentz_norm(f, leb, LorentzIndex(p, p)) ==
          doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("rearrangement preserves the distribution function") {
  RadialMeasure leb = RadialMeasure::lebesgue();
  StepProfile f({{0.5, 1.0}, {2.0, 4.0}, {5.0, 5.5}}, {3.0, 1.0, 2.0});
  StepProfile g = decreasing_rearrangement(f, leb);
  // Heights strictly decreasing, support starting at 0.
  CHECK(g.support_lower() == 0.0);
  const std::vector<double>& h = g.heights();
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] < h[i - 1]);
  for (double lambda : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
    CHECK(distribution_function(f, leb, lambda) ==
          doctest::Approx(distribution_function(g, leb, lambda))
              .epsilon(1e-12));
  }
}

TEST_CASE("lorentz index validation") {
  CHECK_THROWS_AS(LorentzIndex(0.5, 1.0), ArgumentError);
  CHECK_THROWS_AS(LorentzIndex(2.0, 0.5), ArgumentError);
}

TEST_CASE("quantized tables approach the exact step norm") {
  StepProfile exact({{0.2, 1.0}, {1.5, 2.0}}, {2.0, 1.0});
  RadialProfile table(
      [&exact](double t) { return exact.evaluate(t); }, 2.0, std::nullopt);
  std::optional<StepProfile> q = quantize_profile(table, 1 << 14);
  REQUIRE(q.has_value());
  RadialMeasure leb = RadialMeasure::lebesgue();
  LorentzIndex idx(1.5, 1.0);
  CHECK(lorentz_norm(*q, leb, idx) ==
        doctest::Approx(lorentz_norm(exact, leb, idx)).epsilon(2e-3));
  RadialProfile zero([](double) { return 0.0; }, 1.0, std::nullopt);
  CHECK_FALSE(quantize_profile(zero, 64).has_value());
}
