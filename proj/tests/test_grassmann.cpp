#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "radon/errors.hpp"
#include "radon/grassmann.hpp"
#include "radon/lorentz.hpp"
#include "radon/math_util.hpp"
#include "radon/profiles.hpp"
#include "radon/rng.hpp"

using namespace radon;

TEST_CASE("geometry validation and critical index") {
  GrassmannGeometry g(5, 3, 1);
  CHECK(g.radial_power() == 2);
  CHECK(g.critical_p() == doctest::Approx((5.0 - 1.0) / (3.0 - 1.0)));
  CHECK_THROWS_AS(GrassmannGeometry(3, 3, 0), ArgumentError);
  CHECK_THROWS_AS(GrassmannGeometry(3, 2, 2), ArgumentError);
  CHECK_THROWS_AS(GrassmannGeometry(3, 0, 0), ArgumentError);
}

TEST_CASE("closed form on the unit ball: pi (1 - s^2)_+ when d - k = 2") {
  for (auto [n, d, k] : std::vector<std::array<int, 3>>{
           {3, 2, 0}, {4, 2, 0}, {6, 4, 2}}) {
    GrassmannGeometry g(n, d, k);
    StepProfile ball = StepProfile::indicator({{0.0, 1.0}});
    CHECK(abel_step_closed(g, ball, 0.0) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(abel_step_closed(g, ball, 0.5) ==
          doctest::Approx(kPi * 0.75).epsilon(1e-14));
    CHECK(abel_step_closed(g, ball, 1.0) == 0.0);
    CHECK(abel_step_closed(g, ball, 2.0) == 0.0);
  }
  // d - k = 1: A(s) = 2 sqrt(1 - s^2).
  GrassmannGeometry g1(3, 2, 1);
  StepProfile ball = StepProfile::indicator({{0.0, 1.0}});
  CHECK(abel_step_closed(g1, ball, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(abel_step_closed(g1, ball, 0.6) ==
        doctest::Approx(1.6).epsilon(1e-14));
}

TEST_CASE("closed form agrees with quadrature across geometries") {
  const std::vector<std::array<int, 3>> geoms = {
      {3, 2, 0}, {4, 2, 0}, {4, 3, 1}, {5, 3, 0}, {6, 4, 2}};
  for (std::size_t gi = 0; gi < geoms.size(); ++gi) {
    GrassmannGeometry g(geoms[gi][0], geoms[gi][1], geoms[gi][2]);
    for (int i = 0; i < 20; ++i) {
      StepProfile pr = random_step_profile(derive_seed(50 + gi, i),
                                           1 + i % 6, 0.0, 4.0);
      std::vector<double> s_grid;
      for (int j = 0; j < 20; ++j) s_grid.push_back(0.01 + 4.3 * j / 19.0);
      TransformCurve curve = abel_numeric(g, pr, s_grid);
      for (int j = 0; j < 20; ++j) {
        double exact = abel_step_closed(g, pr, s_grid[j]);
        double num = curve.samples()[j].value;
        if (exact > 1e-12)
          CHECK(std::abs(num - exact) <= 1e-8 * exact);
        else
          CHECK(std::abs(num) <= 1e-10);
      }
    }
  }
}

TEST_CASE("smooth gaussian profile: transform is pi e^{-s^2} when m = 2") {
  GrassmannGeometry g(4, 2, 0);
  RadialProfile gauss([](double r) { return std::exp(-r * r); },
                      std::numeric_limits<double>::infinity(), 2.0);
  std::vector<double> s_grid = {0.0, 0.4, 1.0, 1.7};
  TransformCurve curve = abel_numeric(g, gauss, s_grid);
  for (std::size_t j = 0; j < s_grid.size(); ++j) {
    double exact = kPi * std::exp(-s_grid[j] * s_grid[j]);
    CHECK(curve.samples()[j].value == doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("domain norm fixture: unit ball critical norm in G(3,0)") {
  GrassmannGeometry g(3, 2, 0);
  StepProfile ball = StepProfile::indicator({{0.0, 1.0}});
  double v = domain_lorentz_norm(g, ball, LorentzIndex(1.5, 1.0));
  CHECK(v == doctest::Approx(std::pow(4.0 * kPi / 3.0, 2.0 / 3.0))
                 .epsilon(1e-13));
}

TEST_CASE("truncated critical norm: monotone, anchored at the full norm") {
  GrassmannGeometry g(3, 2, 0);
  StepProfile pr = StepProfile::indicator({{0.5, 1.0}, {2.0, 3.0}});
  double full = domain_lorentz_norm(g, pr, LorentzIndex(g.critical_p(), 1.0));
  CHECK(truncated_critical_norm(g, pr, 0.0) ==
        doctest::Approx(full).epsilon(1e-12));
  double prev = full;
  for (double s : {0.6, 1.5, 2.2, 2.9}) {
    double t = truncated_critical_norm(g, pr, s);
    CHECK(t <= prev * (1.0 + 1e-12));
    prev = t;
  }
  CHECK(truncated_critical_norm(g, pr, 3.5) == 0.0);
}

TEST_CASE("endpoint fixture: unit ball ratio pi / (4 pi / 3)^{2/3}") {
  GrassmannGeometry g(3, 2, 0);
  EndpointRatio er = endpoint_ratio(g, StepProfile::indicator({{0.0, 1.0}}));
  double expected = kPi / std::pow(4.0 * kPi / 3.0, 2.0 / 3.0);
  CHECK(er.sharp_ratio == doctest::Approx(expected).epsilon(1e-12));
  CHECK(er.plain_ratio == doctest::Approx(expected).epsilon(1e-12));
  CHECK(er.sharp_arg_s == 0.0);
  // Sharp ratio dominates the plain ratio by construction.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    StepProfile pr = random_step_profile(seed, 3, 0.0, 4.0);
    EndpointRatio e = endpoint_ratio(g, pr);
    CHECK(e.sharp_ratio >= e.plain_ratio * (1.0 - 1e-12));
    CHECK(std::isfinite(e.sharp_ratio));
  }
}

TEST_CASE("L^1 -> L^1 mass identity and dilation invariance") {
  GrassmannGeometry g(4, 2, 0);
  CHECK(lp_lq_exponent(g, 1.0) == doctest::Approx(1.0));
  for (std::uint64_t seed = 3; seed <= 8; ++seed) {
    StepProfile pr = random_step_profile(seed, 2, 0.2, 3.0);
    CHECK(lp_lq_ratio(g, pr, 1.0) == doctest::Approx(1.0).epsilon(1e-7));
  }
  // Dilation: ratio at the critical exponent pair is scale-free.
  StepProfile base({{0.3, 0.8}, {1.1, 2.2}}, {1.5, 0.7});
  double p = 0.5 * (1.0 + g.critical_p());
  double r1 = lp_lq_ratio(g, base, p);
  for (double lambda : {2.0, 4.0}) {
    std::vector<Interval> iv;
    for (const Interval& i : base.intervals())
      iv.push_back({i.lower / lambda, i.upper / lambda});
    double r = lp_lq_ratio(g, StepProfile(iv, base.heights()), p);
    CHECK(std::abs(r - r1) <= 1e-9 * r1);
  }
  CHECK_THROWS(lp_lq_ratio(g, base, g.critical_p()));
}

TEST_CASE("domain measure density matches the sphere area factor") {
  GrassmannGeometry g(3, 2, 0);
  RadialMeasure mu = grassmann_domain_measure(g);
  CHECK(mu.density(1.0) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(mu.integrate(0.0, 1.0) ==
        doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  RadialMeasure nu = grassmann_target_measure(g);
  CHECK(nu.density(2.0) > 0.0);
}

TEST_CASE("regression anchor: a dense seeded endpoint ratio stays put") {
  // Frozen output of the exact closed-form pipeline on a fixed 64-annulus
  // profile; any drift here means the arithmetic changed, not the input.
  GrassmannGeometry geom(5, 3, 0);
  StepProfile p = random_step_profile(derive_seed(11, 0), 64, 0.0, 4.0);
  EndpointRatio er = endpoint_ratio(geom, p);
  CHECK(er.sharp_ratio == doctest::Approx(1.1328163797837467).epsilon(1e-12));
  CHECK(er.plain_ratio == doctest::Approx(1.1328163797837467).epsilon(1e-12));
  CHECK(er.sharp_arg_s == 0.0);
}
