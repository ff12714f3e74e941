#include <cmath>
#include <vector>

#include "doctest.h"
#include "radon/curve.hpp"
#include "radon/errors.hpp"
#include "radon/lorentz.hpp"
#include "radon/math_util.hpp"
#include "radon/profiles.hpp"
#include "radon/rng.hpp"
#include "radon/sphere.hpp"

using namespace radon;

TEST_CASE("normalization: the transform of 1 is 1 in every geometry") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{
           {2, 1}, {3, 2}, {4, 2}, {5, 3}, {6, 4}}) {
    SphereGeometry g(n, d);
    StepProfile one = StepProfile::indicator({{0.0, 1.0}});
    for (int i = 0; i <= 100; ++i) {
      double theta = (kPi / 2.0) * i / 100;
      CHECK(abel_step_closed(g, one, theta) ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("d = 1 arcsin fixture: chi_{[c/2, 1]} maps to 2/3 at cos = c") {
  SphereGeometry g(2, 1);
  double theta = 0.7;
  double c = std::cos(theta);
  StepProfile pr = StepProfile::indicator({{c / 2.0, 1.0}});
  CHECK(abel_step_closed(g, pr, theta) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(abel_step_closed_d1(g, pr, theta) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  // The general recurrence and the dedicated d = 1 form agree everywhere.
  for (double th : {0.1, 0.5, 1.0, 1.4}) {
    CHECK(abel_step_closed(g, pr, th) ==
          doctest::Approx(abel_step_closed_d1(g, pr, th)).epsilon(1e-12));
  }
}

TEST_CASE("pole continuity: theta = pi/2 evaluates the profile at 0") {
  SphereGeometry g(3, 2);
  CHECK(abel_step_closed(g, StepProfile::indicator({{0.0, 1.0}}), kPi / 2.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(abel_step_closed(g, StepProfile::indicator({{0.2, 0.5}}), kPi / 2.0) ==
        0.0);
}

TEST_CASE("closed form agrees with both quadrature forms") {
  const std::vector<std::pair<int, int>> geoms = {{2, 1}, {3, 2}, {4, 2},
                                                  {5, 3}};
  for (std::size_t gi = 0; gi < geoms.size(); ++gi) {
    SphereGeometry g(geoms[gi].first, geoms[gi].second);
    for (int i = 0; i < 10; ++i) {
      StepProfile pr = random_step_profile(derive_seed(90 + gi, i),
                                           1 + i % 4, 0.0, 1.0);
      std::vector<double> grid;
      for (int j = 0; j < 12; ++j)
        grid.push_back(0.01 + (kPi / 2.0 - 0.02) * j / 11.0);
      TransformCurve cu = abel_numeric(g, pr, grid);
      TransformCurve cr = abel_numeric_r(g, pr, grid);
      for (int j = 0; j < 12; ++j) {
        double exact = abel_step_closed(g, pr, grid[j]);
        for (double num : {cu.samples()[j].value, cr.samples()[j].value}) {
          if (exact > 1e-12)
            CHECK(std::abs(num - exact) <= 1e-8 * exact);
          else
            CHECK(std::abs(num) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("only the even part matters") {
  // Two full-sphere inputs with the same even part: a band on the northern
  // hemisphere vs the mirrored band on the southern one.
  StepProfile e1 = sphere_even_part({{0.2, 0.6}}, {1.0});
  StepProfile e2 = sphere_even_part({{-0.6, -0.2}}, {1.0});
  SphereGeometry g(3, 2);
  for (double th : {0.0, 0.4, 0.9, 1.3}) {
    CHECK(abel_step_closed(g, e1, th) ==
          doctest::Approx(abel_step_closed(g, e2, th)).epsilon(1e-13));
  }
  // Folding a symmetric input doubles nothing: chi_{[-b,b]} folds to chi_{[0,b)}.
  StepProfile sym = sphere_even_part({{-0.5, 0.5}}, {1.0});
  CHECK(sym.evaluate(0.25) == doctest::Approx(1.0));
  // Odd-like inputs with vanishing even part are rejected loudly.
  CHECK_THROWS_AS(sphere_even_part({}, {}), ArgumentError);
}

TEST_CASE("domain norm fixtures on S^3 measure") {
  SphereGeometry g(3, 2);
  StepProfile one = StepProfile::indicator({{0.0, 1.0}});
  CHECK(sphere_lorentz_norm(one, g, LorentzIndex(1.5, 1.0)) ==
        doctest::Approx(std::pow(kPi / 4.0, 2.0 / 3.0)).epsilon(1e-13));
  CHECK(weighted_endpoint_ratio(g, one) ==
        doctest::Approx(std::pow(4.0 / kPi, 2.0 / 3.0)).epsilon(1e-12));
  SphereGeometry g21(2, 1);
  CHECK(weighted_endpoint_ratio(g21, one) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("strong bounds at p in {1, 2, inf} hold with constant one-ish") {
  SphereGeometry g(3, 2);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    StepProfile pr = random_step_profile(seed, 1 + static_cast<int>(seed % 3),
                                         0.0, 1.0);
    for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
      double r = lp_ratio(g, pr, p);
      CHECK(r > 0.0);
      CHECK(r <= 1.0 + 1e-5);
    }
  }
}

TEST_CASE("weighted exponent relation n/p = (n-d)/q + d") {
  SphereGeometry g(4, 1);
  for (double p : {1.0, 1.5, 2.5}) {
    double q = weighted_lp_lq_exponent(g, p);
    CHECK(4.0 / p == doctest::Approx(3.0 / q + 1.0).epsilon(1e-12));
  }
  SphereGeometry g32(3, 2);
  double q = weighted_lp_lq_exponent(g32, 1.2);
  CHECK(3.0 / 1.2 == doctest::Approx(1.0 / q + 2.0).epsilon(1e-12));
  CHECK_THROWS(weighted_lp_lq_exponent(g32, g32.critical_p()));
  StepProfile pr = random_step_profile(4, 2, 0.0, 1.0);
  CHECK(std::isfinite(weighted_lp_lq_ratio(g32, pr, 1.2)));
}

TEST_CASE("flat caps: sup exactly one, vanishing critical norm") {
  SphereGeometry g(3, 2);
  std::vector<double> a_list = {0.5, 0.25, 0.125};
  std::vector<FlatCapRow> rows = counterexample_flat(g, a_list, g.critical_p());
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].sup_transform == doctest::Approx(1.0).epsilon(1e-12));
    // int_0^a sqrt(1-u^2) du = (a sqrt(1-a^2) + arcsin a)/2.
    double a = rows[i].a;
    double m = (a * std::sqrt(1.0 - a * a) + std::asin(a)) / 2.0;
    CHECK(rows[i].norm ==
          doctest::Approx(std::pow(m, 1.0 / g.critical_p())).epsilon(1e-10));
    if (i > 0) CHECK(rows[i].norm < rows[i - 1].norm);
  }
}

TEST_CASE("small caps: norms decay, lower bounds track the sup") {
  SphereGeometry g(2, 1);
  std::vector<CapRow> rows = counterexample_cap(g, 1.0, {100.0, 400.0, 1600.0});
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].norm > 0.0);
    CHECK(rows[i].lower_bound > 0.0);
    if (i > 0) CHECK(rows[i].norm < rows[i - 1].norm);
  }
}

TEST_CASE("inner-product reduction: quadrature side on monomials") {
  // d = 2 makes the weight uniform: int psi(s x) ds / 2 on [-1, 1].
  CatalanCheck c2 = catalan_check(2, {0.0, 0.0, 1.0}, 1.0, 20000, 11);
  CHECK(c2.rhs == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(c2.abs_diff <= 3.0 * c2.mc_stderr + 1e-9);
  // Odd monomial integrates to zero.
  CatalanCheck codd = catalan_check(2, {0.0, 1.0}, 1.0, 20000, 12);
  CHECK(codd.rhs == doctest::Approx(0.0).epsilon(1e-12));
  // Scaling in |x|: psi = t^2 at |x| = 2 gives 4/3.
  CatalanCheck cs = catalan_check(2, {0.0, 0.0, 1.0}, 2.0, 20000, 13);
  CHECK(cs.rhs == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK_THROWS_AS(catalan_check(1, {1.0}, 1.0, 100, 1), ArgumentError);
}

TEST_CASE("weak norm witness: A = 1/cos on S^3, d = 2") {
  SphereGeometry g(3, 2);
  std::vector<CurveSample> cs;
  for (int i = 0; i <= 4096; ++i) {
    double s = 1.55 * i / 4096;
    cs.push_back({s, 1.0 / std::cos(s), 0.0});
  }
  double w = weak_norm(TransformCurve(g.tag(), std::move(cs)), g);
  CHECK(w == doctest::Approx(std::pow(kPi / 4.0, 1.0 / 3.0)).epsilon(2e-4));
  // Constant curve 1: sup at lambda -> 0 gives total measure^{1/(d+1)},
  // which for (3,2) is the same (pi/4)^{1/3}.
  std::vector<CurveSample> flat;
  for (int i = 0; i <= 256; ++i) flat.push_back({kPi / 2.0 * i / 256, 1.0, 0.0});
  double wf = weak_norm(TransformCurve(g.tag(), std::move(flat)), g);
  CHECK(wf == doctest::Approx(std::pow(kPi / 4.0, 1.0 / 3.0)).epsilon(1e-4));
}

TEST_CASE("catalan constant accessor") {
  SphereGeometry g2(5, 2);
  CHECK(g2.catalan_constant() == doctest::Approx(0.5).epsilon(1e-13));
  SphereGeometry g3(5, 3);
  // Gamma(2)/(sqrt(pi) Gamma(3/2)) = 2/pi.
  CHECK(g3.catalan_constant() == doctest::Approx(2.0 / kPi).epsilon(1e-13));
}

TEST_CASE("regression anchor: a dense seeded weighted ratio stays put") {
  SphereGeometry geom(4, 1);
  StepProfile p = random_step_profile(derive_seed(5, 0), 16, 0.0, 1.0);
  CHECK(weighted_endpoint_ratio(geom, p) ==
        doctest::Approx(0.88941167864863702).epsilon(1e-12));
}
