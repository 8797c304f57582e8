#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "rsl/cubic.hpp"
#include "test_util.hpp"

using namespace rsl;
using rsl::test::Rng;
using R = Rational;

TEST_CASE("phi_cubic coefficients") {
  auto c = phi_cubic(SasakiTriple<R>{R(2), R(3), {R(1), R(1)}});
  CHECK(c[0] == 4);
  CHECK(c[1] == 8);
  CHECK(c[2] == 1);
  CHECK(c[3] == -2);
}

TEST_CASE("solve_phi on known configurations") {
  SECTION("(0, 0, a=2): single real root phi = 1") {
    auto rs = solve_phi({0, 0, {2, 0}});
    REQUIRE(rs.roots.size() == 1);
    CHECK(rs.complex_pair_present);
    CHECK_THAT(rs.roots[0].value, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK(rs.roots[0].multiplicity == 1);
  }
  SECTION("cusp (-3, -3, a=2): triple root phi = 1") {
    auto rs = solve_phi({-3, -3, {2, 0}});
    REQUIRE(rs.roots.size() == 1);
    CHECK(rs.roots[0].multiplicity == 3);
    CHECK_THAT(rs.roots[0].value, Catch::Matchers::WithinAbs(1.0, 1e-9));
  }
  SECTION("(0, rho=1, a=0): roots {-1/2, 0, 1/2}") {
    auto rs = solve_phi({0, 1, {0, 0}});
    REQUIRE(rs.roots.size() == 3);
    CHECK_THAT(rs.roots[0].value, Catch::Matchers::WithinAbs(-0.5, 1e-12));
    CHECK_THAT(rs.roots[1].value, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(rs.roots[2].value, Catch::Matchers::WithinAbs(0.5, 1e-12));
  }
  SECTION("a = 0 in general: {0} together with (-tau +- sqrt(rho))/2") {
    Rng rng(3);
    for (int i = 0; i < 30; ++i) {
      double tau = rng.uniform(-3, 3), rho = rng.uniform(-3, 3);
      auto rs = solve_phi({tau, rho, {0, 0}});
      std::vector<double> expect{0.0};
      if (rho > 0) {
        expect.push_back((-tau + std::sqrt(rho)) / 2);
        expect.push_back((-tau - std::sqrt(rho)) / 2);
      } else if (rho == 0) {
        expect.push_back(-tau / 2);
      }
      std::sort(expect.begin(), expect.end());
      int total = 0;
      for (auto& r : rs.roots) total += r.multiplicity;
      std::vector<double> got;
      for (auto& r : rs.roots)
        for (int k = 0; k < r.multiplicity; ++k) got.push_back(r.value);
      // compare as multisets up to clustering
      for (double e : expect) {
        bool found = false;
        for (double g : got)
          if (std::abs(g - e) < 1e-7 * (1 + std::abs(e))) found = true;
        CHECK(found);
      }
    }
  }
  SECTION("roots actually satisfy the cubic") {
    Rng rng(17);
    for (int i = 0; i < 40; ++i) {
      SasakiTriple<double> t{rng.uniform(-3, 3), rng.uniform(-3, 3),
                             {rng.uniform(-2, 2), rng.uniform(-2, 2)}};
      for (auto& r : solve_phi(t).roots)
        CHECK_THAT(phi_cubic_residual(t, r.value), Catch::Matchers::WithinAbs(0.0, 1e-7));
    }
  }
}

TEST_CASE("discriminant values") {
  CHECK(discriminant(SasakiTriple<R>{}) == 0);
  CHECK(discriminant(SasakiTriple<R>{R(-3), R(-3), {R(2), R(0)}}) == 0);
  CHECK(discriminant(SasakiTriple<R>{R(0), R(0), {R(2), R(0)}}) == 432);
  CHECK(discriminant_a2(R(-3), R(-3)) == 0);
  CHECK(discriminant_a2(R(0), R(0)) == -432);
}

TEST_CASE("discriminant equals -1/16 of the standard cubic discriminant (exact)") {
  Rng rng(23);
  for (int i = 0; i < 30; ++i) {
    auto t = rng.sasaki();
    auto c = phi_cubic(t);
    R std_disc = cubic_poly_discriminant(c[0], c[1], c[2], c[3]);
    CHECK(discriminant(t) == -std_disc / 16);
  }
}

TEST_CASE("a = 2 specialization sign relation (exact)") {
  Rng rng(41);
  for (int i = 0; i < 10; ++i) {
    R tau = rng.rat(), rho = rng.rat();
    CHECK(discriminant(SasakiTriple<R>{tau, rho, {R(2), R(0)}}) == -discriminant_a2(tau, rho));
  }
}

TEST_CASE("discriminant homogeneity exponent is 12 (exact)") {
  // Under tau -> |c|^2 tau, a -> c cbar^2 a, rho -> |c|^4 rho the discriminant
  // picks up |c|^12.
  Rng rng(43);
  for (int i = 0; i < 20; ++i) {
    auto t = rng.sasaki();
    auto c = rng.crat_nonzero();
    R m2 = c.norm();
    R factor = m2 * m2 * m2 * m2 * m2 * m2;
    CHECK(discriminant(apply_scaling(t, ScalingAction<R>{c})) == factor * discriminant(t));
  }
}

TEST_CASE("discriminant sign matches the real-root count") {
  Rng rng(47);
  int three = 0, one = 0;
  for (int i = 0; i < 60; ++i) {
    SasakiTriple<double> t{rng.uniform(-3, 3), rng.uniform(-3, 3),
                           {rng.uniform(-2, 2), rng.uniform(-2, 2)}};
    double d = discriminant(t);
    double scale = discriminant_scale(t.tau, abs(t.a), t.rho);
    if (std::abs(d) < 1e-6 * scale) continue;  // too close to the curve to call
    auto rs = solve_phi(t);
    if (d < 0) {
      CHECK(rs.roots.size() == 3);
      CHECK_FALSE(rs.complex_pair_present);
      ++three;
    } else {
      CHECK(rs.roots.size() == 1);
      CHECK(rs.complex_pair_present);
      ++one;
    }
  }
  CHECK(three > 0);
  CHECK(one > 0);
}

TEST_CASE("stanton_membership on sample points") {
  CHECK(stanton_membership({0.0, 0.0, 1.0}) == RegionLabel::Stanton);
  CHECK(stanton_membership({0.0, -1.0, 0.0}) == RegionLabel::Boundary);  // s = -rho > 0 at phi = 0
  CHECK(stanton_membership({0.0, 1.0, 0.0}) == RegionLabel::NonStanton);  // s < 0 at every root
  CHECK(stanton_membership({1.0, 0.0, 0.0}) == RegionLabel::Boundary);
  CHECK(stanton_membership({0.0, 0.0, 0.0}) == RegionLabel::Boundary);
}

TEST_CASE("curve_points parametrization") {
  SECTION("a = 2, phi = 1, sign -1 gives the cusp (-3, -3)") {
    auto pts = curve_points(2.0, {1.0}, -1);
    REQUIRE(pts.size() == 1);
    CHECK_THAT(pts[0].tau, Catch::Matchers::WithinAbs(-3.0, 1e-14));
    CHECK_THAT(pts[0].rho, Catch::Matchers::WithinAbs(-3.0, 1e-14));
  }
  SECTION("a = 2, phi = 1, sign +1 gives (1, 5)") {
    auto pt = curve_points(2.0, {1.0}, +1).front();
    CHECK_THAT(pt.tau, Catch::Matchers::WithinAbs(1.0, 1e-14));
    CHECK_THAT(pt.rho, Catch::Matchers::WithinAbs(5.0, 1e-14));
  }
  SECTION("a = 1, phi = 1, sign +1 gives (0, 3)") {
    auto pt = curve_points(1.0, {1.0}, +1).front();
    CHECK_THAT(pt.tau, Catch::Matchers::WithinAbs(0.0, 1e-14));
    CHECK_THAT(pt.rho, Catch::Matchers::WithinAbs(3.0, 1e-14));
  }
  SECTION("every curve point annihilates the discriminant") {
    Rng rng(53);
    for (int i = 0; i < 50; ++i) {
      double a = rng.uniform(0.2, 3.0), phi = rng.uniform(0.05, 3.0);
      int sign = rng.uniform(0, 1) < 0.5 ? -1 : 1;
      auto pt = curve_points(a, {phi}, sign).front();
      double d = discriminant(SasakiTriple<double>{pt.tau, pt.rho, {a, 0}});
      CHECK(std::abs(d) <= 1e-8 * discriminant_scale(pt.tau, a, pt.rho));
    }
  }
  SECTION("invalid arguments") {
    CHECK_THROWS_AS(curve_points(0.0, {1.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(curve_points(1.0, {-1.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(curve_points(1.0, {1.0}, 2), std::invalid_argument);
  }
}

TEST_CASE("project_to_moduli") {
  auto [tm, rm] = project_to_moduli(0.0, 2.0, 0.0);
  CHECK(tm == 0.0);
  CHECK(rm == 0.0);
  auto [t2, r2] = project_to_moduli(1.0, 0.0, 0.0);
  CHECK_THAT(t2, Catch::Matchers::WithinAbs(1.0, 1e-14));
  // agrees with the full normalization on generic input
  Rng rng(59);
  for (int i = 0; i < 20; ++i) {
    double tau = rng.uniform(-2, 2), a = rng.uniform(0.1, 2), rho = rng.uniform(-2, 2);
    auto [pm_t, pm_r] = project_to_moduli(tau, a, rho);
    auto m = normalize_to_moduli({tau, rho, {a, 0}}).first;
    CHECK_THAT(pm_t, Catch::Matchers::WithinAbs(m.tau, 1e-10));
    CHECK_THAT(pm_r, Catch::Matchers::WithinAbs(m.rho, 1e-10));
  }
  CHECK_THROWS_AS(project_to_moduli(0, 0, 0), std::invalid_argument);
}

TEST_CASE("branch_evidence around the cusp") {
  SECTION("a = 2: order flips across phi = 1") {
    auto ev = branch_evidence(2.0, 0.5, 1.5);
    CHECK_FALSE(ev.cusp);
    CHECK(ev.order_flip);
    CHECK(ev.low.double_above != ev.high.double_above);
    // both sides carry a genuine double + simple pair
    CHECK_THAT(phi_cubic_residual<double>({ev.low.tau, ev.low.rho, {2, 0}}, ev.low.double_root),
               Catch::Matchers::WithinAbs(0.0, 1e-7));
    CHECK_THAT(phi_cubic_residual<double>({ev.high.tau, ev.high.rho, {2, 0}}, ev.high.simple_root),
               Catch::Matchers::WithinAbs(0.0, 1e-7));
  }
  SECTION("flip persists close to the cusp") {
    auto ev = branch_evidence(2.0, 0.99, 1.01);
    CHECK(ev.order_flip);
  }
  SECTION("asking at the cusp is reported as such") {
    auto ev = branch_evidence(2.0, 1.0, 1.5);
    CHECK(ev.cusp);
    CHECK(ev.low.is_cusp);
  }
}

TEST_CASE("write_curve_csv shape") {
  std::ostringstream os;
  write_curve_csv(os, 2.0, {0.5, 1.0}, {-1, +1});
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "phi,sign,tau,rho,tau_moduli,rho_moduli,discriminant");
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 4);
}
