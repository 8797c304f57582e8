#include <catch2/catch_amalgamated.hpp>

#include "rsl/serialize.hpp"

using namespace rsl;
using R = Rational;

TEST_CASE("scalar serialization") {
  CHECK(scalar_json(1.5).is_number());
  CHECK(scalar_json(R(3, 4)) == "3/4");
  CHECK(scalar_json(R(-7)) == "-7");
}

TEST_CASE("parameter structs serialize with stable field names") {
  auto jt = to_json(SasakiTriple<double>{1.0, -2.0, {0.5, 0.25}});
  CHECK(jt["tau"] == 1.0);
  CHECK(jt["rho"] == -2.0);
  CHECK(jt["a_re"] == 0.5);
  CHECK(jt["a_im"] == 0.25);

  auto js = to_json(StantonParams<R>{R(3), R(1, 2), {R(-1), R(0)}});
  CHECK(js["theta"] == "3");
  CHECK(js["r"] == "1/2");
  CHECK(js["b_re"] == "-1");

  auto jc = to_json(ClosedFormParams<R>{R(3), R(3), R(1), {R(2), R(0)}});
  CHECK(jc["phi"] == "1");
  CHECK(jc["s"] == "3");

  auto jm = to_json(ModuliPoint{0.5, -0.5, 0.25});
  CHECK(jm["a_nonneg"] == 0.25);

  auto jg = to_json(GammaLow<R>{R(-1), {R(0), R(2)}, R(4, 3)});
  CHECK(jg["g22"] == "-1");
  CHECK(jg["g23_im"] == "2");
  CHECK(jg["g33"] == "4/3");
}

TEST_CASE("root sets serialize values and multiplicities") {
  CubicRootSet rs;
  rs.roots = {{-1.0, 1}, {2.0, 2}};
  rs.complex_pair_present = false;
  auto j = to_json(rs);
  REQUIRE(j["roots"].size() == 2);
  CHECK(j["roots"][1]["multiplicity"] == 2);
  CHECK(j["complex_pair_present"] == false);
}

TEST_CASE("series serialize the k <= l triangle only") {
  Bivariate<R> g(6);
  g.at(1, 1) = Cx<R>(R(1));
  g.at(2, 3) = Cx<R>(R(1, 2), R(1, 3));
  g.at(3, 2) = g.at(2, 3).conj();
  auto j = to_json(HermitianSeries<R>(g));
  CHECK(j["order"] == 6);
  REQUIRE(j["gamma"].size() == 2);
  for (auto& term : j["gamma"]) CHECK(term["k"] <= term["l"]);
  CHECK(j["gamma"][1]["re"] == "1/2");
  CHECK(j["gamma"][1]["im"] == "1/3");
}

TEST_CASE("symmetry algebras serialize completely") {
  auto alg = sasaki_algebra(SasakiTriple<R>{});
  auto j = to_json(alg);
  CHECK(j["dimension"] == 4);
  CHECK(j["basis"].size() == 4);
  CHECK(j["structure_constants"].size() == 4);
  CHECK(j["structure_constants"][0].size() == 4);
  CHECK(j["structure_constants"][0][0].size() == 4);
}
