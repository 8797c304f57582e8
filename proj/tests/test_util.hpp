#ifndef RSL_TEST_UTIL_HPP
#define RSL_TEST_UTIL_HPP

#include <random>

#include "rsl/parameters.hpp"
#include "rsl/symmetry.hpp"

namespace rsl::test {

struct Rng {
  std::mt19937 gen;
  explicit Rng(unsigned seed) : gen(seed) {}

  // nonzero-friendly small rational with numerator in [-num, num]
  Rational rat(int num = 12, int den = 6) {
    std::uniform_int_distribution<int> dn(-num, num), dd(1, den);
    return Rational(dn(gen), dd(gen));
  }
  Rational rat_nonzero(int num = 12, int den = 6) {
    Rational r;
    do r = rat(num, den);
    while (r == 0);
    return r;
  }
  Cx<Rational> crat(int num = 12, int den = 6) { return {rat(num, den), rat(num, den)}; }
  Cx<Rational> crat_nonzero(int num = 12, int den = 6) {
    Cx<Rational> c;
    do c = crat(num, den);
    while (c.is_zero());
    return c;
  }
  SasakiTriple<Rational> sasaki(int num = 6, int den = 4) {
    return {rat(num, den), rat(num, den), crat(num, den)};
  }
  AutParams<Rational> aut(int num = 8, int den = 4) {
    return {crat(num, den), crat(num, den), crat(num, den), rat(num, den), rat(num, den)};
  }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
};

inline SasakiTriple<double> to_double_triple(const SasakiTriple<Rational>& t) {
  return {to_double(t.tau), to_double(t.rho), to_cx_double(t.a)};
}

}  // namespace rsl::test

#endif
