#ifndef RSL_SERIALIZE_HPP
#define RSL_SERIALIZE_HPP

#include <json.hpp>

#include "rsl/cubic.hpp"
#include "rsl/parameters.hpp"
#include "rsl/series.hpp"
#include "rsl/symmetry.hpp"

namespace rsl {

using json = nlohmann::json;

// Floats serialize as numbers, exact rationals as "num/den" strings.
inline json scalar_json(double x) { return x; }
inline json scalar_json(const Rational& x) { return rational_to_string(x); }

template <class T>
json to_json(const SasakiTriple<T>& t) {
  return {{"tau", scalar_json(t.tau)},
          {"rho", scalar_json(t.rho)},
          {"a_re", scalar_json(t.a.re)},
          {"a_im", scalar_json(t.a.im)}};
}

template <class T>
json to_json(const StantonParams<T>& sp) {
  return {{"theta", scalar_json(sp.theta)},
          {"r", scalar_json(sp.r)},
          {"b_re", scalar_json(sp.b.re)},
          {"b_im", scalar_json(sp.b.im)}};
}

template <class T>
json to_json(const ClosedFormParams<T>& cf) {
  return {{"theta", scalar_json(cf.theta)},
          {"s", scalar_json(cf.s)},
          {"phi", scalar_json(cf.phi)},
          {"a_re", scalar_json(cf.a.re)},
          {"a_im", scalar_json(cf.a.im)}};
}

inline json to_json(const ModuliPoint& m) {
  return {{"tau", m.tau}, {"rho", m.rho}, {"a_nonneg", m.a_nonneg}};
}

template <class T>
json to_json(const GammaLow<T>& g) {
  return {{"g22", scalar_json(g.g22)},
          {"g23_re", scalar_json(g.g23.re)},
          {"g23_im", scalar_json(g.g23.im)},
          {"g33", scalar_json(g.g33)}};
}

inline json to_json(const CubicRootSet& rs) {
  json roots = json::array();
  for (auto& r : rs.roots) roots.push_back({{"value", r.value}, {"multiplicity", r.multiplicity}});
  return {{"roots", roots}, {"complex_pair_present", rs.complex_pair_present}};
}

// {"order": N, "gamma": [...]}, listing only k <= l; Hermitian completion implied.
template <class T>
json to_json(const HermitianSeries<T>& h) {
  json gamma = json::array();
  for (int k = 0; k <= h.order(); ++k)
    for (int l = k; k + l <= h.order(); ++l) {
      if (h.at(k, l).is_zero()) continue;
      gamma.push_back({{"k", k},
                       {"l", l},
                       {"re", scalar_json(h.at(k, l).re)},
                       {"im", scalar_json(h.at(k, l).im)}});
    }
  return {{"order", h.order()}, {"gamma", gamma}};
}

template <class T>
json to_json(const Poly2<T>& p) {
  json terms = json::array();
  for (int i = 0; i <= p.cap(); ++i)
    for (int j = 0; i + j <= p.cap(); ++j) {
      if (p.at(i, j).is_zero()) continue;
      terms.push_back({{"i", i},
                       {"j", j},
                       {"re", scalar_json(p.at(i, j).re)},
                       {"im", scalar_json(p.at(i, j).im)}});
    }
  return terms;
}

template <class T>
json to_json(const SymmetryAlgebra<T>& alg) {
  json basis = json::array();
  for (auto& x : alg.basis) basis.push_back({{"xz", to_json(x.xz)}, {"xw", to_json(x.xw)}});
  json sc = json::array();
  for (auto& plane : alg.structure_constants) {
    json jp = json::array();
    for (auto& row : plane) {
      json jr = json::array();
      for (auto& x : row) jr.push_back(scalar_json(x));
      jp.push_back(jr);
    }
    sc.push_back(jp);
  }
  return {{"dimension", alg.dimension}, {"basis", basis}, {"structure_constants", sc}};
}

}  // namespace rsl

#endif
