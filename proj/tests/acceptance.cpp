// End-to-end acceptance checks, one line of output per criterion.
#include <cstdio>
#include <functional>
#include <vector>

#include "rsl/cubic.hpp"
#include "rsl/parameters.hpp"
#include "rsl/series.hpp"
#include "rsl/symmetry.hpp"
#include "test_util.hpp"

using namespace rsl;
using rsl::test::Rng;
using R = Rational;

namespace {

constexpr double kRootResidualTol = 1e-12;
constexpr double kDiscriminantTol = 1e-10;
constexpr double kSeriesTol = 1e-9;
constexpr double kCurveTol = 1e-8;

bool within(double x, double want, double tol) { return std::abs(x - want) <= tol; }

// (tau, a, phi) with rho chosen so phi is an exact root of the defining cubic
SasakiTriple<R> triple_with_root(Rng& rng, R& phi_out) {
  R tau = rng.rat(3, 2);
  R phi = rng.rat_nonzero(3, 2);
  Cx<R> a = rng.crat(3, 2);
  R rho = tau * tau - (a.norm() - R(4) * phi * phi * phi - R(4) * tau * phi * phi) / phi;
  phi_out = phi;
  return {tau, rho, a};
}

bool criterion1() {
  SasakiTriple<double> t{0, 0, {2, 0}};
  auto rs = solve_phi(t);
  if (rs.roots.size() != 1 || rs.roots[0].multiplicity != 1) return false;
  double phi = rs.roots[0].value;
  if (!within(phi, 1.0, 1e-12)) return false;
  if (std::abs(phi_cubic_residual(t, phi)) >= kRootResidualTol) return false;
  auto cf = closedform_from_sasaki(t, phi);
  if (!within(cf.theta, 3.0, 1e-12) || !within(cf.s, 3.0, 1e-12)) return false;
  auto sp = stanton_from_closedform(cf);
  if (!sp) return false;
  double r3 = std::sqrt(3.0);
  if (!within(sp->r, r3, 1e-12)) return false;
  if (!within(sp->b.re, -r3 / 2, 1e-12) || !within(sp->b.im, -0.5, 1e-12)) return false;
  return stanton_membership(normalize_to_moduli(t).first) == RegionLabel::Stanton;
}

bool criterion2() {
  SasakiTriple<double> t{-3, -3, {2, 0}};
  auto rs = solve_phi(t);
  if (rs.roots.size() != 1 || rs.roots[0].multiplicity != 3) return false;
  if (!within(rs.roots[0].value, 1.0, 1e-9)) return false;
  if (std::abs(discriminant(t)) >= kDiscriminantTol) return false;
  auto cf = closedform_from_sasaki(t, rs.roots[0].value);
  if (!within(cf.s, 0.0, 1e-8)) return false;
  return discriminant_a2(R(-3), R(-3)) == 0;
}

bool criterion3() {
  SasakiTriple<R> t{R(0), R(1), {}};
  struct Row {
    R phi, s, theta;
  };
  std::vector<Row> want{{R(0), R(-1), R(0)},
                        {R(1, 2), R(-1, 4), R(3, 2)},
                        {R(-1, 2), R(-1, 4), R(-3, 2)}};
  std::vector<HermitianSeries<R>> hs;
  for (auto& row : want) {
    if (phi_cubic_residual(t, row.phi) != 0) return false;
    auto cf = closedform_from_sasaki(t, row.phi);
    if (cf.s != row.s || cf.theta != row.theta) return false;
    hs.push_back(expand_sphere(cf, 8));
  }
  if (!series_close(hs[0], hs[1], 0) || !series_close(hs[0], hs[2], 0)) return false;
  // the instance expands to arcsinh(2|z|^2)/2
  return hs[0].at(2, 2).is_zero() && hs[0].at(3, 3) == Cx<R>(R(-2, 3));
}

bool criterion4() {
  Rng rng(211);
  for (int i = 0; i < 50; ++i) {
    R phi;
    auto t = triple_with_root(rng, phi);
    auto h = expand_sphere(closedform_from_sasaki(t, phi), 8);
    auto back = extract_normal_params(h);
    if (back.tau != t.tau || back.rho != t.rho || !(back.a == t.a)) return false;
    // every real branch agrees with the exact series within the float tolerance
    auto td = rsl::test::to_double_triple(t);
    HermitianSeries<double> hd(8);
    for (int k = 0; k <= 8; ++k)
      for (int l = 0; k + l <= 8; ++l) hd.gamma.at(k, l) = to_cx_double(h.at(k, l));
    for (auto& root : solve_phi(td).roots) {
      if (root.multiplicity > 1) continue;
      auto hb = expand_sphere(closedform_from_sasaki(td, root.value), 8);
      if (!series_close(hb, hd, kSeriesTol)) return false;
    }
  }
  return true;
}

bool criterion5() {
  Rng rng(223);
  int done = 0;
  while (done < 20) {
    R theta = rng.rat(3, 2);
    R r = rng.rat_nonzero(3, 2);
    if (r < 0) r = -r;
    Cx<R> b = rng.crat(2, 2);
    auto t = stanton_to_sasaki(StantonParams<R>{theta, r, b});
    R phi = b.norm();
    if (phi_cubic_residual(t, phi) != 0) return false;
    auto hs = stanton_normalize(expand_stanton(StantonParams<R>{theta, r, b}, 8));
    auto hc = expand_sphere(closedform_from_sasaki(t, phi), 8);
    if (!series_close(hs, hc, kSeriesTol)) return false;
    ++done;
  }
  return true;
}

bool criterion6() {
  Rng rng(227);
  for (int i = 0; i < 20; ++i) {
    R phi;
    auto t = triple_with_root(rng, phi);
    auto h = expand_sphere(closedform_from_sasaki(t, phi), 6);
    auto c = rng.crat_nonzero(3, 2);
    auto resc = rescale_surface(h, c);
    // coefficient law
    for (int k = 0; k <= 6; ++k)
      for (int l = 0; k + l <= 6; ++l) {
        if (h.at(k, l).is_zero()) continue;
        Cx<R> factor = cx_pow(c, k) * cx_pow(c.conj(), l) / (c * c.conj());
        if (!(resc.at(k, l) == factor * h.at(k, l))) return false;
      }
    auto lhs = extract_normal_params(resc);
    auto rhs = apply_scaling(t, ScalingAction<R>{c});
    if (lhs.tau != rhs.tau || lhs.rho != rhs.rho || !(lhs.a == rhs.a)) return false;
  }
  return true;
}

bool criterion7() {
  std::vector<double> phis;
  for (int i = 0; i < 100; ++i) phis.push_back(0.05 + 2.95 * i / 99.0);
  for (int sign : {-1, +1}) {
    for (auto& pt : curve_points(2.0, phis, sign)) {
      double d = discriminant(SasakiTriple<double>{pt.tau, pt.rho, {2, 0}});
      if (std::abs(d) > kCurveTol * discriminant_scale(pt.tau, 2.0, pt.rho)) return false;
    }
  }
  auto cusp = curve_points(2.0, {1.0}, -1).front();
  if (!within(cusp.tau, -3.0, 1e-12) || !within(cusp.rho, -3.0, 1e-12)) return false;
  auto ev = branch_evidence(2.0, 0.5, 1.5);
  return !ev.cusp && ev.order_flip;
}

bool criterion8() {
  if (sasaki_algebra(SasakiTriple<R>{}).dimension != 4) return false;
  if (sasaki_algebra(SasakiTriple<R>{R(1, 2), R(1, 4), {}}).dimension != 4) return false;
  if (sasaki_algebra(SasakiTriple<R>{R(-1, 2), R(1, 4), {}}).dimension != 4) return false;
  if (sasaki_algebra(SasakiTriple<R>{R(1), R(0), {}}).dimension != 2) return false;
  if (sasaki_algebra(SasakiTriple<R>{R(0), R(0), {R(1), R(0)}}).dimension != 2) return false;
  if (sasaki_algebra(SasakiTriple<R>{R(0), R(2), {}}).dimension != 2) return false;
  Rng rng(229);
  int done = 0;
  while (done < 20) {
    auto t = rng.sasaki(3, 2);
    if (t.a.is_zero()) continue;  // keep off the high-symmetry set
    auto alg = sasaki_algebra(t);
    if (alg.dimension != 2) return false;
    // the closing-display generator lies in the span
    Cx<R> i_{R(0), R(1)};
    AutParams<R> w{i_ * t.a, i_ * (t.rho - t.tau * t.tau), -(t.a * t.tau), R(0),
                   R(-2) * t.a.norm()};
    Matrix<R> basis;
    for (auto& ap : alg.params) {
      auto v = ap.as_real_vector();
      basis.push_back(std::vector<R>(v.begin(), v.end()));
    }
    auto arr = w.as_real_vector();
    if (coordinates_in_rref_span(basis, std::vector<R>(arr.begin(), arr.end()), 0).empty())
      return false;
    ++done;
  }
  return true;
}

bool criterion9() {
  Rng rng(233);
  // perturbation directions, each individually transversal to the model
  std::vector<HoloVectorField<R>> off(4);
  off[0].xz.at(0, 1) = Cx<R>(R(1));          // w d/dz
  off[1].xw.at(0, 0) = Cx<R>(R(0), R(1));    // i d/dw
  off[2].xw.at(1, 0) = Cx<R>(R(1));          // z d/dw
  off[3].xz.at(2, 0) = Cx<R>(R(0), R(1));    // i z^2 d/dz alone
  for (auto& d : off)
    if (is_tangent_to_sphere(d)) return false;
  for (int i = 0; i < 100; ++i) {
    auto x = aut_family(rng.aut());
    if (!is_tangent_to_sphere(x)) return false;
    auto& d = off[i % off.size()];
    HoloVectorField<R> bad{x.xz + d.xz, x.xw + d.xw};
    if (is_tangent_to_sphere(bad)) return false;
  }
  return true;
}

bool criterion10() {
  Rng rng(239);
  for (bool sphere : {true, false}) {
    Bivariate<R> g(8);
    for (int k = 1; 2 * k <= 8; ++k)
      g.at(k, k) = Cx<R>(sphere ? R((k % 2) ? 1 : -1, k) : R(1, k));
    HermitianSeries<R> h(g);
    int done = 0;
    while (done < 10) {
      // unimodular rotation from a rational tangent half-angle
      R u = rng.rat(4, 3);
      R den = R(1) + u * u;
      Cx<R> rot{(R(1) - u * u) / den, R(2) * u / den};
      Cx<R> zeta{rng.rat(2, 5), rng.rat(2, 5)};
      if (!sphere && !(zeta.norm() < 1)) continue;
      if (!verify_finite_automorphism(h, MoebiusMapParams<R>{rot, zeta, rng.rat()}, 6))
        return false;
      ++done;
    }
  }
  return true;
}

}  // namespace

int main() {
  struct Item {
    const char* name;
    std::function<bool()> run;
  };
  std::vector<Item> items{
      {"1. canonical a=2 point: root, closed-form and Stanton data", criterion1},
      {"2. cusp point: triple root and vanishing discriminant", criterion2},
      {"3. a=0 branch rows and arcsinh instance", criterion3},
      {"4. round trip over random triples, branch independence", criterion4},
      {"5. Stanton family agrees with the closed-form expansion", criterion5},
      {"6. scaling covariance of the coefficient law", criterion6},
      {"7. discriminant curve and root-order flip at the cusp", criterion7},
      {"8. symmetry algebra dimensions and second generator", criterion8},
      {"9. tangency of the automorphism family", criterion9},
      {"10. finite automorphisms of the two homogeneous models", criterion10},
  };
  int failures = 0;
  for (auto& item : items) {
    bool ok = false;
    try {
      ok = item.run();
    } catch (const std::exception& e) {
      std::printf("FAIL %s (exception: %s)\n", item.name, e.what());
      ++failures;
      continue;
    }
    std::printf("%s %s\n", ok ? "PASS" : "FAIL", item.name);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
