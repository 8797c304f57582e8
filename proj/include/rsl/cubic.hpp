#ifndef RSL_CUBIC_HPP
#define RSL_CUBIC_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsl/parameters.hpp"

namespace rsl {

struct CubicRoot {
  double value = 0;
  int multiplicity = 1;
};

struct CubicRootSet {
  std::vector<CubicRoot> roots;  // sorted ascending
  bool complex_pair_present = false;

  int total_multiplicity() const {
    int m = 0;
    for (auto& r : roots) m += r.multiplicity;
    return m;
  }
};

// Coefficients (4, 4 tau, tau^2 - rho, -|a|^2) of the cubic in phi set to zero.
template <class T>
std::array<T, 4> phi_cubic(const SasakiTriple<T>& t) {
  return {T(4), T(4) * t.tau, t.tau * t.tau - t.rho, -t.a.norm()};
}

// Standard cubic discriminant of c3 x^3 + c2 x^2 + c1 x + c0.
template <class T>
T cubic_poly_discriminant(const T& c3, const T& c2, const T& c1, const T& c0) {
  return T(18) * c3 * c2 * c1 * c0 - T(4) * c2 * c2 * c2 * c0 + c2 * c2 * c1 * c1 -
         T(4) * c3 * c1 * c1 * c1 - T(27) * c3 * c3 * c0 * c0;
}

// 27 a^4 - 18 a^2 rho tau + 2 a^2 tau^3 - rho^3 + 2 rho^2 tau^2 - rho tau^4,
// with a = |t.a|. Equals -1/16 of the standard discriminant of phi_cubic(t):
// negative values mean three distinct real roots, zero a repeated root.
template <class T>
T discriminant(const SasakiTriple<T>& t) {
  T a2 = t.a.norm();
  T tau = t.tau, rho = t.rho;
  return T(27) * a2 * a2 - T(18) * a2 * rho * tau + T(2) * a2 * tau * tau * tau -
         rho * rho * rho + T(2) * rho * rho * tau * tau - rho * tau * tau * tau * tau;
}

// The a = 2 specialization rho^3 - 2 rho^2 tau^2 + rho tau^4 + 72 rho tau - 8 tau^3 - 432.
// Sign relation (fixed by evaluation): discriminant((tau, rho, a=2)) == -discriminant_a2(tau, rho).
template <class T>
T discriminant_a2(const T& tau, const T& rho) {
  return rho * rho * rho - T(2) * rho * rho * tau * tau + rho * tau * tau * tau * tau +
         T(72) * rho * tau - T(8) * tau * tau * tau - T(432);
}

namespace detail {

inline double cubic_eval(const std::array<double, 4>& c, double x) {
  return ((c[0] * x + c[1]) * x + c[2]) * x + c[3];
}

inline double cubic_deriv(const std::array<double, 4>& c, double x) {
  return (3 * c[0] * x + 2 * c[1]) * x + c[2];
}

// One Newton step, guarded against a vanishing derivative near multiple roots.
inline double polish_root(const std::array<double, 4>& c, double x, int mult) {
  double f = cubic_eval(c, x);
  double df = cubic_deriv(c, x);
  if (df != 0 && std::isfinite(f / df)) {
    double step = static_cast<double>(mult) * f / df;
    if (std::abs(step) < 1 + std::abs(x)) x -= step;
  }
  return x;
}

}  // namespace detail

// All real roots of c3 x^3 + c2 x^2 + c1 x + c0 (c3 != 0) with multiplicities.
// Closed-form trigonometric/Cardano solution, one Newton polish per root;
// multiplicity via a scaled discriminant threshold, then root clustering.
inline CubicRootSet solve_cubic(std::array<double, 4> c) {
  if (c[0] == 0) throw std::invalid_argument("solve_cubic: leading coefficient is zero");
  double maxc = std::max({1.0, std::abs(c[0]), std::abs(c[1]), std::abs(c[2]), std::abs(c[3])});
  double delta = cubic_poly_discriminant(c[0], c[1], c[2], c[3]);
  double thr = 1e-12 * maxc * maxc * maxc * maxc;

  double b = c[1] / c[0], cc = c[2] / c[0], d = c[3] / c[0];
  // depressed cubic t^3 + p t + q, x = t - b/3
  double shift = b / 3.0;
  double p = cc - b * b / 3.0;
  double q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;

  CubicRootSet out;
  if (std::abs(delta) <= thr) {
    // repeated root regime
    double scale = std::max({1.0, std::abs(p), std::abs(q)});
    if (std::abs(p) <= 1e-9 * scale && std::abs(q) <= 1e-9 * scale) {
      out.roots.push_back({-shift, 3});
    } else {
      double dbl = -3.0 * q / (2.0 * p) - shift;
      double simple = 3.0 * q / p - shift;
      // polish the double root on the derivative, where it is simple
      double df2 = 6 * c[0] * (dbl + 0) + 2 * c[1];
      double df1 = detail::cubic_deriv(c, dbl);
      if (df2 != 0) dbl -= df1 / df2;
      simple = detail::polish_root(c, simple, 1);
      if (simple < dbl) {
        out.roots.push_back({simple, 1});
        out.roots.push_back({dbl, 2});
      } else {
        out.roots.push_back({dbl, 2});
        out.roots.push_back({simple, 1});
      }
    }
  } else if (delta > 0) {
    // three distinct real roots, trigonometric form
    double m = 2.0 * std::sqrt(-p / 3.0);
    double acosarg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    double ang = std::acos(acosarg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      double t = m * std::cos(ang - 2.0 * std::numbers::pi * k / 3.0);
      out.roots.push_back({detail::polish_root(c, t - shift, 1), 1});
    }
  } else {
    // one real root, Cardano
    double disc = q * q / 4.0 + p * p * p / 27.0;
    double s = std::sqrt(std::max(disc, 0.0));
    double u = std::cbrt(-q / 2.0 + s);
    double v = (u != 0) ? -p / (3.0 * u) : std::cbrt(-q / 2.0 - s);
    out.roots.push_back({detail::polish_root(c, u + v - shift, 1), 1});
    out.complex_pair_present = true;
  }

  std::sort(out.roots.begin(), out.roots.end(),
            [](const CubicRoot& a, const CubicRoot& b) { return a.value < b.value; });
  // cluster near-coincident roots
  std::vector<CubicRoot> merged;
  for (auto& r : out.roots) {
    if (!merged.empty() &&
        std::abs(r.value - merged.back().value) <= 1e-6 * std::max(1.0, std::abs(r.value))) {
      merged.back().multiplicity += r.multiplicity;
      merged.back().value = (merged.back().value + r.value) / 2.0;
    } else {
      merged.push_back(r);
    }
  }
  out.roots = std::move(merged);
  return out;
}

// Real roots phi of 4 phi^3 + 4 tau phi^2 + (tau^2 - rho) phi = |a|^2.
inline CubicRootSet solve_phi(const SasakiTriple<double>& t) { return solve_cubic(phi_cubic(t)); }

enum class RegionLabel { Stanton, NonStanton, Boundary };

inline const char* to_string(RegionLabel l) {
  switch (l) {
    case RegionLabel::Stanton: return "Stanton";
    case RegionLabel::NonStanton: return "NonStanton";
    case RegionLabel::Boundary: return "Boundary";
  }
  return "?";
}

// Stanton iff some real root phi >= 0 gives s = -rho + (2 tau + 3 phi) phi >= 0,
// with both strictly positive; equality (within a band) in either -> Boundary.
inline RegionLabel stanton_membership(const ModuliPoint& m, double band = 1e-9) {
  SasakiTriple<double> t{m.tau, m.rho, Cx<double>{m.a_nonneg, 0.0}};
  auto rs = solve_phi(t);
  bool boundary = false;
  for (auto& r : rs.roots) {
    double phi = r.value;
    if (phi < -band) continue;
    double s = -t.rho + (2.0 * t.tau + 3.0 * phi) * phi;
    if (s < -band) continue;
    if (phi > band && s > band) return RegionLabel::Stanton;
    boundary = true;
  }
  return boundary ? RegionLabel::Boundary : RegionLabel::NonStanton;
}

// Point on the parametric discriminant curve
// tau = sign |a|/sqrt(phi) - phi,  rho = sign 2 |a| sqrt(phi) + phi^2.
struct DiscriminantCurvePoint {
  double phi = 0;
  int sign = +1;
  double tau = 0;
  double rho = 0;
  double a_abs = 0;
};

inline std::vector<DiscriminantCurvePoint> curve_points(double a_abs,
                                                        const std::vector<double>& phis,
                                                        int sign) {
  if (a_abs <= 0) throw std::invalid_argument("curve_points: a_abs must be positive");
  if (sign != 1 && sign != -1) throw std::invalid_argument("curve_points: sign must be +-1");
  std::vector<DiscriminantCurvePoint> out;
  out.reserve(phis.size());
  for (double phi : phis) {
    if (phi <= 0) throw std::invalid_argument("curve_points: phi must be positive");
    double sq = std::sqrt(phi);
    out.push_back({phi, sign, sign * a_abs / sq - phi, sign * 2.0 * a_abs * sq + phi * phi, a_abs});
  }
  return out;
}

// (c^2 tau, c^4 rho) with c = (tau^4 + a^{8/3} + rho^2)^{-1/8}.
inline std::pair<double, double> project_to_moduli(double tau, double a_abs, double rho) {
  double h = std::pow(tau, 4) + std::pow(a_abs, 8.0 / 3.0) + rho * rho;
  if (h == 0) throw std::invalid_argument("project_to_moduli: all-zero input");
  double c2 = std::pow(h, -1.0 / 4.0);
  return {c2 * tau, c2 * c2 * rho};
}

// Largest monomial magnitude of the discriminant polynomial, used to scale
// vanishing assertions on the curve.
inline double discriminant_scale(double tau, double a_abs, double rho) {
  double a2 = a_abs * a_abs;
  return std::max({27 * a2 * a2, std::abs(18 * a2 * rho * tau), std::abs(2 * a2 * tau * tau * tau),
                   std::abs(rho * rho * rho), std::abs(2 * rho * rho * tau * tau),
                   std::abs(rho * std::pow(tau, 4)), 1.0});
}

// Root ordering on one side of the cusp of the sign-minus discriminant curve.
struct BranchSide {
  double phi = 0;
  double tau = 0;
  double rho = 0;
  bool is_cusp = false;
  double double_root = 0;
  double simple_root = 0;
  bool double_above = false;  // double root greater than the simple root
};

struct BranchEvidence {
  BranchSide low;
  BranchSide high;
  bool cusp = false;        // degenerate request at the cusp parameter
  bool order_flip = false;  // double/simple order differs between the sides
};

namespace detail {

inline BranchSide branch_side(double a_abs, double phi) {
  auto pt = curve_points(a_abs, {phi}, -1).front();
  BranchSide side{phi, pt.tau, pt.rho};
  auto rs = solve_phi({pt.tau, pt.rho, Cx<double>{a_abs, 0.0}});
  for (auto& r : rs.roots) {
    if (r.multiplicity >= 3) {
      side.is_cusp = true;
      side.double_root = side.simple_root = r.value;
      return side;
    }
    if (r.multiplicity == 2)
      side.double_root = r.value;
    else
      side.simple_root = r.value;
  }
  side.double_above = side.double_root > side.simple_root;
  return side;
}

}  // namespace detail

// Numerical evidence that the repeated root crosses the simple root at the
// cusp: on the sign-minus curve the double root lies above the simple root on
// one side and below on the other.
inline BranchEvidence branch_evidence(double a_abs, double phi_low, double phi_high) {
  double cusp_phi = std::pow(a_abs / 2.0, 2.0 / 3.0);
  BranchEvidence ev;
  if (std::abs(phi_low - cusp_phi) <= 1e-9 || std::abs(phi_high - cusp_phi) <= 1e-9) {
    ev.cusp = true;
    ev.low = detail::branch_side(a_abs, cusp_phi);
    ev.high = ev.low;
    return ev;
  }
  ev.low = detail::branch_side(a_abs, phi_low);
  ev.high = detail::branch_side(a_abs, phi_high);
  ev.order_flip = !ev.low.is_cusp && !ev.high.is_cusp && ev.low.double_above != ev.high.double_above;
  return ev;
}

// CSV data product: header phi,sign,tau,rho,tau_moduli,rho_moduli,discriminant.
inline void write_curve_csv(std::ostream& os, double a_abs, const std::vector<double>& phis,
                            const std::vector<int>& signs) {
  os << "phi,sign,tau,rho,tau_moduli,rho_moduli,discriminant\n";
  char buf[256];
  for (int sign : signs) {
    for (auto& pt : curve_points(a_abs, phis, sign)) {
      auto [tm, rm] = project_to_moduli(pt.tau, pt.a_abs, pt.rho);
      double disc = discriminant<double>({pt.tau, pt.rho, Cx<double>{pt.a_abs, 0.0}});
      std::snprintf(buf, sizeof buf, "%.17g,%+d,%.17g,%.17g,%.17g,%.17g,%.17g\n", pt.phi, pt.sign,
                    pt.tau, pt.rho, tm, rm, disc);
      os << buf;
    }
  }
}

}  // namespace rsl

#endif
