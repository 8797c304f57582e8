#ifndef RSL_PARAMETERS_HPP
#define RSL_PARAMETERS_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "rsl/complex.hpp"
#include "rsl/scalar.hpp"

namespace rsl {

// Classifying parameters (tau, rho, a) of a rigid sphere / Sasakian structure.
// All of R x R x C is admissible.
template <class T>
struct SasakiTriple {
  T tau{};
  T rho{};
  Cx<T> a{};
};

// Stanton's sub-family parameters. By convention r >= 0: the surface depends
// on r only through r^2 and sin(2rv)/r, so the sign carries no information.
template <class T>
struct StantonParams {
  T theta{};
  T r{};
  Cx<T> b{};
};

// (theta, s = r^2, phi, a) entering the general closed-form defining equation.
// s may be negative (purely imaginary r).
template <class T>
struct ClosedFormParams {
  T theta{};
  T s{};
  T phi{};
  Cx<T> a{};
};

// Scaling-orbit representative on tau^4 + a^(8/3) + rho^2 = 1, a >= 0,
// or the distinguished Heisenberg point (0,0,0).
struct ModuliPoint {
  double tau = 0;
  double rho = 0;
  double a_nonneg = 0;
  bool is_heisenberg() const { return tau == 0 && rho == 0 && a_nonneg == 0; }
};

template <class T>
struct ScalingAction {
  Cx<T> c{T(1)};
};

// Low-order normal-form coefficients gamma_22, gamma_23, gamma_33.
// Hermitian symmetry forces gamma_22 and gamma_33 real.
template <class T>
struct GammaLow {
  T g22{};
  Cx<T> g23{};
  T g33{};
};

// tau' = |c|^2 tau,  a' = c cbar^2 a,  rho' = |c|^4 rho
template <class T>
SasakiTriple<T> apply_scaling(const SasakiTriple<T>& t, const ScalingAction<T>& act) {
  if (act.c.is_zero()) throw std::invalid_argument("apply_scaling: c must be nonzero");
  T m2 = act.c.norm();
  return {m2 * t.tau, m2 * m2 * t.rho, act.c * act.c.conj() * act.c.conj() * t.a};
}

// theta' = |c|^2 theta,  b' = cbar b,  r' = |c|^2 r
template <class T>
StantonParams<T> stanton_scaling(const StantonParams<T>& sp, const ScalingAction<T>& act) {
  if (act.c.is_zero()) throw std::invalid_argument("stanton_scaling: c must be nonzero");
  T m2 = act.c.norm();
  return {m2 * sp.theta, m2 * sp.r, act.c.conj() * sp.b};
}

// tau = theta - 3|b|^2,  a = -b(r - i theta + 2i|b|^2),  rho = -3|b|^4 - r^2 + 2|b|^2 theta
template <class T>
SasakiTriple<T> stanton_to_sasaki(const StantonParams<T>& sp) {
  T b2 = sp.b.norm();
  Cx<T> a = -(sp.b * Cx<T>(sp.r, T(2) * b2 - sp.theta));
  return {sp.theta - T(3) * b2, T(-3) * b2 * b2 - sp.r * sp.r + T(2) * b2 * sp.theta, a};
}

// Residual of the cubic |a|^2 = 4 phi^3 + 4 tau phi^2 + (tau^2 - rho) phi.
template <class T>
T phi_cubic_residual(const SasakiTriple<T>& t, const T& phi) {
  return T(4) * phi * phi * phi + T(4) * t.tau * phi * phi + (t.tau * t.tau - t.rho) * phi -
         t.a.norm();
}

// theta = tau + 3 phi,  s = -rho + (2 tau + 3 phi) phi.
// phi must be a real root of the defining cubic for t.
template <class T>
ClosedFormParams<T> closedform_from_sasaki(const SasakiTriple<T>& t, const T& phi) {
  T res = phi_cubic_residual(t, phi);
  double scale = 1.0 + std::pow(std::abs(to_double(phi)), 3);
  if (!scalar_is_zero(res, 1e-9 * scale))
    throw std::invalid_argument("closedform_from_sasaki: phi is not a root of the cubic");
  return {t.tau + T(3) * phi, -t.rho + (T(2) * t.tau + T(3) * phi) * phi, phi, t.a};
}

// Consistency identity |a|^2 = phi ((theta - 2 phi)^2 + s).
template <class T>
T closedform_consistency_residual(const ClosedFormParams<T>& cf) {
  T d = cf.theta - T(2) * cf.phi;
  return cf.a.norm() - cf.phi * (d * d + cf.s);
}

template <class T>
SasakiTriple<T> sasaki_from_closedform(const ClosedFormParams<T>& cf) {
  T res = closedform_consistency_residual(cf);
  if (!scalar_is_zero(res, 1e-9 * (1.0 + std::abs(to_double(cf.a.norm())))))
    throw std::invalid_argument("sasaki_from_closedform: consistency identity violated");
  T tau = cf.theta - T(3) * cf.phi;
  return {tau, (T(2) * tau + T(3) * cf.phi) * cf.phi - cf.s, cf.a};
}

// tau = -g22/2,  a = -g23/2,  rho = -(3/2) g33 + (9/4) g22^2
template <class T>
SasakiTriple<T> gamma_to_sasaki(const GammaLow<T>& g) {
  return {-g.g22 / T(2), T(-3) * g.g33 / T(2) + T(9) * g.g22 * g.g22 / T(4), -g.g23 / T(2)};
}

template <class T>
GammaLow<T> sasaki_to_gamma(const SasakiTriple<T>& t) {
  return {T(-2) * t.tau, T(-2) * t.a, T(6) * t.tau * t.tau - T(2) * t.rho / T(3)};
}

// Unique moduli representative plus a witnessing scaling c with
// apply_scaling(t, c) equal to the representative. The phase of c rotates a
// onto the nonnegative real axis (a -> c cbar^2 a scales arg a by -arg c),
// the modulus solves |c|^8 (tau^4 + |a|^{8/3} + rho^2) = 1.
inline std::pair<ModuliPoint, ScalingAction<double>> normalize_to_moduli(
    const SasakiTriple<double>& t) {
  double anorm = abs(t.a);
  double h = std::pow(t.tau, 4) + std::pow(anorm, 8.0 / 3.0) + t.rho * t.rho;
  if (h == 0) return {ModuliPoint{}, ScalingAction<double>{Cx<double>(1.0)}};
  double m = std::pow(h, -1.0 / 8.0);
  double phase = anorm > 0 ? arg(t.a) : 0.0;
  Cx<double> c{m * std::cos(phase), m * std::sin(phase)};
  ModuliPoint mp{m * m * t.tau, m * m * m * m * t.rho, m * m * m * anorm};
  return {mp, ScalingAction<double>{c}};
}

// Some c with apply_scaling(t1, c) = t2 if the triples are homothetic,
// nullopt otherwise. Decided by comparing moduli representatives.
inline std::optional<ScalingAction<double>> are_homothetic(const SasakiTriple<double>& t1,
                                                           const SasakiTriple<double>& t2,
                                                           double tol = 1e-9) {
  auto [m1, c1] = normalize_to_moduli(t1);
  auto [m2, c2] = normalize_to_moduli(t2);
  if (!scalar_close(m1.tau, m2.tau, tol) || !scalar_close(m1.rho, m2.rho, tol) ||
      !scalar_close(m1.a_nonneg, m2.a_nonneg, tol))
    return std::nullopt;
  // apply(t1, c1) = m = apply(t2, c2), and apply composes by multiplying c.
  return ScalingAction<double>{c1.c / c2.c};
}

// Inversion of the Stanton correspondence: b = -a / (r - i theta + 2 i phi)
// with r = sqrt(s). Requires s >= 0 and phi >= 0 (the Stanton region).
inline std::optional<StantonParams<double>> stanton_from_closedform(
    const ClosedFormParams<double>& cf, double tol = 1e-9) {
  if (cf.s < -tol || cf.phi < -tol) return std::nullopt;
  double r = std::sqrt(std::max(cf.s, 0.0));
  Cx<double> den{r, 2.0 * std::max(cf.phi, 0.0) - cf.theta};
  Cx<double> b;
  if (den.is_zero()) {
    // r = 0, theta = 2 phi forces a = 0; any b with |b|^2 = phi works.
    b = Cx<double>{std::sqrt(std::max(cf.phi, 0.0)), 0.0};
  } else {
    b = -(cf.a / den);
  }
  return StantonParams<double>{cf.theta, r, b};
}

}  // namespace rsl

#endif
