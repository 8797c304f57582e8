#ifndef RSL_SERIES_HPP
#define RSL_SERIES_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsl/parameters.hpp"

namespace rsl {

// Truncated series in the transversal variable v, real coefficients.
template <class T>
struct VSeries {
  std::vector<T> c;  // c[k] multiplies v^k

  explicit VSeries(int order = 0) : c(order + 1) {}
  int order() const { return static_cast<int>(c.size()) - 1; }

  friend VSeries operator+(VSeries a, const VSeries& b) {
    if (b.c.size() > a.c.size()) a.c.resize(b.c.size());
    for (size_t k = 0; k < b.c.size(); ++k) a.c[k] += b.c[k];
    return a;
  }
  friend VSeries operator-(VSeries a, const VSeries& b) {
    if (b.c.size() > a.c.size()) a.c.resize(b.c.size());
    for (size_t k = 0; k < b.c.size(); ++k) a.c[k] -= b.c[k];
    return a;
  }
  friend VSeries operator*(VSeries a, const T& s) {
    for (auto& x : a.c) x = x * s;
    return a;
  }
};

// The v-dependent factors of the closed-form defining equation, with all
// v-dependence expressed through s = r^2 so coefficients stay real (and
// rational for rational input) for either sign of s:
//   S = sin(2rv)/(2r),  C = cos(2rv),  E = e^{-2 theta v},
//   Q = (E - C + 2 theta S)/(s + theta^2), produced by the regular recurrence
//   Q'' = 4E - 4sQ, Q(0) = Q'(0) = 0, which avoids the 0/0 at s = -theta^2.
template <class T>
struct VFactors {
  VSeries<T> S, C, E, Q;
};

template <class T>
VFactors<T> build_v_factors(const T& theta, const T& s, int order) {
  VFactors<T> f{VSeries<T>(order), VSeries<T>(order), VSeries<T>(order), VSeries<T>(order)};
  T pw(1);  // (-4s)^k
  for (int k = 0; 2 * k <= order; ++k) {
    T fact(1);
    for (int j = 2; j <= 2 * k; ++j) fact *= T(j);
    f.C.c[2 * k] = pw / fact;
    if (2 * k + 1 <= order) f.S.c[2 * k + 1] = pw / (fact * T(2 * k + 1));
    pw *= T(-4) * s;
  }
  T epw(1), efact(1);
  for (int k = 0; k <= order; ++k) {
    if (k > 0) efact *= T(k);
    f.E.c[k] = epw / efact;
    epw *= T(-2) * theta;
  }
  // (k+2)(k+1) q_{k+2} = 4 e_k - 4 s q_k
  for (int k = 0; k + 2 <= order; ++k)
    f.Q.c[k + 2] = (T(4) * f.E.c[k] - T(4) * s * f.Q.c[k]) / T((k + 2) * (k + 1));
  return f;
}

// Dense truncated bivariate polynomial in (z, zbar), complex coefficients,
// total degree <= N.
template <class T>
class Bivariate {
 public:
  explicit Bivariate(int order = 0) : n_(order), c_((order + 1) * (order + 1)) {}

  int order() const { return n_; }
  Cx<T>& at(int k, int l) { return c_[k * (n_ + 1) + l]; }
  const Cx<T>& at(int k, int l) const { return c_[k * (n_ + 1) + l]; }

  static Bivariate constant(int order, Cx<T> v) {
    Bivariate b(order);
    b.at(0, 0) = v;
    return b;
  }
  static Bivariate zzbar(int order) {
    Bivariate b(order);
    b.at(1, 1) = Cx<T>(T(1));
    return b;
  }
  // coefficient * z^k zbar^l
  static Bivariate monomial(int order, int k, int l, Cx<T> v) {
    Bivariate b(order);
    if (k + l <= order) b.at(k, l) = v;
    return b;
  }

  friend Bivariate operator+(Bivariate a, const Bivariate& b) {
    a.check_order(b);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend Bivariate operator-(Bivariate a, const Bivariate& b) {
    a.check_order(b);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend Bivariate operator*(Bivariate a, const Cx<T>& s) {
    for (auto& x : a.c_) x *= s;
    return a;
  }
  friend Bivariate operator*(const Bivariate& a, const Bivariate& b) {
    a.check_order(b);
    Bivariate out(a.n_);
    for (int k1 = 0; k1 <= a.n_; ++k1)
      for (int l1 = 0; k1 + l1 <= a.n_; ++l1) {
        if (a.at(k1, l1).is_zero()) continue;
        for (int k2 = 0; k1 + k2 <= a.n_; ++k2)
          for (int l2 = 0; k1 + l1 + k2 + l2 <= a.n_; ++l2)
            out.at(k1 + k2, l1 + l2) += a.at(k1, l1) * b.at(k2, l2);
      }
    return out;
  }
  Bivariate& operator+=(const Bivariate& b) { return *this = *this + b; }
  Bivariate& operator-=(const Bivariate& b) { return *this = *this - b; }

  // swap z <-> zbar and conjugate coefficients
  Bivariate conj() const {
    Bivariate out(n_);
    for (int k = 0; k <= n_; ++k)
      for (int l = 0; k + l <= n_; ++l) out.at(l, k) = at(k, l).conj();
    return out;
  }

  // geometric-series inverse; requires a unit constant term
  Bivariate inverse() const {
    if (!(at(0, 0) == Cx<T>(T(1))))
      throw std::invalid_argument("Bivariate::inverse: constant term must be 1");
    Bivariate u = *this;
    u.at(0, 0) = Cx<T>();
    Bivariate out = constant(n_, Cx<T>(T(1)));
    Bivariate pw = constant(n_, Cx<T>(T(1)));
    for (int k = 1; k <= n_; ++k) {
      pw = pw * u;
      out += (k % 2 ? pw * Cx<T>(T(-1)) : pw);
    }
    return out;
  }

  // smallest total degree with a coefficient above tol, or order+1 if none
  int valuation(double tol) const {
    for (int d = 0; d <= n_; ++d)
      for (int k = 0; k <= d; ++k)
        if (!cx_is_zero(at(k, d - k), tol)) return d;
    return n_ + 1;
  }

  double max_abs() const {
    double m = 0;
    for (auto& x : c_) m = std::max({m, std::abs(to_double(x.re)), std::abs(to_double(x.im))});
    return m;
  }

 private:
  void check_order(const Bivariate& b) const {
    if (n_ != b.n_) throw std::invalid_argument("Bivariate: order mismatch");
  }
  int n_;
  std::vector<Cx<T>> c_;
};

// f(psi) truncated, Horner in v. psi should have valuation >= 2 so that the
// v-grading (weight 2) is respected.
template <class T>
Bivariate<T> compose(const VSeries<T>& f, const Bivariate<T>& psi) {
  int n = psi.order();
  int top = std::min(f.order(), n);
  Bivariate<T> out = Bivariate<T>::constant(n, Cx<T>(f.c[top]));
  for (int k = top - 1; k >= 0; --k) {
    out = out * psi;
    out.at(0, 0) += Cx<T>(f.c[k]);
  }
  return out;
}

// Truncated defining series v = sum gamma_{k,l} z^k zbar^l of a rigid
// hypersurface. gamma_00 = gamma_10 = gamma_01 = 0 always.
template <class T>
struct HermitianSeries {
  Bivariate<T> gamma;

  explicit HermitianSeries(int order = 8) : gamma(order) {}
  explicit HermitianSeries(Bivariate<T> g) : gamma(std::move(g)) {}
  int order() const { return gamma.order(); }
  const Cx<T>& at(int k, int l) const { return gamma.at(k, l); }

  static HermitianSeries heisenberg(int order) {
    return HermitianSeries(Bivariate<T>::zzbar(order));
  }
};

struct NormalFormViolation {
  int k = 0, l = 0;
  std::string what;
};

struct NormalFormCheck {
  bool ok = true;
  std::vector<NormalFormViolation> violations;
  explicit operator bool() const { return ok; }
};

// Rigid normal form: gamma_11 = 1, no harmonic terms (k,0)/(0,l), no
// (k,1)/(1,l) terms for k,l >= 2, Hermitian coefficients.
template <class T>
NormalFormCheck is_rigid_normal_form(const HermitianSeries<T>& h, double tol) {
  NormalFormCheck out;
  auto flag = [&](int k, int l, const char* what) {
    out.ok = false;
    out.violations.push_back({k, l, what});
  };
  int n = h.order();
  if (!cx_close(h.at(1, 1), Cx<T>(T(1)), tol)) flag(1, 1, "gamma_11 != 1");
  for (int k = 0; k <= n; ++k) {
    if (k != 1 && !cx_is_zero(h.at(k, 0), tol)) flag(k, 0, "harmonic term");
    if (k != 1 && !cx_is_zero(h.at(0, k), tol)) flag(0, k, "harmonic term");
    if (k == 1 && !cx_is_zero(h.at(1, 0), tol)) flag(1, 0, "gamma_10 != 0");
    if (k == 1 && !cx_is_zero(h.at(0, 1), tol)) flag(0, 1, "gamma_01 != 0");
  }
  for (int k = 2; k + 1 <= n; ++k) {
    if (!cx_is_zero(h.at(k, 1), tol)) flag(k, 1, "(k,1) term");
    if (!cx_is_zero(h.at(1, k), tol)) flag(1, k, "(1,l) term");
  }
  for (int k = 0; k <= n; ++k)
    for (int l = k; k + l <= n; ++l)
      if (!cx_close(h.at(l, k), h.at(k, l).conj(), tol)) flag(k, l, "not Hermitian");
  return out;
}

namespace detail {

// Solve F(z, zbar, psi) = 0 for psi by the fixed-point update psi -= F(psi).
// dF/dv = 1 at the origin, so each sweep gains at least one total order.
template <class T, class FEval>
Bivariate<T> newton_solve(int order, FEval&& eval_f) {
  Bivariate<T> psi = Bivariate<T>::zzbar(order);
  int val = 2;
  for (int iter = 0; iter <= order + 2; ++iter) {
    Bivariate<T> res = eval_f(psi);
    if constexpr (ScalarTraits<T>::exact) {
      int rv = res.valuation(0);
      if (rv > order) return psi;
      if (iter > 0 && rv <= val)
        throw std::runtime_error("series expansion failed to gain an order (wrong grading?)");
      val = rv;
    } else {
      // float mode: iterate until the residual is roundoff relative to psi
      if (res.max_abs() <= 1e-10 * std::max(1.0, psi.max_abs())) return psi;
    }
    psi -= res;
  }
  throw std::runtime_error("series expansion did not converge within the truncation order");
}

}  // namespace detail

// Hermitian series of the rigid sphere with closed-form parameters cf:
//   (1 - 4 phi |z|^2) S(v) - E(v) |z|^2
//     - (phi - abar z - a zbar + 4 phi (phi - theta) |z|^2) Q(v) = 0
// solved for v = psi(z, zbar).
template <class T>
HermitianSeries<T> expand_sphere(const ClosedFormParams<T>& cf, int order) {
  T res = closedform_consistency_residual(cf);
  if (!scalar_is_zero(res, 1e-9 * (1.0 + std::abs(to_double(cf.a.norm())))))
    throw std::invalid_argument("expand_sphere: inconsistent closed-form parameters");
  auto f = build_v_factors(cf.theta, cf.s, order / 2 + 1);
  auto zz = Bivariate<T>::zzbar(order);
  auto lead = Bivariate<T>::constant(order, Cx<T>(T(1))) - zz * Cx<T>(T(4) * cf.phi);
  auto pref = Bivariate<T>::constant(order, Cx<T>(cf.phi)) -
              Bivariate<T>::monomial(order, 1, 0, cf.a.conj()) -
              Bivariate<T>::monomial(order, 0, 1, cf.a) +
              zz * Cx<T>(T(4) * cf.phi * (cf.phi - cf.theta));
  auto psi = detail::newton_solve<T>(order, [&](const Bivariate<T>& p) {
    return lead * compose(f.S, p) - compose(f.E, p) * zz - pref * compose(f.Q, p);
  });
  return HermitianSeries<T>(std::move(psi));
}

// Hermitian series of a member of Stanton's family:
//   S(v) (1 - 2|b|^2 theta / |c|^2)
//     = |z|^2 E(v) / (1 + 4|b|^2|z|^2 + 2i(b zbar - bbar z))
//       + (|b|^2/|c|^2)(E - C)
//       + (bbar z / (cbar (1 - 2i bbar z))) (E - C - 2 i r S)
//       + (b zbar / (c (1 + 2i b zbar))) (E - C + 2 i r S)
// with c = r + i theta.
template <class T>
HermitianSeries<T> expand_stanton(const StantonParams<T>& sp, int order) {
  Cx<T> cs{sp.r, sp.theta};
  T b2 = sp.b.norm();
  if (cs.is_zero() && !sp.b.is_zero())
    throw std::invalid_argument("expand_stanton: r = theta = 0 requires b = 0");
  auto f = build_v_factors(sp.theta, sp.r * sp.r, order / 2 + 1);
  auto zz = Bivariate<T>::zzbar(order);
  Cx<T> i_{T(0), T(1)};

  T lhs_scale = cs.is_zero() ? T(1) : T(1) - T(2) * b2 * sp.theta / cs.norm();
  auto den1 = Bivariate<T>::constant(order, Cx<T>(T(1))) + zz * Cx<T>(T(4) * b2) +
              Bivariate<T>::monomial(order, 0, 1, i_ * sp.b * T(2)) -
              Bivariate<T>::monomial(order, 1, 0, i_ * sp.b.conj() * T(2));
  auto inv1 = den1.inverse();

  return HermitianSeries<T>(detail::newton_solve<T>(order, [&](const Bivariate<T>& p) {
    auto S = compose(f.S, p);
    auto E = compose(f.E, p);
    auto EC = E - compose(f.C, p);
    Bivariate<T> rhs = zz * E * inv1;
    if (!sp.b.is_zero()) {
      rhs += EC * Cx<T>(b2 / cs.norm());
      auto inv2 = (Bivariate<T>::constant(order, Cx<T>(T(1))) -
                   Bivariate<T>::monomial(order, 1, 0, i_ * sp.b.conj() * T(2)))
                      .inverse();
      auto inv3 = (Bivariate<T>::constant(order, Cx<T>(T(1))) +
                   Bivariate<T>::monomial(order, 0, 1, i_ * sp.b * T(2)))
                      .inverse();
      Cx<T> irS{T(0), T(2) * sp.r};
      rhs += Bivariate<T>::monomial(order, 1, 0, sp.b.conj() / cs.conj()) * inv2 *
             (EC - S * irS);
      rhs += Bivariate<T>::monomial(order, 0, 1, sp.b / cs) * inv3 * (EC + S * irS);
    }
    return S * Cx<T>(lhs_scale) - rhs;
  }));
}

// Reads (gamma_22, gamma_23, gamma_33) off a normal-form series.
template <class T>
SasakiTriple<T> extract_normal_params(const HermitianSeries<T>& h, double tol = 1e-8) {
  if (h.order() < 6)
    throw std::invalid_argument("extract_normal_params: order >= 6 required");
  auto check = is_rigid_normal_form(h, tol);
  if (!check.ok)
    throw std::invalid_argument("extract_normal_params: series is not in rigid normal form");
  return gamma_to_sasaki(GammaLow<T>{h.at(2, 2).re, h.at(2, 3), h.at(3, 3).re});
}

// gamma'_{kl} = c^{k-1} cbar^{l-1} gamma_{kl} (substitution z = c z', w = |c|^2 w').
// Satisfies extract_normal_params(rescale_surface(h, c))
//   == apply_scaling(extract_normal_params(h), c).
template <class T>
HermitianSeries<T> rescale_surface(const HermitianSeries<T>& h, const Cx<T>& c) {
  if (c.is_zero()) throw std::invalid_argument("rescale_surface: c must be nonzero");
  int n = h.order();
  Bivariate<T> out(n);
  for (int k = 0; k <= n; ++k)
    for (int l = 0; k + l <= n; ++l) {
      if (h.at(k, l).is_zero()) continue;
      Cx<T> factor(T(1));
      for (int i = 1; i < k; ++i) factor *= c;
      for (int i = 1; i < l; ++i) factor *= c.conj();
      if (k == 0) factor = factor / c;
      if (l == 0) factor = factor / c.conj();
      out.at(k, l) = factor * h.at(k, l);
    }
  return HermitianSeries<T>(std::move(out));
}

namespace detail {

// Univariate truncated series with complex coefficients, c[k] * x^k.
template <class T>
using USeries = std::vector<Cx<T>>;

template <class T>
USeries<T> umul(const USeries<T>& a, const USeries<T>& b, int order) {
  USeries<T> out(order + 1);
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j)
      if (i < (int)a.size() && j < (int)b.size()) out[i + j] += a[i] * b[j];
  return out;
}

// g(f(x)) with f(0) = 0
template <class T>
USeries<T> ucompose(const USeries<T>& g, const USeries<T>& f, int order) {
  USeries<T> out(order + 1);
  for (int k = std::min<int>(order, (int)g.size() - 1); k >= 0; --k) {
    out = umul(out, f, order);
    out[0] += g[k];
  }
  return out;
}

// h with f(h(x)) = x, for f = f1 x + ..., f1 != 0.
template <class T>
USeries<T> ureversion(const USeries<T>& f, int order) {
  Cx<T> f1 = f.size() > 1 ? f[1] : Cx<T>();
  if (f1.is_zero()) throw std::domain_error("series reversion: vanishing linear term");
  USeries<T> h(order + 1);
  h[1] = Cx<T>(T(1)) / f1;
  for (int iter = 0; iter < order; ++iter) {
    USeries<T> r = ucompose(f, h, order);  // should be x
    r[1] -= Cx<T>(T(1));
    bool zero = true;
    for (auto& x : r) zero = zero && x.is_zero();
    if (zero) break;
    for (int k = 0; k <= order; ++k) h[k] -= r[k] / f1;
  }
  return h;
}

}  // namespace detail

// Brings a defining series with harmonic, (k,1) and non-unit Levi terms into
// rigid normal form via z' = d psi/d zbar(z, 0), w' = w - 2i psi(z, 0),
// followed by the real rescaling of w that sets gamma_11 = 1.
template <class T>
HermitianSeries<T> stanton_normalize(const HermitianSeries<T>& h) {
  int n = h.order();
  Cx<T> levi = h.at(1, 1);
  double tol = ScalarTraits<T>::exact ? 0.0 : 1e-12;
  if (cx_is_zero(levi, tol)) throw std::domain_error("stanton_normalize: Levi-degenerate input");

  // remove harmonic terms: the w-shift subtracts gamma_{k0} z^k + conj
  Bivariate<T> psi1 = h.gamma;
  for (int k = 1; k <= n; ++k) {
    psi1.at(k, 0) = Cx<T>();
    psi1.at(0, k) = Cx<T>();
  }

  // z' = sum_k gamma_{k1} z^k; substitute the reverted map
  detail::USeries<T> f(n + 1);
  for (int k = 1; k <= n; ++k) f[k] = h.at(k, 1);
  auto hrev = detail::ureversion(f, n);
  auto hrev_bar = hrev;
  for (auto& x : hrev_bar) x = x.conj();

  // powers of the reverted map and its conjugate
  std::vector<detail::USeries<T>> pz(n + 1), pzb(n + 1);
  pz[0] = detail::USeries<T>(n + 1);
  pz[0][0] = Cx<T>(T(1));
  pzb[0] = pz[0];
  for (int k = 1; k <= n; ++k) {
    pz[k] = detail::umul(pz[k - 1], hrev, n);
    pzb[k] = detail::umul(pzb[k - 1], hrev_bar, n);
  }

  Bivariate<T> out(n);
  for (int k = 0; k <= n; ++k)
    for (int l = 0; k + l <= n; ++l) {
      if (psi1.at(k, l).is_zero()) continue;
      for (int i = k; i <= n; ++i)
        for (int j = l; i + j <= n; ++j) out.at(i, j) += psi1.at(k, l) * pz[k][i] * pzb[l][j];
    }

  // w-rescaling: gamma_11 is now 1/levi (real); scale all coefficients by levi
  T scale = levi.re;
  for (int k = 0; k <= n; ++k)
    for (int l = 0; k + l <= n; ++l) out.at(k, l) = out.at(k, l) * scale;
  return HermitianSeries<T>(std::move(out));
}

// Coefficientwise comparison up to the common truncation order.
template <class T>
bool series_close(const HermitianSeries<T>& a, const HermitianSeries<T>& b, double tol) {
  int n = std::min(a.order(), b.order());
  for (int k = 0; k <= n; ++k)
    for (int l = 0; k + l <= n; ++l)
      if (!cx_close(a.at(k, l), b.at(k, l), tol)) return false;
  return true;
}

}  // namespace rsl

#endif
