#ifndef RSL_SYMMETRY_HPP
#define RSL_SYMMETRY_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rsl/linalg.hpp"
#include "rsl/parameters.hpp"
#include "rsl/series.hpp"

namespace rsl {

// Polynomial in (z, w) with complex coefficients, dense up to a degree cap.
template <class T>
class Poly2 {
 public:
  explicit Poly2(int cap = 4) : cap_(cap), c_((cap + 1) * (cap + 1)) {}

  int cap() const { return cap_; }
  Cx<T>& at(int i, int j) { return c_[i * (cap_ + 1) + j]; }
  const Cx<T>& at(int i, int j) const { return c_[i * (cap_ + 1) + j]; }

  static Poly2 monomial(int i, int j, Cx<T> v, int cap = 4) {
    Poly2 p(cap);
    p.at(i, j) = v;
    return p;
  }

  int degree() const {
    int d = -1;
    for (int i = 0; i <= cap_; ++i)
      for (int j = 0; i + j <= cap_; ++j)
        if (!at(i, j).is_zero()) d = std::max(d, i + j);
    return d;
  }

  friend Poly2 operator+(Poly2 a, const Poly2& b) {
    a.match(b);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend Poly2 operator-(Poly2 a, const Poly2& b) {
    a.match(b);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend Poly2 operator*(Poly2 a, const Cx<T>& s) {
    for (auto& x : a.c_) x *= s;
    return a;
  }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 out(a.cap_);
    for (int i1 = 0; i1 <= a.cap_; ++i1)
      for (int j1 = 0; i1 + j1 <= a.cap_; ++j1) {
        if (a.at(i1, j1).is_zero()) continue;
        for (int i2 = 0; i2 <= b.cap_; ++i2)
          for (int j2 = 0; i2 + j2 <= b.cap_; ++j2) {
            if (b.at(i2, j2).is_zero()) continue;
            if (i1 + i2 + j1 + j2 > a.cap_)
              throw std::runtime_error("Poly2: degree overflow beyond the cap");
            out.at(i1 + i2, j1 + j2) += a.at(i1, j1) * b.at(i2, j2);
          }
      }
    return out;
  }
  Poly2& operator+=(const Poly2& b) { return *this = *this + b; }

  Poly2 dz() const {
    Poly2 out(cap_);
    for (int i = 1; i <= cap_; ++i)
      for (int j = 0; i + j <= cap_; ++j) out.at(i - 1, j) = at(i, j) * T(i);
    return out;
  }
  Poly2 dw() const {
    Poly2 out(cap_);
    for (int i = 0; i <= cap_; ++i)
      for (int j = 1; i + j <= cap_; ++j) out.at(i, j - 1) = at(i, j) * T(j);
    return out;
  }

  bool is_zero(double tol = 0) const {
    for (auto& x : c_)
      if (!cx_is_zero(x, tol)) return false;
    return true;
  }

 private:
  void match(const Poly2& b) const {
    if (cap_ != b.cap_) throw std::invalid_argument("Poly2: cap mismatch");
  }
  int cap_;
  std::vector<Cx<T>> c_;
};

// Polynomial holomorphic vector field X_z d/dz + X_w d/dw on C^2.
template <class T>
struct HoloVectorField {
  Poly2<T> xz{4};
  Poly2<T> xw{4};

  int degree() const { return std::max(xz.degree(), xw.degree()); }
};

// [X, Y] = (X(Y_z) - Y(X_z)) d/dz + (X(Y_w) - Y(X_w)) d/dw.
template <class T>
HoloVectorField<T> bracket(const HoloVectorField<T>& x, const HoloVectorField<T>& y) {
  auto derive = [](const HoloVectorField<T>& v, const Poly2<T>& f) {
    return v.xz * f.dz() + v.xw * f.dw();
  };
  return {derive(x, y.xz) - derive(y, x.xz), derive(x, y.xw) - derive(y, x.xw)};
}

// Parameters of the 8-dimensional family of infinitesimal automorphisms of
// the Heisenberg sphere; q and r are real.
template <class T>
struct AutParams {
  Cx<T> p{};
  Cx<T> c{};
  Cx<T> a{};
  T q{};
  T r{};

  std::array<T, 8> as_real_vector() const {
    return {p.re, p.im, c.re, c.im, a.re, a.im, q, r};
  }
  static AutParams from_real_vector(const std::array<T, 8>& v) {
    return {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, v[6], v[7]};
  }
};

// (p + c z + a w + 2i abar z^2 + r zw) d/dz
//   + (q + 2i pbar z + 2 Re(c) w + 2i abar zw + r w^2) d/dw
template <class T>
HoloVectorField<T> aut_family(const AutParams<T>& ap) {
  Cx<T> i2{T(0), T(2)};
  HoloVectorField<T> x;
  x.xz.at(0, 0) = ap.p;
  x.xz.at(1, 0) = ap.c;
  x.xz.at(0, 1) = ap.a;
  x.xz.at(2, 0) = i2 * ap.a.conj();
  x.xz.at(1, 1) = Cx<T>(ap.r);
  x.xw.at(0, 0) = Cx<T>(ap.q);
  x.xw.at(1, 0) = i2 * ap.p.conj();
  x.xw.at(0, 1) = Cx<T>(T(2) * ap.c.re);
  x.xw.at(1, 1) = i2 * ap.a.conj();
  x.xw.at(0, 2) = Cx<T>(ap.r);
  return x;
}

// Recovers the family parameters of a field, checking every structural
// constraint of the family; nullopt if the field lies outside it.
template <class T>
std::optional<AutParams<T>> family_params(const HoloVectorField<T>& x, double tol = 0) {
  if (x.degree() > 2) return std::nullopt;
  AutParams<T> ap{x.xz.at(0, 0), x.xz.at(1, 0), x.xz.at(0, 1), x.xw.at(0, 0).re,
                  x.xz.at(1, 1).re};
  if (!scalar_is_zero(x.xw.at(0, 0).im, tol)) return std::nullopt;
  if (!scalar_is_zero(x.xz.at(1, 1).im, tol)) return std::nullopt;
  auto rebuilt = aut_family(ap);
  auto diff_z = x.xz - rebuilt.xz;
  auto diff_w = x.xw - rebuilt.xw;
  if (!diff_z.is_zero(tol) || !diff_w.is_zero(tol)) return std::nullopt;
  return ap;
}

// Z = (i tau z + a w + 2i abar z^2 + rho zw) d/dz + (1 + 2i abar zw + rho w^2) d/dw.
// This is aut_family with p = 0, c = i tau, q = 1, r = rho.
template <class T>
HoloVectorField<T> reeb_field(const SasakiTriple<T>& t) {
  return aut_family(AutParams<T>{{}, {T(0), t.tau}, t.a, T(1), t.rho});
}

namespace detail {

// Trivariate polynomial in (z, zbar, u) with complex coefficients; small
// dense cube for the tangency substitution.
template <class T>
struct Tri {
  static constexpr int D = 7;
  std::vector<Cx<T>> c = std::vector<Cx<T>>(D * D * D);
  Cx<T>& at(int i, int j, int k) { return c[(i * D + j) * D + k]; }
  const Cx<T>& at(int i, int j, int k) const { return c[(i * D + j) * D + k]; }
};

// p(z, w) with w = u + i z zbar, multiplied by an optional extra z/zbar power.
template <class T>
void accumulate_on_sphere(Tri<T>& out, const Poly2<T>& p, int extra_zbar, const Cx<T>& scale) {
  Cx<T> i1{T(0), T(1)};
  for (int i = 0; i <= p.cap(); ++i)
    for (int j = 0; i + j <= p.cap(); ++j) {
      if (p.at(i, j).is_zero()) continue;
      // expand (u + i z zbar)^j
      for (int m = 0; m <= j; ++m) {
        // binomial(j, m) u^{j-m} (i z zbar)^m
        T binom(1);
        for (int t = 1; t <= m; ++t) binom = binom * T(j - m + t) / T(t);
        Cx<T> coeff = p.at(i, j) * scale * cx_pow(i1, m) * binom;
        out.at(i + m, m + extra_zbar, j - m) += coeff;
      }
    }
}

}  // namespace detail

// True iff 2 Re[X_z (-zbar) + X_w/(2i)] vanishes identically after
// substituting w = u + i z zbar, i.e. X is tangent to v = |z|^2.
template <class T>
bool is_tangent_to_sphere(const HoloVectorField<T>& x, double tol = 0) {
  detail::Tri<T> g;
  detail::accumulate_on_sphere(g, x.xz, 1, Cx<T>(T(-1)));
  detail::accumulate_on_sphere(g, x.xw, 0, Cx<T>(T(0), T(-1)) / T(2));  // 1/(2i) = -i/2
  // add the conjugate: z <-> zbar, u -> u, coefficients conjugated
  for (int i = 0; i < detail::Tri<T>::D; ++i)
    for (int j = 0; j < detail::Tri<T>::D; ++j)
      for (int k = 0; k < detail::Tri<T>::D; ++k) {
        Cx<T> total = g.at(i, j, k) + g.at(j, i, k).conj();
        if (!cx_is_zero(total, tol)) return false;
      }
  return true;
}

template <class T>
struct SymmetryAlgebra {
  int dimension = 0;
  std::vector<AutParams<T>> params;            // canonical rref basis vectors
  std::vector<HoloVectorField<T>> basis;       // aut_family of each
  std::vector<std::vector<std::vector<T>>> structure_constants;
};

namespace detail {

// Flatten the pair of component polynomials (degree <= 3) into a real vector.
template <class T>
std::vector<T> field_to_real_vector(const HoloVectorField<T>& x) {
  std::vector<T> v;
  for (const Poly2<T>* comp : {&x.xz, &x.xw})
    for (int i = 0; i <= comp->cap(); ++i)
      for (int j = 0; i + j <= comp->cap(); ++j) {
        v.push_back(comp->at(i, j).re);
        v.push_back(comp->at(i, j).im);
      }
  return v;
}

}  // namespace detail

// Kernel of ap -> [aut_family(ap), Z] over the 8 real parameter coordinates
// (p_re, p_im, c_re, c_im, a_re, a_im, q, r).
template <class T>
SymmetryAlgebra<T> sasaki_algebra(const SasakiTriple<T>& t) {
  auto z = reeb_field(t);
  Matrix<T> m;  // rows: coefficient constraints, cols: 8 params
  std::vector<std::vector<T>> cols;
  for (int i = 0; i < 8; ++i) {
    std::array<T, 8> e{};
    e[i] = T(1);
    cols.push_back(detail::field_to_real_vector(bracket(aut_family(AutParams<T>::from_real_vector(e)), z)));
  }
  size_t rows = cols[0].size();
  m.resize(rows, std::vector<T>(8));
  for (size_t r = 0; r < rows; ++r)
    for (int i = 0; i < 8; ++i) m[r][i] = cols[i][r];

  auto kernel = nullspace(std::move(m));
  SymmetryAlgebra<T> out;
  out.dimension = static_cast<int>(kernel.size());
  for (auto& v : kernel) {
    std::array<T, 8> arr;
    for (int i = 0; i < 8; ++i) arr[i] = v[i];
    out.params.push_back(AutParams<T>::from_real_vector(arr));
    out.basis.push_back(aut_family(out.params.back()));
  }

  // structure constants: [X_i, X_j] = sum_k s_ijk X_k (the kernel is a Lie
  // subalgebra, so the bracket stays in the family and in the span)
  int d = out.dimension;
  double tol = ScalarTraits<T>::exact ? 0.0 : 1e-8;
  out.structure_constants.assign(
      d, std::vector<std::vector<T>>(d, std::vector<T>(d, T(0))));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      auto br = bracket(out.basis[i], out.basis[j]);
      auto ap = family_params(br, tol);
      if (!ap) throw std::runtime_error("sasaki_algebra: bracket left the family");
      auto arr = ap->as_real_vector();
      auto coords = coordinates_in_rref_span(kernel, std::vector<T>(arr.begin(), arr.end()), tol);
      if (coords.empty() && !std::all_of(arr.begin(), arr.end(), [&](const T& x) {
            return scalar_is_zero(x, tol);
          }))
        throw std::runtime_error("sasaki_algebra: bracket left the span");
      for (int k = 0; k < d && k < (int)coords.size(); ++k)
        out.structure_constants[i][j][k] = coords[k];
    }
  return out;
}

enum class HomogeneousClass { HeisenbergFlat, RoundSphere, Hyperboloid, Generic };

inline const char* to_string(HomogeneousClass h) {
  switch (h) {
    case HomogeneousClass::HeisenbergFlat: return "HeisenbergFlat";
    case HomogeneousClass::RoundSphere: return "RoundSphere";
    case HomogeneousClass::Hyperboloid: return "Hyperboloid";
    case HomogeneousClass::Generic: return "Generic";
  }
  return "?";
}

// Exact predicates in rational mode, a tolerance band in float mode.
template <class T>
HomogeneousClass classify_homogeneous(const SasakiTriple<T>& t, double band = 1e-9) {
  bool a0 = cx_is_zero(t.a, band);
  bool tau0 = scalar_is_zero(t.tau, band);
  bool rho_tau2 = scalar_is_zero(t.rho - t.tau * t.tau, band);
  if (a0 && tau0 && scalar_is_zero(t.rho, band)) return HomogeneousClass::HeisenbergFlat;
  if (a0 && rho_tau2 && t.tau > 0) return HomogeneousClass::RoundSphere;
  if (a0 && rho_tau2 && t.tau < 0) return HomogeneousClass::Hyperboloid;
  return HomogeneousClass::Generic;
}

// Rotation/translation data of the model-sphere automorphisms; rot must have
// unit modulus.
template <class T>
struct MoebiusMapParams {
  Cx<T> rot{T(1)};
  Cx<T> zeta{};
  T q{};
};

// Substitutes the map
//   z' = rot (z -+ zeta)/(zetabar z + 1),
//   w' = w + q -+ 2i log(1 + zetabar z) +- i log(1 +- |zeta|^2)
// into the defining equation of v = log(1 + |z|^2) (upper signs) or
// v = -log(1 - |z|^2) (lower signs), in the exponentiated form
// e^{+-v} = 1 +- |z|^2, and confirms the image satisfies it to order N.
template <class T>
bool verify_finite_automorphism(const HermitianSeries<T>& h, const MoebiusMapParams<T>& map,
                                int order) {
  double tol = ScalarTraits<T>::exact ? 0.0 : 1e-9;
  if (!scalar_close(map.rot.norm(), T(1), 1e-9))
    throw std::invalid_argument("verify_finite_automorphism: rotation must be unimodular");

  // identify the model from gamma_22
  double g22 = to_double(h.at(2, 2).re);
  bool sphere_model;
  if (std::abs(g22 + 0.5) <= 1e-6)
    sphere_model = true;
  else if (std::abs(g22 - 0.5) <= 1e-6)
    sphere_model = false;
  else
    throw std::invalid_argument("verify_finite_automorphism: series is not one of the two models");
  if (!sphere_model && to_double(map.zeta.norm()) >= 1.0)
    throw std::invalid_argument("verify_finite_automorphism: |zeta| < 1 required");

  // confirm the series matches the model: v = +-log(1 +- |z|^2)
  {
    // log(1+x): x - x^2/2 + ...; -log(1-x): x + x^2/2 + ...
    for (int k = 1; 2 * k <= h.order(); ++k) {
      Cx<T> want = sphere_model ? Cx<T>((k % 2 ? T(1) : T(-1)) / T(k)) : Cx<T>(T(1) / T(k));
      if (!cx_close(h.at(k, k), want, 1e-8)) return false;
    }
  }

  int n = order;
  T s = sphere_model ? T(1) : T(-1);
  auto one = Bivariate<T>::constant(n, Cx<T>(T(1)));
  auto zz = Bivariate<T>::zzbar(n);
  auto denom = one + Bivariate<T>::monomial(n, 1, 0, map.zeta.conj());
  auto denom_inv = denom.inverse();
  auto numer = Bivariate<T>::monomial(n, 1, 0, Cx<T>(T(1))) -
               Bivariate<T>::constant(n, map.zeta * s);
  auto zp = numer * denom_inv * map.rot;
  auto zpbar = zp.conj();

  // e^{s v'} = e^{s v} e^{s Delta} with e^{s v} = 1 + s z zbar on the surface
  // and e^{s Delta} = (1 + s |zeta|^2) / ((1 + zetabar z)(1 + zeta zbar)).
  auto lhs = (one + zz * Cx<T>(s)) * denom_inv * denom.conj().inverse() *
             Cx<T>(T(1) + s * map.zeta.norm());
  auto rhs = one + zp * zpbar * Cx<T>(s);
  auto diff = lhs - rhs;
  return diff.valuation(tol * std::max(1.0, lhs.max_abs())) > n;
}

}  // namespace rsl

#endif
