#ifndef RSL_COMPLEX_HPP
#define RSL_COMPLEX_HPP

#include <cmath>
#include <stdexcept>

#include "rsl/scalar.hpp"

namespace rsl {

// Complex numbers over an arbitrary field T (double or Rational).
// std::complex is specified for floating point only, hence this small type.
template <class T>
struct Cx {
  T re{};
  T im{};

  Cx() = default;
  Cx(T r) : re(std::move(r)) {}
  Cx(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  Cx conj() const { return {re, T(-im)}; }
  // |z|^2, exact in rational mode
  T norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator-(const Cx& a) { return {T(-a.re), T(-a.im)}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator*(const Cx& a, const T& s) { return {a.re * s, a.im * s}; }
  friend Cx operator*(const T& s, const Cx& a) { return a * s; }
  friend Cx operator/(const Cx& a, const T& s) { return {a.re / s, a.im / s}; }
  friend Cx operator/(const Cx& a, const Cx& b) {
    T n = b.norm();
    if (n == 0) throw std::invalid_argument("complex division by zero");
    return a * b.conj() / n;
  }
  Cx& operator+=(const Cx& b) { return *this = *this + b; }
  Cx& operator-=(const Cx& b) { return *this = *this - b; }
  Cx& operator*=(const Cx& b) { return *this = *this * b; }
  friend bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }

  template <class U>
  Cx<U> cast() const {
    return {static_cast<U>(to_double(re)), static_cast<U>(to_double(im))};
  }
};

inline double abs(const Cx<double>& z) { return std::hypot(z.re, z.im); }
inline double arg(const Cx<double>& z) { return std::atan2(z.im, z.re); }

template <class T>
inline Cx<T> cx_pow(Cx<T> base, int n) {
  Cx<T> r(T(1));
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

template <class T>
inline bool cx_is_zero(const Cx<T>& z, double tol) {
  return scalar_is_zero(z.re, tol) && scalar_is_zero(z.im, tol);
}

template <class T>
inline bool cx_close(const Cx<T>& a, const Cx<T>& b, double tol) {
  return scalar_close(a.re, b.re, tol) && scalar_close(a.im, b.im, tol);
}

inline Cx<double> to_cx_double(const Cx<double>& z) { return z; }
inline Cx<double> to_cx_double(const Cx<Rational>& z) { return {to_double(z.re), to_double(z.im)}; }

}  // namespace rsl

#endif
