#ifndef RSL_SCALAR_HPP
#define RSL_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace rsl {

// et_off keeps arithmetic results as plain values, so template argument
// deduction across the library sees Rational rather than expression types.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// Global float tolerance, overridable via RSL_TOL.
inline double& float_tolerance() {
  static double tol = [] {
    if (const char* env = std::getenv("RSL_TOL")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && v > 0) return v;
    }
    return 1e-10;
  }();
  return tol;
}

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double tol() { return float_tolerance(); }
  static double from_rational(const Rational& r) { return static_cast<double>(r); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational tol() { return Rational(0); }
  static Rational from_rational(const Rational& r) { return r; }
};

template <class T>
inline bool scalar_is_zero(const T& x, double tol) {
  if constexpr (ScalarTraits<T>::exact)
    return x == 0;
  else
    return std::abs(x) <= tol;
}

// Relative comparison in float mode, exact equality in rational mode.
template <class T>
inline bool scalar_close(const T& a, const T& b, double tol) {
  if constexpr (ScalarTraits<T>::exact) {
    return a == b;
  } else {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
  }
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& r) { return static_cast<double>(r); }

// Accepts "3", "-5", "3/4", "-3/4".
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(s);
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: " + s);
  }
}

inline std::string rational_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

}  // namespace rsl

#endif
