#pragma once

// Scalar layer.  Every algebraic structure in the library is templated over a
// complex scalar type S so the same code runs in two arithmetic modes:
//
//   * naqm::Complex       -- std::complex<double>, the fast path
//   * naqm::ExactComplex  -- Gaussian rationals (exact p/q real and imaginary
//                            parts), used when structural statements have to
//                            hold on the nose rather than to a tolerance
//
// ScalarTraits<S> exposes the handful of operations the generic layers need.
// Tolerances are carried as plain doubles everywhere; exact mode ignores them
// and compares against literal zero.

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "naqm/errors.hpp"

namespace naqm {

using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

// Complex number with exact rational components.  std::complex over a
// non-floating type is not sanctioned by the standard, hence this little
// struct instead.
struct ExactComplex {
  Rational re, im;

  ExactComplex() : re(0), im(0) {}
  ExactComplex(int v) : re(v), im(0) {}             // NOLINT: implicit on purpose
  ExactComplex(long v) : re(v), im(0) {}            // NOLINT
  ExactComplex(Rational r) : re(std::move(r)), im(0) {}
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    // real and zero operands dominate closure arithmetic; avoid the
    // four-multiplication Gaussian product when a cheaper form exists
    if (a.im == 0) {
      if (a.re == 0) return {};
      if (b.im == 0) return {a.re * b.re, Rational(0)};
      return {a.re * b.re, a.re * b.im};
    }
    if (b.im == 0) {
      if (b.re == 0) return {};
      return {a.re * b.re, a.im * b.re};
    }
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
    Rational d = b.re * b.re + b.im * b.im;
    if (d == 0) throw InternalError("exact complex division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  ExactComplex& operator+=(const ExactComplex& o) { return *this = *this + o; }
  ExactComplex& operator-=(const ExactComplex& o) { return *this = *this - o; }
  ExactComplex& operator*=(const ExactComplex& o) { return *this = *this * o; }
  ExactComplex& operator/=(const ExactComplex& o) { return *this = *this / o; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  using Real = double;

  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex i() { return {0.0, 1.0}; }
  static Complex conj(const Complex& s) { return std::conj(s); }
  static Real real(const Complex& s) { return s.real(); }
  static Real imag(const Complex& s) { return s.imag(); }
  static double abs(const Complex& s) { return std::abs(s); }
  static bool is_zero(const Complex& s, double tol) {
    if (tol == 0.0) return s.real() == 0.0 && s.imag() == 0.0;  // skip the hypot
    return std::abs(s) <= tol;
  }
  static Complex from_double(double v) { return {v, 0.0}; }
  static Complex from_parts(double re, double im) { return {re, im}; }
  static Complex from_ratio(long num, long den) {
    return {static_cast<double>(num) / static_cast<double>(den), 0.0};
  }
  static Complex to_complex(const Complex& s) { return s; }
  static double real_to_double(Real r) { return r; }
};

template <>
struct ScalarTraits<ExactComplex> {
  static constexpr bool exact = true;
  using Real = Rational;

  static ExactComplex zero() { return {}; }
  static ExactComplex one() { return {Rational(1), Rational(0)}; }
  static ExactComplex i() { return {Rational(0), Rational(1)}; }
  static ExactComplex conj(const ExactComplex& s) { return {s.re, -s.im}; }
  static Real real(const ExactComplex& s) { return s.re; }
  static Real imag(const ExactComplex& s) { return s.im; }
  static double abs(const ExactComplex& s) {
    return std::sqrt(static_cast<double>(s.re * s.re + s.im * s.im));
  }
  static bool is_zero(const ExactComplex& s, double /*tol*/) {
    return s.re == 0 && s.im == 0;
  }
  // Doubles convert exactly: every finite double is a dyadic rational.
  static ExactComplex from_double(double v) { return {Rational(v), Rational(0)}; }
  static ExactComplex from_parts(double re, double im) { return {Rational(re), Rational(im)}; }
  static ExactComplex from_ratio(long num, long den) {
    return {Rational(num) / Rational(den), Rational(0)};
  }
  static Complex to_complex(const ExactComplex& s) {
    return {static_cast<double>(s.re), static_cast<double>(s.im)};
  }
  static double real_to_double(const Real& r) { return static_cast<double>(r); }
};

// Convenience shorthands used throughout the headers.
template <class S>
S conj_s(const S& s) { return ScalarTraits<S>::conj(s); }

template <class S>
double abs_s(const S& s) { return ScalarTraits<S>::abs(s); }

template <class S>
bool is_zero_s(const S& s, double tol) { return ScalarTraits<S>::is_zero(s, tol); }

inline std::string format_complex(const Complex& z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

}  // namespace naqm
