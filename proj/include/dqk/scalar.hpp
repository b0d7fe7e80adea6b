#pragma once

// Scalar field elements: exact rationals, Gaussian rationals (Q adjoined the
// complex unit) and tolerance-compared complex doubles. Mixed arithmetic
// promotes Rational -> Gaussian -> Float; only the last step loses exactness.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "dqk/error.hpp"

namespace dqk {

inline constexpr double kDefaultTolerance = 1e-9;

enum class ScalarKind { Rational = 0, Gaussian = 1, Float = 2 };

struct GaussianRational {
  mpq_class re;
  mpq_class im;
};

struct ComplexFloat {
  std::complex<double> value;
  double tolerance = kDefaultTolerance;
};

class Scalar {
 public:
  Scalar() : rep_(mpq_class(0)) {}
  Scalar(int v) : rep_(mpq_class(v)) {}            // NOLINT(google-explicit-constructor)
  Scalar(long v) : rep_(mpq_class(v)) {}           // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& v) : rep_(v) {}          // NOLINT(google-explicit-constructor)
  Scalar(const mpz_class& v) : rep_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)

  static Scalar rational(long num, long den) {
    if (den == 0) throw DomainError("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
  }

  static Scalar gaussian(const mpq_class& re, const mpq_class& im) {
    Scalar s;
    if (im == 0) {
      s.rep_ = re;
    } else {
      s.rep_ = GaussianRational{re, im};
    }
    return s;
  }

  static Scalar complex_float(double re, double im = 0.0, double tolerance = kDefaultTolerance) {
    Scalar s;
    s.rep_ = ComplexFloat{{re, im}, tolerance};
    return s;
  }

  static Scalar complex_float(std::complex<double> v, double tolerance = kDefaultTolerance) {
    return complex_float(v.real(), v.imag(), tolerance);
  }

  /// The complex unit (not the quaternion unit).
  static Scalar imag_unit() { return gaussian(0, 1); }

  ScalarKind kind() const { return static_cast<ScalarKind>(rep_.index()); }
  bool is_exact() const { return kind() != ScalarKind::Float; }

  bool is_zero() const {
    switch (kind()) {
      case ScalarKind::Rational:
        return std::get<mpq_class>(rep_) == 0;
      case ScalarKind::Gaussian:
        return false;  // normalized: a Gaussian with zero imaginary part is stored as Rational
      case ScalarKind::Float: {
        const auto& f = std::get<ComplexFloat>(rep_);
        return std::abs(f.value) <= f.tolerance;
      }
    }
    return false;
  }

  /// True for rationals and for floats whose imaginary part is within tolerance.
  bool is_real() const {
    switch (kind()) {
      case ScalarKind::Rational:
        return true;
      case ScalarKind::Gaussian:
        return false;
      case ScalarKind::Float: {
        const auto& f = std::get<ComplexFloat>(rep_);
        return std::abs(f.value.imag()) <= f.tolerance;
      }
    }
    return false;
  }

  const mpq_class& as_rational() const {
    if (kind() != ScalarKind::Rational) throw DomainError("scalar is not an exact rational");
    return std::get<mpq_class>(rep_);
  }

  /// Real and imaginary parts of an exact scalar.
  mpq_class re_exact() const {
    if (kind() == ScalarKind::Rational) return std::get<mpq_class>(rep_);
    if (kind() == ScalarKind::Gaussian) return std::get<GaussianRational>(rep_).re;
    throw DomainError("scalar is not exact");
  }
  mpq_class im_exact() const {
    if (kind() == ScalarKind::Rational) return mpq_class(0);
    if (kind() == ScalarKind::Gaussian) return std::get<GaussianRational>(rep_).im;
    throw DomainError("scalar is not exact");
  }

  const ComplexFloat& as_float() const {
    if (kind() != ScalarKind::Float) throw DomainError("scalar is not a float");
    return std::get<ComplexFloat>(rep_);
  }

  std::complex<double> to_complex() const {
    switch (kind()) {
      case ScalarKind::Rational:
        return {std::get<mpq_class>(rep_).get_d(), 0.0};
      case ScalarKind::Gaussian: {
        const auto& g = std::get<GaussianRational>(rep_);
        return {g.re.get_d(), g.im.get_d()};
      }
      case ScalarKind::Float:
        return std::get<ComplexFloat>(rep_).value;
    }
    return {};
  }

  double magnitude() const { return std::abs(to_complex()); }

  /// Zero for exact scalars.
  double tolerance() const {
    return kind() == ScalarKind::Float ? std::get<ComplexFloat>(rep_).tolerance : 0.0;
  }

  Scalar conj() const {
    switch (kind()) {
      case ScalarKind::Rational:
        return *this;
      case ScalarKind::Gaussian: {
        const auto& g = std::get<GaussianRational>(rep_);
        return gaussian(g.re, -g.im);
      }
      case ScalarKind::Float: {
        const auto& f = std::get<ComplexFloat>(rep_);
        return complex_float(std::conj(f.value), f.tolerance);
      }
    }
    return *this;
  }

  Scalar real_part() const {
    if (kind() == ScalarKind::Float) {
      const auto& f = std::get<ComplexFloat>(rep_);
      return complex_float(f.value.real(), 0.0, f.tolerance);
    }
    return Scalar(re_exact());
  }

  Scalar imag_part() const {
    if (kind() == ScalarKind::Float) {
      const auto& f = std::get<ComplexFloat>(rep_);
      return complex_float(f.value.imag(), 0.0, f.tolerance);
    }
    return Scalar(im_exact());
  }

  /// Sign of a real scalar (-1, 0, 1).
  int sign() const {
    switch (kind()) {
      case ScalarKind::Rational:
        return sgn(std::get<mpq_class>(rep_));
      case ScalarKind::Gaussian:
        throw DomainError("sign of a non-real scalar");
      case ScalarKind::Float: {
        const auto& f = std::get<ComplexFloat>(rep_);
        if (std::abs(f.value.imag()) > f.tolerance) throw DomainError("sign of a non-real scalar");
        if (std::abs(f.value.real()) <= f.tolerance) return 0;
        return f.value.real() > 0 ? 1 : -1;
      }
    }
    return 0;
  }

  /// Converts to at least `target`; exact values become floats with `tolerance`.
  Scalar promoted(ScalarKind target, double tolerance = kDefaultTolerance) const {
    if (static_cast<int>(kind()) >= static_cast<int>(target)) return *this;
    if (target == ScalarKind::Float) return complex_float(to_complex(), tolerance);
    return *this;  // Rational -> Gaussian is implicit (normalized representation)
  }

  Scalar operator-() const {
    switch (kind()) {
      case ScalarKind::Rational:
        return Scalar(mpq_class(-std::get<mpq_class>(rep_)));
      case ScalarKind::Gaussian: {
        const auto& g = std::get<GaussianRational>(rep_);
        return gaussian(-g.re, -g.im);
      }
      case ScalarKind::Float: {
        const auto& f = std::get<ComplexFloat>(rep_);
        return complex_float(-f.value, f.tolerance);
      }
    }
    return *this;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.kind() == ScalarKind::Rational && b.kind() == ScalarKind::Rational) {
      return Scalar(mpq_class(std::get<mpq_class>(a.rep_) + std::get<mpq_class>(b.rep_)));
    }
    if (a.is_exact() && b.is_exact()) {
      return gaussian(a.re_exact() + b.re_exact(), a.im_exact() + b.im_exact());
    }
    return complex_float(a.to_complex() + b.to_complex(), joint_tolerance(a, b));
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.kind() == ScalarKind::Rational && b.kind() == ScalarKind::Rational) {
      return Scalar(mpq_class(std::get<mpq_class>(a.rep_) - std::get<mpq_class>(b.rep_)));
    }
    if (a.is_exact() && b.is_exact()) {
      return gaussian(a.re_exact() - b.re_exact(), a.im_exact() - b.im_exact());
    }
    return complex_float(a.to_complex() - b.to_complex(), joint_tolerance(a, b));
  }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.kind() == ScalarKind::Rational && b.kind() == ScalarKind::Rational) {
      return Scalar(mpq_class(std::get<mpq_class>(a.rep_) * std::get<mpq_class>(b.rep_)));
    }
    if (a.is_exact() && b.is_exact()) {
      mpq_class ar = a.re_exact(), ai = a.im_exact(), br = b.re_exact(), bi = b.im_exact();
      return gaussian(ar * br - ai * bi, ar * bi + ai * br);
    }
    return complex_float(a.to_complex() * b.to_complex(), joint_tolerance(a, b));
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    if (a.kind() == ScalarKind::Rational && b.kind() == ScalarKind::Rational) {
      return Scalar(mpq_class(std::get<mpq_class>(a.rep_) / std::get<mpq_class>(b.rep_)));
    }
    if (a.is_exact() && b.is_exact()) {
      mpq_class br = b.re_exact(), bi = b.im_exact();
      mpq_class den = br * br + bi * bi;
      Scalar num = a * gaussian(br, -bi);
      return gaussian(num.re_exact() / den, num.im_exact() / den);
    }
    return complex_float(a.to_complex() / b.to_complex(), joint_tolerance(a, b));
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  /// Literal equality for exact scalars; |a - b| <= tolerance once a float is involved.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) {
      if (a.kind() != b.kind()) return false;
      if (a.kind() == ScalarKind::Rational) return std::get<mpq_class>(a.rep_) == std::get<mpq_class>(b.rep_);
      const auto& ga = std::get<GaussianRational>(a.rep_);
      const auto& gb = std::get<GaussianRational>(b.rep_);
      return ga.re == gb.re && ga.im == gb.im;
    }
    return std::abs(a.to_complex() - b.to_complex()) <= joint_tolerance(a, b);
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Canonical text: "n", "n/d", "a+b*i" with rational a, b; floats in %.17g.
  std::string to_string() const {
    switch (kind()) {
      case ScalarKind::Rational:
        return std::get<mpq_class>(rep_).get_str();
      case ScalarKind::Gaussian: {
        const auto& g = std::get<GaussianRational>(rep_);
        if (sgn(g.re) == 0) return g.im.get_str() + "*i";
        std::string out = g.re.get_str();
        if (sgn(g.im) < 0) {
          out += "-" + mpq_class(-g.im).get_str();
        } else {
          out += "+" + g.im.get_str();
        }
        return out + "*i";
      }
      case ScalarKind::Float: {
        const auto& f = std::get<ComplexFloat>(rep_);
        char buf[64];
        if (f.value.imag() == 0.0) {
          std::snprintf(buf, sizeof buf, "%.17g", f.value.real());
        } else {
          std::snprintf(buf, sizeof buf, "%.17g%+.17g*i", f.value.real(), f.value.imag());
        }
        return buf;
      }
    }
    return {};
  }

 private:
  static double joint_tolerance(const Scalar& a, const Scalar& b) {
    return std::max(a.tolerance(), b.tolerance());
  }

  std::variant<mpq_class, GaussianRational, ComplexFloat> rep_;
};

inline Scalar conj(const Scalar& s) { return s.conj(); }

/// Exact square root of a nonnegative rational, if it is a rational square.
inline std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

/// A square root inside the Gaussian rationals, when one exists.
inline std::optional<Scalar> exact_sqrt(const Scalar& s) {
  if (!s.is_exact()) return std::nullopt;
  const mpq_class a = s.re_exact();
  const mpq_class b = s.im_exact();
  if (b == 0) {
    if (sgn(a) >= 0) {
      if (auto r = rational_sqrt(a)) return Scalar(*r);
      return std::nullopt;
    }
    if (auto r = rational_sqrt(mpq_class(-a))) return Scalar::gaussian(0, *r);
    return std::nullopt;
  }
  // (x + yi)^2 = a + bi with m = |a + bi| rational.
  auto m = rational_sqrt(mpq_class(a * a + b * b));
  if (!m) return std::nullopt;
  auto x = rational_sqrt(mpq_class((a + *m) / 2));
  if (!x || *x == 0) return std::nullopt;
  mpq_class y = b / (2 * *x);
  return Scalar::gaussian(*x, y);
}

/// Exact square root when available, otherwise the principal complex double root.
inline Scalar sqrt_any(const Scalar& s, double tolerance = kDefaultTolerance) {
  if (auto r = exact_sqrt(s)) return *r;
  double tol = s.is_exact() ? tolerance : s.tolerance();
  return Scalar::complex_float(std::sqrt(s.to_complex()), tol);
}

}  // namespace dqk
