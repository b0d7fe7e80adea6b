#pragma once

// Univariate polynomials over Scalar, coefficients stored lowest degree first.
// gcd and exact division are defined over the exact fields only.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "dqk/error.hpp"
#include "dqk/scalar.hpp"

namespace dqk {

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> ascending) : c_(std::move(ascending)) { trim(); }

  static Polynomial constant(const Scalar& s) { return Polynomial({s}); }
  /// The monomial t.
  static Polynomial t() { return Polynomial({0, 1}); }
  /// t - r
  static Polynomial linear_root(const Scalar& r) { return Polynomial({-r, 1}); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coefficients() const { return c_; }
  Scalar coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Scalar(0); }
  Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }

  bool is_exact() const {
    for (const auto& s : c_)
      if (!s.is_exact()) return false;
    return true;
  }

  Scalar operator()(const Scalar& t) const {
    Scalar acc;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Scalar> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = Scalar(static_cast<long>(k)) * c_[k];
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    const Scalar inv = Scalar(1) / leading();
    std::vector<Scalar> out(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) out[k] = c_[k] * inv;
    return Polynomial(std::move(out));
  }

  Polynomial scalar_conj() const {
    std::vector<Scalar> out(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) out[k] = c_[k].conj();
    return Polynomial(std::move(out));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coefficient(k) + b.coefficient(k);
    return Polynomial(std::move(out));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coefficient(k) - b.coefficient(k);
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Scalar& s, const Polynomial& a) {
    std::vector<Scalar> out(a.c_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = s * a.c_[k];
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return false;
    for (std::size_t k = 0; k < a.c_.size(); ++k)
      if (a.c_[k] != b.c_[k]) return false;
    return true;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

/// Euclidean division a = q b + r with deg r < deg b.
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Scalar> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Scalar> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const Scalar lead_inv = Scalar(1) / b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Scalar f = rem[static_cast<std::size_t>(k + db)] * lead_inv;
    quo[static_cast<std::size_t>(k)] = f;
    if (f.is_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * b.coefficient(static_cast<std::size_t>(j));
    rem[static_cast<std::size_t>(k + db)] = 0;
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

/// Monic gcd over an exact field; refuses floating-point coefficients.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  if (!a.is_exact() || !b.is_exact()) throw DomainError("polynomial gcd requires exact coefficients");
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Exact quotient; throws if b does not divide a.
inline Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DomainError("polynomial is not divisible");
  return q;
}

/// Product of the distinct irreducible factors (exact coefficients).
inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.monic();
  return exact_quotient(p, gcd(p, p.derivative())).monic();
}

/// Roots of a polynomial of degree <= 2. Exact Gaussian-rational roots when the
/// discriminant has an exact square root; complex doubles otherwise.
inline std::vector<Scalar> roots_upto_quadratic(const Polynomial& p, double tolerance = kDefaultTolerance) {
  switch (p.degree()) {
    case -1:
      throw DomainError("roots of the zero polynomial");
    case 0:
      return {};
    case 1:
      return {-p.coefficient(0) / p.coefficient(1)};
    case 2: {
      const Scalar a = p.coefficient(2), b = p.coefficient(1), c = p.coefficient(0);
      const Scalar disc = b * b - 4 * a * c;
      const Scalar s = sqrt_any(disc, tolerance);
      const Scalar two_a = 2 * a;
      if (disc.is_zero()) return {-b / two_a};
      return {(-b + s) / two_a, (-b - s) / two_a};
    }
    default:
      throw DomainError("roots_upto_quadratic: degree > 2");
  }
}

/// All complex roots by Durand-Kerner iteration (used for float input only).
inline std::vector<std::complex<double>> numeric_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) return {};
  std::vector<std::complex<double>> a(static_cast<std::size_t>(n) + 1);
  const std::complex<double> lead = p.leading().to_complex();
  for (int k = 0; k <= n; ++k) a[static_cast<std::size_t>(k)] = p.coefficient(static_cast<std::size_t>(k)).to_complex() / lead;
  auto eval = [&](std::complex<double> z) {
    std::complex<double> acc = 0;
    for (int k = n; k >= 0; --k) acc = acc * z + a[static_cast<std::size_t>(k)];
    return acc;
  };
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  const std::complex<double> seed(0.4, 0.9);
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::pow(seed, k);
  for (int iter = 0; iter < 500; ++iter) {
    double change = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> den = 1;
      for (int j = 0; j < n; ++j)
        if (i != j) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      if (std::abs(den) == 0.0) den = 1e-300;
      const std::complex<double> step = eval(z[static_cast<std::size_t>(i)]) / den;
      z[static_cast<std::size_t>(i)] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  return z;
}

/// Interpolating polynomial through (x_k, y_k) with distinct nodes (Newton form).
inline Polynomial interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  if (xs.size() != ys.size()) throw DomainError("interpolate: size mismatch");
  const std::size_t n = xs.size();
  std::vector<Scalar> dd = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  Polynomial result;
  Polynomial basis = Polynomial::constant(1);
  for (std::size_t k = 0; k < n; ++k) {
    result = result + dd[k] * basis;
    basis = basis * Polynomial::linear_root(xs[k]);
  }
  return result;
}

}  // namespace dqk
