#pragma once

// Quaternions, dual numbers and dual quaternions over Scalar, plus the 4x4 and
// 8x8 matrices of left/right multiplication.
//
// Coordinates of a dual quaternion p + eps*d are ordered
//   [p.w, p.x, p.y, p.z, d.w, d.x, d.y, d.z]
// i.e. the basis 1, i, j, k, eps, eps*i, eps*j, eps*k.

#include <array>
#include <string>

#include "dqk/error.hpp"
#include "dqk/matrix.hpp"
#include "dqk/scalar.hpp"

namespace dqk {

struct Quaternion {
  Scalar w, x, y, z;

  static Quaternion zero() { return {}; }
  static Quaternion one() { return {1, 0, 0, 0}; }
  static Quaternion unit_i() { return {0, 1, 0, 0}; }
  static Quaternion unit_j() { return {0, 0, 1, 0}; }
  static Quaternion unit_k() { return {0, 0, 0, 1}; }
  static Quaternion scalar(const Scalar& s) { return {s, 0, 0, 0}; }
  static Quaternion vector(const Scalar& a, const Scalar& b, const Scalar& c) { return {0, a, b, c}; }

  static Quaternion from_coords(const Vector& v, std::size_t offset = 0) {
    if (v.size() < offset + 4) throw DomainError("quaternion needs four coordinates");
    return {v[offset], v[offset + 1], v[offset + 2], v[offset + 3]};
  }

  Vector coords() const { return {w, x, y, z}; }

  /// Quaternion conjugate: negates the coefficients of i, j, k.
  Quaternion conj() const { return {w, -x, -y, -z}; }

  /// Conjugates every scalar coefficient (complex conjugation, not quaternion conjugation).
  Quaternion scalar_conj() const { return {w.conj(), x.conj(), y.conj(), z.conj()}; }

  /// q * conj(q) = w^2 + x^2 + y^2 + z^2 (bilinear, so it can vanish over complex scalars).
  Scalar norm() const { return w * w + x * x + y * y + z * z; }

  Quaternion vector_part() const { return {0, x, y, z}; }

  bool is_zero() const { return w.is_zero() && x.is_zero() && y.is_zero() && z.is_zero(); }
  bool is_pure() const { return w.is_zero(); }

  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }

  // Hamilton product with i^2 = j^2 = k^2 = ijk = -1.
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend Quaternion operator*(const Scalar& s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }

  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }
};

/// Quaternion dot product (bilinear); equals the scalar part of a * conj(b).
inline Scalar dot(const Quaternion& a, const Quaternion& b) { return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z; }

/// a + eps*b with eps^2 = 0.
struct DualNumber {
  Scalar re, du;

  friend DualNumber operator*(const DualNumber& a, const DualNumber& b) {
    return {a.re * b.re, a.re * b.du + a.du * b.re};
  }
  friend DualNumber operator+(const DualNumber& a, const DualNumber& b) { return {a.re + b.re, a.du + b.du}; }
  friend bool operator==(const DualNumber& a, const DualNumber& b) { return a.re == b.re && a.du == b.du; }
  bool is_zero() const { return re.is_zero() && du.is_zero(); }
};

struct DualQuaternion {
  Quaternion primal, dual;

  static DualQuaternion zero() { return {}; }
  static DualQuaternion one() { return {Quaternion::one(), Quaternion::zero()}; }
  static DualQuaternion eps() { return {Quaternion::zero(), Quaternion::one()}; }
  static DualQuaternion from_primal(const Quaternion& p) { return {p, Quaternion::zero()}; }
  /// eps * d
  static DualQuaternion from_dual(const Quaternion& d) { return {Quaternion::zero(), d}; }
  static DualQuaternion scalar(const Scalar& s) { return {Quaternion::scalar(s), Quaternion::zero()}; }

  static DualQuaternion from_coords(const Vector& v) {
    if (v.size() != 8) throw DomainError("dual quaternion needs eight coordinates");
    return {Quaternion::from_coords(v, 0), Quaternion::from_coords(v, 4)};
  }

  Vector coords() const {
    return {primal.w, primal.x, primal.y, primal.z, dual.w, dual.x, dual.y, dual.z};
  }

  /// conj(p + eps d) = conj(p) + eps conj(d)
  DualQuaternion conj() const { return {primal.conj(), dual.conj()}; }

  /// conj(p) - eps conj(d), the right factor of the point action.
  DualQuaternion eps_conj() const { return {primal.conj(), -dual.conj()}; }

  DualQuaternion scalar_conj() const { return {primal.scalar_conj(), dual.scalar_conj()}; }

  bool is_zero() const { return primal.is_zero() && dual.is_zero(); }

  friend DualQuaternion operator+(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.primal + b.primal, a.dual + b.dual};
  }
  friend DualQuaternion operator-(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.primal - b.primal, a.dual - b.dual};
  }
  friend DualQuaternion operator-(const DualQuaternion& a) { return {-a.primal, -a.dual}; }

  // (p + eps d)(p' + eps d') = pp' + eps(pd' + dp')
  friend DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.primal * b.primal, a.primal * b.dual + a.dual * b.primal};
  }
  friend DualQuaternion operator*(const Scalar& s, const DualQuaternion& q) { return {s * q.primal, s * q.dual}; }

  friend bool operator==(const DualQuaternion& a, const DualQuaternion& b) {
    return a.primal == b.primal && a.dual == b.dual;
  }
  friend bool operator!=(const DualQuaternion& a, const DualQuaternion& b) { return !(a == b); }
};

inline DualQuaternion dq_mul(const DualQuaternion& a, const DualQuaternion& b) { return a * b; }

/// N(q) = q conj(q); both components are pure scalars.
inline DualNumber dq_norm(const DualQuaternion& q) {
  const Scalar re = q.primal.norm();
  const Scalar du = 2 * dot(q.primal, q.dual);
  return {re, du};
}

/// p conj(d) + d conj(p) = 0
inline bool study_condition(const DualQuaternion& q) { return dq_norm(q).du.is_zero(); }

/// Inverse of a dual quaternion with invertible primal part:
/// (p + eps d)^-1 = p^-1 - eps p^-1 d p^-1.
inline DualQuaternion dq_inverse(const DualQuaternion& q) {
  const Scalar n = q.primal.norm();
  if (n.is_zero()) throw DomainError("dual quaternion with null primal part is not invertible");
  const Quaternion pinv = (Scalar(1) / n) * q.primal.conj();
  return {pinv, -(pinv * q.dual * pinv)};
}

inline std::string to_string(const Quaternion& q) {
  return "[" + q.w.to_string() + ", " + q.x.to_string() + ", " + q.y.to_string() + ", " + q.z.to_string() + "]";
}
inline std::string to_string(const DualQuaternion& q) { return to_string(q.primal) + " + eps" + to_string(q.dual); }

// ---------------------------------------------------------------------------
// Multiplication matrices. Columns are images of the basis 1, i, j, k, so the
// matrices are correct by construction rather than transcribed.

namespace detail {
inline const std::array<Quaternion, 4>& quaternion_basis() {
  static const std::array<Quaternion, 4> basis{Quaternion::one(), Quaternion::unit_i(), Quaternion::unit_j(),
                                               Quaternion::unit_k()};
  return basis;
}
}  // namespace detail

/// Matrix of x -> p x.
inline Matrix left_mul_matrix(const Quaternion& p) {
  Matrix m(4, 4);
  const auto& basis = detail::quaternion_basis();
  for (std::size_t c = 0; c < 4; ++c) {
    const Quaternion img = p * basis[c];
    const Vector v = img.coords();
    for (std::size_t r = 0; r < 4; ++r) m(r, c) = v[r];
  }
  return m;
}

/// Matrix of x -> x p.
inline Matrix right_mul_matrix(const Quaternion& p) {
  Matrix m(4, 4);
  const auto& basis = detail::quaternion_basis();
  for (std::size_t c = 0; c < 4; ++c) {
    const Quaternion img = basis[c] * p;
    const Vector v = img.coords();
    for (std::size_t r = 0; r < 4; ++r) m(r, c) = v[r];
  }
  return m;
}

/// Matrix of q -> h q on the eight coordinates:  [[L(p), 0], [L(d), L(p)]].
inline Matrix left_mul_matrix8(const DualQuaternion& h) {
  Matrix m(8, 8);
  const Matrix a = left_mul_matrix(h.primal);
  m.set_block(0, 0, a);
  m.set_block(4, 4, a);
  m.set_block(4, 0, left_mul_matrix(h.dual));
  return m;
}

/// Matrix of q -> q h on the eight coordinates:  [[R(p), 0], [R(d), R(p)]].
inline Matrix right_mul_matrix8(const DualQuaternion& h) {
  Matrix m(8, 8);
  const Matrix a = right_mul_matrix(h.primal);
  m.set_block(0, 0, a);
  m.set_block(4, 4, a);
  m.set_block(4, 0, right_mul_matrix(h.dual));
  return m;
}

/// The quaternion conjugation map [q] -> [conj(q)] as a diagonal matrix.
inline Matrix conjugation_matrix() {
  return Matrix::diagonal({1, -1, -1, -1, 1, -1, -1, -1});
}

}  // namespace dqk
