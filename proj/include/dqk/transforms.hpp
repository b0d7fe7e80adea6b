#pragma once

// The admissible group: projective maps of P^7 induced by coordinate changes
// in the fixed and the moving frame, x -> l x r.

#include <optional>
#include <string>
#include <utility>

#include "dqk/algebra.hpp"
#include "dqk/error.hpp"
#include "dqk/matrix.hpp"
#include "dqk/projgeom.hpp"

namespace dqk {

struct AdmissibleTransform {
  Matrix matrix;
  std::optional<std::pair<DualQuaternion, DualQuaternion>> factors;

  ProjPoint operator()(const ProjPoint& p) const { return apply(matrix, p); }
  Subspace operator()(const Subspace& s) const { return apply(matrix, s); }
};

/// Matrix of [q] -> [l q r]; the two factors commute.
inline AdmissibleTransform build_transform(const DualQuaternion& l, const DualQuaternion& r) {
  if (!study_condition(l) || !study_condition(r)) throw DomainError("factor not in SE(3) cover");
  if (l.primal.is_zero() || r.primal.is_zero()) throw DomainError("factor not in SE(3) cover: zero primal part");
  return {left_mul_matrix8(l) * right_mul_matrix8(r), std::make_pair(l, r)};
}

struct VerificationReport {
  bool pencil_fixed = false;
  bool shape_ok = false;
  bool rulings_preserved = false;
  bool overall = false;

  std::string summary() const {
    auto flag = [](bool b) { return b ? "true" : "false"; };
    return std::string("pencil_fixed=") + flag(pencil_fixed) + " shape_ok=" + flag(shape_ok) +
           " rulings_preserved=" + flag(rulings_preserved);
  }
};

class NotAdmissibleError : public DomainError {
 public:
  explicit NotAdmissibleError(VerificationReport report)
      : DomainError("transform is not admissible (" + report.summary() + ")"), report_(report) {}
  const VerificationReport& report() const { return report_; }

 private:
  VerificationReport report_;
};

namespace detail {

/// True iff m = lambda g for some nonzero lambda.
inline bool proportional_nonzero(const Matrix& m, const Matrix& g) {
  std::optional<std::size_t> idx;
  for (std::size_t k = 0; k < g.data().size(); ++k)
    if (!g.data()[k].is_zero()) {
      idx = k;
      break;
    }
  if (!idx) return m.is_zero();
  const Scalar lambda = m.data()[*idx] / g.data()[*idx];
  if (lambda.is_zero()) return false;
  return m == lambda * g;
}

/// a^T a = lambda I with real lambda > 0.
inline bool positive_scalar_orthogonal(const Matrix& a) {
  const Matrix ata = a.transpose() * a;
  const Scalar lambda = ata(0, 0);
  if (!lambda.is_real() || lambda.sign() <= 0) return false;
  return ata == lambda * Matrix::identity(a.rows());
}

}  // namespace detail

/// Checks invariance of the pencil spanned by S and N, the block shape
/// [[A, 0], [C, A]] with A scalar-orthogonal and C^T A + A^T C = 0, and
/// preservation of the ruling families of Y (det A > 0).
inline VerificationReport verify_admissible(const Matrix& t) {
  if (t.rows() != 8 || t.cols() != 8) throw DomainError("verify_admissible expects an 8x8 matrix");
  if (rank(t) < 8) throw DomainError("transform is singular");
  VerificationReport rep;

  rep.pencil_fixed = true;
  for (const QuadricForm& g : {null_cone(), study_quadric(), pencil_member(1, 1)})
    if (!detail::proportional_nonzero(t.transpose() * g.gram * t, g.gram)) rep.pencil_fixed = false;

  const Matrix a = t.block(0, 0, 4, 4);
  const Matrix b = t.block(0, 4, 4, 4);
  const Matrix c = t.block(4, 0, 4, 4);
  const Matrix d = t.block(4, 4, 4, 4);
  rep.shape_ok = b.is_zero() && d == a && detail::positive_scalar_orthogonal(a) &&
                 (c.transpose() * a + a.transpose() * c).is_zero();

  const Scalar det_a = determinant(a);
  rep.rulings_preserved = det_a.is_real() && det_a.sign() > 0;
  rep.overall = rep.pencil_fixed && rep.shape_ok && rep.rulings_preserved;
  return rep;
}

/// Writes a = L(l1) R(r1).  The coefficients K_cd = <a, L(e_c) R(e_d)>_F / 4 of a
/// in the orthogonal basis {L(e_c) R(e_d)} form the rank-one matrix l1 r1^T.
inline std::pair<Quaternion, Quaternion> factor_so4(const Matrix& a) {
  if (a.rows() != 4 || a.cols() != 4 || !detail::positive_scalar_orthogonal(a))
    throw DomainError("not a positive scalar-orthogonal matrix");
  const Scalar det = determinant(a);
  if (!det.is_real() || det.sign() < 0) throw DomainError("orientation-reversing, not in the group");

  const auto& basis = detail::quaternion_basis();
  Matrix k(4, 4);
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t d = 0; d < 4; ++d) {
      const Matrix e = left_mul_matrix(basis[c]) * right_mul_matrix(basis[d]);
      Scalar acc;
      for (std::size_t n = 0; n < 16; ++n) acc += a.data()[n] * e.data()[n];
      k(c, d) = acc / Scalar(4);
    }

  std::size_t c0 = 0, d0 = 0;
  double best = -1.0;
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t d = 0; d < 4; ++d)
      if (!k(c, d).is_zero() && k(c, d).magnitude() > best) {
        best = k(c, d).magnitude();
        c0 = c;
        d0 = d;
      }
  if (best < 0) throw DomainError("not a positive scalar-orthogonal matrix");

  Quaternion l = Quaternion::from_coords(k.col(d0));
  Quaternion r = (Scalar(1) / k(c0, d0)) * Quaternion::from_coords(k.row(c0));

  // Sign gauge: first nonzero coordinate of l positive (real part for floats).
  for (const auto& s : l.coords()) {
    if (s.is_zero()) continue;
    if (s.real_part().sign() < 0) {
      l = -l;
      r = -r;
    }
    break;
  }
  if (left_mul_matrix(l) * right_mul_matrix(r) != a) throw DomainError("factor_so4: reconstruction failed");
  return {l, r};
}

/// Recovers (l, r) with t = L(l) R(r).  The primal parts come from factor_so4;
/// the dual parts solve C = L(l2) R(r1) + L(l1) R(r2) together with the Study
/// conditions <l1, l2> = <r1, r2> = 0, which fix the remaining gauge.
inline std::pair<DualQuaternion, DualQuaternion> factor_transform(const Matrix& t) {
  const VerificationReport rep = verify_admissible(t);
  if (!rep.overall) throw NotAdmissibleError(rep);
  const Matrix a = t.block(0, 0, 4, 4);
  const Matrix c = t.block(4, 0, 4, 4);
  const auto [l1, r1] = factor_so4(a);

  const auto& basis = detail::quaternion_basis();
  Matrix sys(18, 8);
  Vector rhs(18);
  for (std::size_t k = 0; k < 4; ++k) {
    const Matrix from_l2 = left_mul_matrix(basis[k]) * right_mul_matrix(r1);
    const Matrix from_r2 = left_mul_matrix(l1) * right_mul_matrix(basis[k]);
    for (std::size_t n = 0; n < 16; ++n) {
      sys(n, k) = from_l2.data()[n];
      sys(n, k + 4) = from_r2.data()[n];
    }
  }
  for (std::size_t n = 0; n < 16; ++n) rhs[n] = c.data()[n];
  const Vector l1c = l1.coords(), r1c = r1.coords();
  for (std::size_t k = 0; k < 4; ++k) {
    sys(16, k) = l1c[k];
    sys(17, k + 4) = r1c[k];
  }
  if (rank(sys) != 8) throw DomainError("factor_transform: dual factor system is not uniquely solvable");
  const auto sol = solve(sys, rhs);
  if (!sol) throw DomainError("factor_transform: dual factor system is inconsistent");

  const DualQuaternion l{l1, Quaternion::from_coords(*sol, 0)};
  const DualQuaternion r{r1, Quaternion::from_coords(*sol, 4)};
  if (left_mul_matrix8(l) * right_mul_matrix8(r) != t) throw DomainError("factor_transform: reconstruction failed");
  return {l, r};
}

/// The conjugation map [q] -> [conj(q)]; it fixes the pencil but swaps the rulings of Y.
inline Matrix chi_matrix() { return conjugation_matrix(); }

}  // namespace dqk
