#pragma once

// Projective geometry of P^7 (and of small charts such as P^3): subspaces,
// the absolute pencil of quadrics, null lines, rulings of Y and the fiber
// projectivity.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqk/algebra.hpp"
#include "dqk/error.hpp"
#include "dqk/matrix.hpp"
#include "dqk/poly.hpp"
#include "dqk/scalar.hpp"

namespace dqk {

// ---------------------------------------------------------------------------
// Points

class ProjPoint {
 public:
  explicit ProjPoint(Vector coords) : coords_(std::move(coords)) {
    if (dqk::is_zero(coords_)) throw DomainError("projective point with all coordinates zero");
  }
  static ProjPoint from_dq(const DualQuaternion& q) { return ProjPoint(q.coords()); }

  const Vector& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }

  DualQuaternion dq() const { return DualQuaternion::from_coords(coords_); }

  /// Representative whose first nonzero coordinate is 1.
  ProjPoint normalized() const {
    for (const auto& c : coords_)
      if (!c.is_zero()) return ProjPoint((Scalar(1) / c) * coords_);
    return *this;
  }

  ProjPoint scalar_conj() const { return ProjPoint(dqk::conj(coords_)); }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    if (a.size() != b.size()) return false;
    std::size_t piv = a.size();
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!a[i].is_zero()) {
        piv = i;
        break;
      }
    if (b[piv].is_zero()) return false;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[j] * b[piv] != b[j] * a[piv]) return false;
    return true;
  }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }

 private:
  Vector coords_;
};

// ---------------------------------------------------------------------------
// Subspaces

/// Projective subspace stored as the reduced row echelon form of a spanning
/// matrix, so equal subspaces have identical (exact) representations.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 8) : basis_(0, ambient), ambient_(ambient) {}

  static Subspace span(const std::vector<Vector>& vectors, std::size_t ambient) {
    Subspace s(ambient);
    std::vector<Vector> nonzero;
    for (const auto& v : vectors) {
      if (v.size() != ambient) throw DomainError("span: dimension mismatch");
      nonzero.push_back(v);
    }
    if (nonzero.empty()) return s;
    s.basis_ = rref(Matrix::from_rows(nonzero)).reduced;
    if (s.basis_.rows() == 0) s.basis_ = Matrix(0, ambient);
    return s;
  }

  static Subspace span(const std::vector<Vector>& vectors) {
    if (vectors.empty()) throw DomainError("span of no vectors needs an explicit ambient dimension");
    return span(vectors, vectors.front().size());
  }

  static Subspace span(const std::vector<ProjPoint>& points) {
    std::vector<Vector> v;
    for (const auto& p : points) v.push_back(p.coords());
    return span(v);
  }

  static Subspace span(std::initializer_list<DualQuaternion> qs) {
    std::vector<Vector> v;
    for (const auto& q : qs) v.push_back(q.coords());
    return span(v, 8);
  }

  static Subspace from_rows(const Matrix& m) { return span(m.row_list(), m.cols()); }

  static Subspace whole(std::size_t ambient) { return from_rows(Matrix::identity(ambient)); }

  std::size_t ambient() const { return ambient_; }
  /// Projective dimension; -1 for the empty subspace.
  int dim() const { return static_cast<int>(basis_.rows()) - 1; }
  bool is_empty() const { return basis_.rows() == 0; }
  const Matrix& basis() const { return basis_; }
  std::vector<Vector> vectors() const { return basis_.row_list(); }

  std::vector<ProjPoint> points() const {
    std::vector<ProjPoint> out;
    for (std::size_t i = 0; i < basis_.rows(); ++i) out.emplace_back(basis_.row(i));
    return out;
  }

  /// Rows span the linear functionals vanishing on the subspace.
  Matrix annihilator() const {
    if (basis_.rows() == 0) return Matrix::identity(ambient_);
    return nullspace(basis_);
  }

  bool contains(const Vector& v) const {
    if (v.size() != ambient_) throw DomainError("contains: dimension mismatch");
    if (dqk::is_zero(v)) return true;
    if (basis_.rows() == 0) return false;
    return rank(stack(basis_, Matrix::from_rows({v}))) == basis_.rows();
  }
  bool contains(const ProjPoint& p) const { return contains(p.coords()); }
  bool contains(const Subspace& other) const {
    for (const auto& v : other.vectors())
      if (!contains(v)) return false;
    return true;
  }

  Subspace scalar_conj() const { return from_rows(basis_.conj()); }

  bool is_exact() const { return basis_.is_exact(); }

  /// Image under x -> T x.
  Subspace transformed(const Matrix& t) const {
    std::vector<Vector> out;
    for (const auto& v : vectors()) out.push_back(t * v);
    return span(out, t.rows());
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Matrix basis_;
  std::size_t ambient_;
};

inline Subspace join(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DomainError("join: ambient mismatch");
  auto v = a.vectors();
  auto w = b.vectors();
  v.insert(v.end(), w.begin(), w.end());
  return Subspace::span(v, a.ambient());
}

inline Subspace meet(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DomainError("meet: ambient mismatch");
  const Matrix functionals = stack(a.annihilator(), b.annihilator());
  if (functionals.rows() == 0) return Subspace::whole(a.ambient());
  return Subspace::from_rows(nullspace(functionals));
}

inline Subspace span(const std::vector<ProjPoint>& points) { return Subspace::span(points); }
inline bool contains(const Subspace& a, const ProjPoint& p) { return a.contains(p); }

/// True iff scalar conjugation maps the subspace onto itself (it is defined over the reals).
inline bool conjugation_closed(const Subspace& a) { return a.scalar_conj() == a; }

/// The exceptional generator [eps H].
inline Subspace exceptional_generator() {
  return Subspace::span({DualQuaternion::from_dual(Quaternion::one()), DualQuaternion::from_dual(Quaternion::unit_i()),
                         DualQuaternion::from_dual(Quaternion::unit_j()), DualQuaternion::from_dual(Quaternion::unit_k())});
}

/// The primal three-space [H].
inline Subspace primal_space() {
  return Subspace::span({DualQuaternion::one(), DualQuaternion::from_primal(Quaternion::unit_i()),
                         DualQuaternion::from_primal(Quaternion::unit_j()),
                         DualQuaternion::from_primal(Quaternion::unit_k())});
}

inline ProjPoint apply(const Matrix& t, const ProjPoint& p) { return ProjPoint(t * p.coords()); }
inline Subspace apply(const Matrix& t, const Subspace& s) { return s.transformed(t); }

class Line {
 public:
  explicit Line(Subspace s) : s_(std::move(s)) {
    if (s_.dim() != 1) throw DomainError("a line must have projective dimension 1");
  }
  static Line through(const ProjPoint& a, const ProjPoint& b) { return Line(Subspace::span({a, b})); }

  const Subspace& subspace() const { return s_; }
  ProjPoint point(std::size_t i) const { return s_.points().at(i); }
  bool contains(const ProjPoint& p) const { return s_.contains(p); }
  Line scalar_conj() const { return Line(s_.scalar_conj()); }

  friend bool operator==(const Line& a, const Line& b) { return a.s_ == b.s_; }
  friend bool operator!=(const Line& a, const Line& b) { return !(a == b); }

 private:
  Subspace s_;
};

/// Intersection point of two coplanar distinct lines, if any.
inline std::optional<ProjPoint> intersection_point(const Line& a, const Line& b) {
  const Subspace m = meet(a.subspace(), b.subspace());
  if (m.dim() != 0) return std::nullopt;
  return m.points().front();
}

// ---------------------------------------------------------------------------
// Quadrics

enum class QuadricLabel { S, N, E, Y, Pencil, Restricted, Custom };

struct QuadricForm {
  Matrix gram;
  QuadricLabel label = QuadricLabel::Custom;
  Scalar nu, sigma;  // pencil parameters when label == Pencil

  std::size_t size() const { return gram.rows(); }

  Scalar eval(const Vector& x) const { return polar(x, x); }
  Scalar polar(const Vector& x, const Vector& y) const { return dot(x, gram * y); }

  std::string label_string() const {
    switch (label) {
      case QuadricLabel::S:
        return "S";
      case QuadricLabel::N:
        return "N";
      case QuadricLabel::E:
        return "E";
      case QuadricLabel::Y:
        return "Y";
      case QuadricLabel::Pencil:
        return "pencil(" + nu.to_string() + "," + sigma.to_string() + ")";
      case QuadricLabel::Restricted:
        return "restricted";
      case QuadricLabel::Custom:
        return "custom";
    }
    return "custom";
  }
};

/// Member [[nu I, sigma I], [sigma I, 0]] of the pencil spanned by S and N.
inline QuadricForm pencil_member(const Scalar& nu, const Scalar& sigma) {
  if (nu.is_zero() && sigma.is_zero()) throw DomainError("degenerate pencil parameter");
  Matrix g(8, 8);
  for (std::size_t i = 0; i < 4; ++i) {
    g(i, i) = nu;
    g(i, i + 4) = sigma;
    g(i + 4, i) = sigma;
  }
  QuadricForm q{g, QuadricLabel::Pencil, nu, sigma};
  if (sigma.is_zero()) q.label = QuadricLabel::N;
  if (nu.is_zero()) q.label = QuadricLabel::S;
  return q;
}

/// Study quadric: q -> 2 <p, d>, the dual part of q conj(q).
inline QuadricForm study_quadric() { return pencil_member(0, 1); }

/// Null cone: q -> p conj(p).
inline QuadricForm null_cone() { return pencil_member(1, 0); }

/// Y as a form on the chart [eps H] (coordinates of d in eps d).
inline QuadricForm quadric_y() { return {Matrix::identity(4), QuadricLabel::Y, 0, 0}; }

/// Rank-4 extension of Y to P^7.
inline QuadricForm quadric_y_extended() {
  Matrix g(8, 8);
  g.set_block(4, 4, Matrix::identity(4));
  return {g, QuadricLabel::Y, 0, 0};
}

/// E: x conj(x) = 0 on the chart [H].
inline QuadricForm quadric_e() { return {Matrix::identity(4), QuadricLabel::E, 0, 0}; }

/// Gram matrix of the form restricted to the subspace, in the subspace's basis.
inline QuadricForm restrict(const QuadricForm& form, const Subspace& u) {
  if (u.ambient() != form.size()) throw DomainError("restrict: dimension mismatch");
  const Matrix& b = u.basis();
  return {b * form.gram * b.transpose(), QuadricLabel::Restricted, 0, 0};
}

struct Signature {
  int pos = 0;
  int neg = 0;
  int zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Sylvester inertia by symmetric congruence diagonalization.
inline Signature signature(const Matrix& gram) {
  if (!gram.is_square() || !gram.is_symmetric()) throw DomainError("signature requires a symmetric matrix");
  if (!gram.is_real()) throw DomainError("signature requires a real form");
  Matrix a = gram;
  // Strip imaginary float noise so that sign() never sees it.
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j).real_part();
  const std::size_t n = a.rows();
  Signature sig;
  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
  };
  std::size_t k = 0;
  for (; k < n; ++k) {
    std::optional<std::size_t> diag;
    for (std::size_t i = k; i < n; ++i)
      if (!a(i, i).is_zero()) {
        diag = i;
        break;
      }
    if (!diag) {
      // All remaining diagonal entries vanish: add row/column j to i to create one.
      std::optional<std::pair<std::size_t, std::size_t>> off;
      for (std::size_t i = k; i < n && !off; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!a(i, j).is_zero()) {
            off = std::make_pair(i, j);
            break;
          }
      if (!off) break;
      const auto [i, j] = *off;
      for (std::size_t c = 0; c < n; ++c) a(i, c) += a(j, c);
      for (std::size_t r = 0; r < n; ++r) a(r, i) += a(r, j);
      diag = i;
    }
    swap_index(k, *diag);
    const Scalar d = a(k, k);
    (d.sign() > 0 ? sig.pos : sig.neg) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Scalar f = a(i, k) / d;
      if (f.is_zero()) continue;
      for (std::size_t c = k; c < n; ++c) a(i, c) -= f * a(k, c);
      for (std::size_t r = k; r < n; ++r) a(r, i) -= f * a(r, k);
    }
  }
  sig.zero = static_cast<int>(n) - sig.pos - sig.neg;
  return sig;
}

inline Signature signature(const QuadricForm& form) { return signature(form.gram); }

// ---------------------------------------------------------------------------
// Null lines

/// [x] v [y] lies in S and N iff x conj(x) = y conj(y) = x conj(y) + y conj(x) = 0.
inline bool is_null_line(const ProjPoint& x, const ProjPoint& y) {
  if (x == y) throw DomainError("is_null_line: points coincide");
  const DualQuaternion a = x.dq();
  const DualQuaternion b = y.dq();
  const DualQuaternion mixed = a * b.conj() + b * a.conj();
  return dq_norm(a).is_zero() && dq_norm(b).is_zero() && mixed.is_zero();
}

inline bool is_null_line(const Line& l) { return is_null_line(l.point(0), l.point(1)); }

struct LineSet {
  std::vector<Line> lines;
  bool exact = true;  // false when a root had to be taken in floating point
};

namespace detail {

inline void add_unique(std::vector<Line>& lines, const Line& l) {
  for (const auto& m : lines)
    if (m == l) return;
  lines.push_back(l);
}

/// Maximal totally isotropic hyperplanes of a symmetric form of rank 1 or 2
/// (the two planes of a plane pair, or the double plane), as subspaces of the
/// form's own coordinate space.
inline std::vector<Subspace> split_degenerate_form(const Matrix& m) {
  const std::size_t n = m.rows();
  const Matrix kernel = nullspace(m);
  const std::size_t r = n - kernel.rows();
  if (r == 0) throw DomainError("split_degenerate_form: zero form");
  if (r == 1) return {Subspace::from_rows(kernel)};
  if (r > 2) throw DomainError("split_degenerate_form: rank exceeds two");

  // A symmetric matrix of rank 2 has a nonzero principal 2x2 minor.
  std::optional<std::pair<std::size_t, std::size_t>> best;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Scalar minor = m(i, i) * m(j, j) - m(i, j) * m(j, i);
      if (minor.is_zero()) continue;
      if (m.is_exact()) {
        best = std::make_pair(i, j);
        break;
      }
      if (minor.magnitude() > best_mag) {
        best_mag = minor.magnitude();
        best = std::make_pair(i, j);
      }
    }
  if (!best) throw DomainError("split_degenerate_form: no regular principal minor");
  const auto [i, j] = *best;
  if (best_mag < 0 && !m.is_exact()) throw DomainError("split_degenerate_form: no regular principal minor");
  const Scalar a = m(i, i), b = m(i, j), c = m(j, j);

  // Binary form a s^2 + 2 b s u + c u^2 on span(e_i, e_j).
  std::vector<Vector> isotropic;
  if (!a.is_zero()) {
    const Scalar root = sqrt_any(b * b - a * c);
    for (const Scalar& s : {(-b + root) / a, (-b - root) / a}) {
      Vector w(n);
      w[i] = s;
      w[j] = 1;
      isotropic.push_back(w);
    }
  } else {
    Vector w1(n), w2(n);
    w1[i] = 1;
    w2[i] = -c;
    w2[j] = 2 * b;
    isotropic = {w1, w2};
  }
  std::vector<Subspace> out;
  for (const auto& w : isotropic) {
    auto rows = kernel.row_list();
    rows.push_back(w);
    out.push_back(Subspace::span(rows, n));
  }
  return out;
}

inline bool form_vanishes_on(const Matrix& gram, const Subspace& s) {
  const Matrix& b = s.basis();
  return (b * gram * b.transpose()).is_zero();
}

/// Lines in the plane `plane` lying on the quadric `gram` (all in local coordinates).
inline std::vector<Subspace> lines_on_plane_section(const Matrix& gram, const Subspace& plane) {
  const Matrix& p = plane.basis();
  const Matrix conic = p * gram * p.transpose();
  const std::size_t r = rank(conic);
  if (r == 3) return {};
  if (r == 0) throw DomainError("plane contained in the anchor quadric");
  std::vector<Subspace> out;
  for (const auto& piece : split_degenerate_form(conic)) {
    const Matrix lifted = piece.basis() * p;
    out.push_back(Subspace::from_rows(lifted));
  }
  return out;
}

}  // namespace detail

/// All lines on both quadric surfaces of P^3, found through the degenerate
/// members of their pencil: rank <= 2 members are split into planes and each
/// plane section of q1 is split into lines.
inline LineSet common_lines(const QuadricForm& q1, const QuadricForm& q2) {
  const Matrix& a = q1.gram;
  const Matrix& b = q2.gram;
  if (a.rows() != 4 || b.rows() != 4 || !a.is_square() || !b.is_square())
    throw DomainError("common_lines expects two 4x4 forms");
  if (rank(a) < 4) throw DomainError("pencil anchor must be regular");
  {
    Matrix flat(2, 16);
    for (std::size_t k = 0; k < 16; ++k) {
      flat(0, k) = a.data()[k];
      flat(1, k) = b.data()[k];
    }
    if (rank(flat) <= 1) throw DomainError("identical quadrics: rulings are not isolated");
  }

  LineSet result;
  result.exact = a.is_exact() && b.is_exact();
  std::vector<Matrix> members;
  if (rank(b) <= 2) members.push_back(b);

  std::vector<Scalar> xs, ys;
  for (long t = 0; t <= 4; ++t) {
    xs.emplace_back(t);
    ys.push_back(determinant(a + Scalar(t) * b));
  }
  const Polynomial det_poly = interpolate(xs, ys);

  if (result.exact) {
    // Rank <= 2 members are multiple roots of the determinant.
    const Polynomial multiple = gcd(det_poly, det_poly.derivative());
    if (multiple.degree() > 0) {
      const Polynomial distinct = squarefree_part(multiple);
      if (distinct.degree() > 2) throw DomainError("common_lines: unexpected multiple-root structure");
      for (const Scalar& t : roots_upto_quadratic(distinct)) {
        if (!t.is_exact()) result.exact = false;
        members.push_back(a + t * b);
      }
    }
  } else {
    // Clustered numerical roots: average near-coincident pairs to recover double roots.
    auto roots = numeric_roots(det_poly);
    std::vector<bool> used(roots.size(), false);
    const double tol = std::max(a.data().front().tolerance(), kDefaultTolerance);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (used[i]) continue;
      std::complex<double> sum = roots[i];
      int count = 1;
      for (std::size_t j = i + 1; j < roots.size(); ++j)
        if (!used[j] && std::abs(roots[j] - roots[i]) < 1e-4 * (1.0 + std::abs(roots[i]))) {
          used[j] = true;
          sum += roots[j];
          ++count;
        }
      if (count < 2) continue;
      members.push_back(a + Scalar::complex_float(sum / static_cast<double>(count), tol) * b);
    }
  }

  for (const Matrix& m : members) {
    if (rank(m) > 2) continue;
    for (const Subspace& plane : detail::split_degenerate_form(m)) {
      for (const Subspace& cand : detail::lines_on_plane_section(a, plane)) {
        if (cand.dim() != 1) continue;
        if (!cand.is_exact()) result.exact = false;
        if (detail::form_vanishes_on(a, cand) && detail::form_vanishes_on(b, cand))
          detail::add_unique(result.lines, Line(cand));
      }
    }
  }
  return result;
}

/// Lifts lines given in the coordinates of `u`'s basis back to the ambient space.
inline Line lift_line(const Line& local, const Subspace& u) {
  return Line(Subspace::from_rows(local.subspace().basis() * u.basis()));
}

/// Lines of u lying on both quadrics (8x8 forms), in ambient coordinates.
inline LineSet common_lines_in(const Subspace& u, const QuadricForm& q1, const QuadricForm& q2) {
  if (u.dim() != 3) throw DomainError("common_lines_in expects a three-space");
  LineSet local = common_lines(restrict(q1, u), restrict(q2, u));
  LineSet out;
  out.exact = local.exact;
  for (const auto& l : local.lines) out.lines.push_back(lift_line(l, u));
  return out;
}

// ---------------------------------------------------------------------------
// Rulings of Y

enum class Handedness { RightRuling, LeftRuling, NotARuling };

inline std::string to_string(Handedness h) {
  switch (h) {
    case Handedness::RightRuling:
      return "RightRuling";
    case Handedness::LeftRuling:
      return "LeftRuling";
    case Handedness::NotARuling:
      return "NotARuling";
  }
  return "NotARuling";
}

/// Handedness of the line [a] v [b] of [eps H] with respect to Y.  Right
/// rulings are the sets [a H] (fixed by Clifford right translations), left
/// rulings the sets [H a].
inline Handedness ruling_handedness(const ProjPoint& a, const ProjPoint& b) {
  if (a.size() != 8 || b.size() != 8) throw DomainError("ruling_handedness expects points of P^7");
  if (a == b) throw DomainError("ruling_handedness: points coincide");
  const DualQuaternion qa = a.dq(), qb = b.dq();
  if (!qa.primal.is_zero() || !qb.primal.is_zero()) return Handedness::NotARuling;
  const Quaternion da = qa.dual, db = qb.dual;
  if (!da.norm().is_zero() || !db.norm().is_zero() || !dot(da, db).is_zero()) return Handedness::NotARuling;
  const bool right = solve(left_mul_matrix(da), db.coords()).has_value();   // db = da q
  const bool left = solve(right_mul_matrix(da), db.coords()).has_value();   // db = q da
  if (right && !left) return Handedness::RightRuling;
  if (left && !right) return Handedness::LeftRuling;
  return Handedness::NotARuling;
}

// ---------------------------------------------------------------------------
// Fiber projectivity  [x' + eps x''] -> [eps x']

inline Matrix fiber_matrix() {
  Matrix f(8, 8);
  f.set_block(4, 0, Matrix::identity(4));
  return f;
}

inline ProjPoint fiber_projectivity(const ProjPoint& x) {
  const DualQuaternion q = x.dq();
  if (q.primal.is_zero()) throw DomainError("fiber projectivity undefined on the exceptional generator");
  return ProjPoint::from_dq(DualQuaternion::from_dual(q.primal));
}

inline Subspace fiber_image(const Subspace& u) {
  if (u.ambient() != 8) throw DomainError("fiber_image expects a subspace of P^7");
  if (exceptional_generator().contains(u))
    throw DomainError("fiber projectivity undefined on the exceptional generator");
  return u.transformed(fiber_matrix());
}

inline Line fiber_line(const ProjPoint& x) { return Line::through(x, fiber_projectivity(x)); }

// ---------------------------------------------------------------------------
// Central projection

/// The unique point of (x v center) ^ target.
inline ProjPoint project_from_center(const ProjPoint& x, const Subspace& center, const Subspace& target) {
  if (center.contains(x)) throw DomainError("projection not well defined: point lies in the centre");
  const Subspace hit = meet(join(Subspace::span({x}), center), target);
  if (hit.dim() != 0) throw DomainError("projection not well defined");
  return hit.points().front();
}

}  // namespace dqk
