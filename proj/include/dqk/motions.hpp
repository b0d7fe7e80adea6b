#pragma once

// Rational motions: the (extended) kinematic map acting on points, motion
// polynomials, trajectory degrees, the Darboux/Mannheim family and the
// straight lines of P^7 that describe vertical Darboux motions.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dqk/algebra.hpp"
#include "dqk/dyads.hpp"
#include "dqk/error.hpp"
#include "dqk/poly.hpp"
#include "dqk/projgeom.hpp"

namespace dqk {

// ---------------------------------------------------------------------------
// Point action

/// Image of x = x0 + eps(x1 i + x2 j + x3 k) under q = p + eps d:
/// q x (conj(p) - eps conj(d)).  The Study condition is not required.
inline ProjPoint act(const DualQuaternion& q, const ProjPoint& x) {
  if (x.size() != 4) throw DomainError("act expects a point of P^3 with coordinates [x0, x1, x2, x3]");
  if (q.primal.is_zero()) throw DomainError("exceptional generator has no displacement");
  const DualQuaternion xq{Quaternion::scalar(x[0]), Quaternion::vector(x[1], x[2], x[3])};
  const DualQuaternion y = q * xq * q.eps_conj();
  return ProjPoint(Vector{y.primal.w, y.dual.x, y.dual.y, y.dual.z});
}

/// The classical image of the fiber through x: the point of [x] v phi([x]) on S outside [eps H].
inline ProjPoint study_point_on_fiber(const ProjPoint& x) {
  const DualQuaternion q = x.dq();
  const Scalar n = q.primal.norm();
  if (n.is_zero()) throw DomainError("fiber has no proper displacement: primal part is null");
  const Scalar mu = -dot(q.primal, q.dual) / n;
  return ProjPoint::from_dq(q + DualQuaternion::from_dual(mu * q.primal));
}

// ---------------------------------------------------------------------------
// Motion polynomials

enum class MotionLabel { Darboux, Mannheim, VerticalDarboux, Line, Generic };

inline std::string to_string(MotionLabel l) {
  switch (l) {
    case MotionLabel::Darboux:
      return "Darboux";
    case MotionLabel::Mannheim:
      return "Mannheim";
    case MotionLabel::VerticalDarboux:
      return "VerticalDarboux";
    case MotionLabel::Line:
      return "Line";
    case MotionLabel::Generic:
      return "Generic";
  }
  return "Generic";
}

struct MotionPoly {
  std::vector<DualQuaternion> coefficients;  // highest degree first
  MotionLabel label = MotionLabel::Generic;

  MotionPoly() = default;
  MotionPoly(std::vector<DualQuaternion> coeffs, MotionLabel l = MotionLabel::Generic)
      : coefficients(std::move(coeffs)), label(l) {
    std::size_t lead = 0;
    while (lead + 1 < coefficients.size() && coefficients[lead].is_zero()) ++lead;
    coefficients.erase(coefficients.begin(), coefficients.begin() + static_cast<long>(lead));
    if (coefficients.empty() || coefficients.front().is_zero())
      throw DomainError("motion polynomial needs a nonzero leading coefficient");
  }

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }

  DualQuaternion operator()(const Scalar& t) const {
    DualQuaternion acc;
    for (const auto& c : coefficients) acc = DualQuaternion::scalar(t) * acc + c;
    return acc;
  }

  /// Coefficients lowest degree first.
  std::vector<DualQuaternion> ascending() const { return {coefficients.rbegin(), coefficients.rend()}; }

  friend bool operator==(const MotionPoly& a, const MotionPoly& b) { return a.coefficients == b.coefficients; }
};

/// C(t) = (c eps + k) t^3 + (1 + eps(b - a i - c k)) t^2 + (k - eps(a j + b k)) t + 1.
inline MotionPoly darboux(const Scalar& a, const Scalar& b, const Scalar& c) {
  const Quaternion k = Quaternion::unit_k();
  std::vector<DualQuaternion> coeffs{
      {k, Quaternion::scalar(c)},
      {Quaternion::one(), Quaternion{b, -a, 0, -c}},
      {k, Quaternion{0, 0, -a, -b}},
      DualQuaternion::one(),
  };
  return {coeffs, a.is_zero() ? MotionLabel::VerticalDarboux : MotionLabel::Darboux};
}

/// Coefficient-wise quaternion conjugation: the inverse motion.
inline MotionPoly chi(const MotionPoly& m) {
  std::vector<DualQuaternion> coeffs;
  for (const auto& c : m.coefficients) coeffs.push_back(c.conj());
  MotionLabel l = MotionLabel::Generic;
  if (m.label == MotionLabel::Darboux || m.label == MotionLabel::VerticalDarboux) l = MotionLabel::Mannheim;
  if (m.label == MotionLabel::Mannheim) l = MotionLabel::Darboux;
  if (m.label == MotionLabel::Line) l = MotionLabel::Line;
  return {coeffs, l};
}

inline MotionPoly mannheim(const Scalar& a, const Scalar& b, const Scalar& c) { return chi(darboux(a, b, c)); }

/// The degree-one motion t x + y of the line [x] v [y].
inline MotionPoly line_motion(const DualQuaternion& x, const DualQuaternion& y) {
  return {{x, y}, MotionLabel::Line};
}

// ---------------------------------------------------------------------------
// Trajectories

struct Trajectory {
  std::array<Polynomial, 4> components;  // x0, x1, x2, x3 with common factors removed
  int degree = 0;

  ProjPoint at(const Scalar& t) const {
    return ProjPoint(Vector{components[0](t), components[1](t), components[2](t), components[3](t)});
  }
};

inline Trajectory trajectory(const MotionPoly& m, const ProjPoint& x) {
  if (x.size() != 4) throw DomainError("trajectory expects a point of P^3");
  for (const auto& c : m.coefficients)
    for (const auto& s : c.coords())
      if (!s.is_exact()) throw DomainError("trajectory degree requires exact coefficients");

  const auto asc = m.ascending();
  bool primal_zero = true;
  for (const auto& c : asc)
    if (!c.primal.is_zero()) primal_zero = false;
  if (primal_zero) throw DomainError("motion has identically zero primal part");

  const DualQuaternion xq{Quaternion::scalar(x[0]), Quaternion::vector(x[1], x[2], x[3])};
  const std::size_t n = asc.size();
  std::vector<DualQuaternion> img(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const DualQuaternion left = asc[i] * xq;
    for (std::size_t j = 0; j < n; ++j) img[i + j] = img[i + j] + left * asc[j].eps_conj();
  }

  std::array<std::vector<Scalar>, 4> comp;
  for (const auto& y : img) {
    comp[0].push_back(y.primal.w);
    comp[1].push_back(y.dual.x);
    comp[2].push_back(y.dual.y);
    comp[3].push_back(y.dual.z);
  }
  Trajectory tr;
  Polynomial common;
  for (std::size_t k = 0; k < 4; ++k) {
    tr.components[k] = Polynomial(comp[k]);
    if (!tr.components[k].is_zero()) common = common.is_zero() ? tr.components[k] : gcd(common, tr.components[k]);
  }
  if (common.is_zero()) throw DomainError("trajectory vanishes identically");
  common = common.monic();
  tr.degree = 0;
  for (auto& c : tr.components) {
    if (!c.is_zero()) c = exact_quotient(c, common);
    tr.degree = std::max(tr.degree, c.degree());
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Darboux invariants

struct DarbouxReport {
  Scalar a, b, c;
  bool inverse = false;  // invariants of the Mannheim motion chi(C)
  bool vertical = false;
  std::array<DualQuaternion, 2> d;  // intersections of the curve with [eps H]
  std::array<DualQuaternion, 2> f;  // intersections of its fiber image with Y
  Quaternion p;                     // -b + a i + c k
  bool on_y = false;
  bool factor_identity = false;     // d_k = p f_k (Darboux) or d_k = f_k conj(p) (Mannheim)
  bool coincident = false;          // [d_k] = [f_k]
  std::optional<Handedness> handedness;
};

/// The curve meets [eps H] at t = +-i, where its primal part (t^2 + 1)(k t + 1) vanishes.
inline DarbouxReport darboux_invariants(const Scalar& a, const Scalar& b, const Scalar& c, bool inverse = false) {
  if (a.is_zero() && b.is_zero() && c.is_zero()) throw DomainError("darboux parameters must not all vanish");
  const MotionPoly m = inverse ? mannheim(a, b, c) : darboux(a, b, c);
  DarbouxReport rep;
  rep.a = a;
  rep.b = b;
  rep.c = c;
  rep.inverse = inverse;
  rep.vertical = a.is_zero();
  rep.p = Quaternion{-b, a, 0, c};

  // Primal part divided by t^2 + 1, coordinate-wise.
  const Polynomial t2p1({1, 0, 1});
  std::array<Polynomial, 4> reduced;
  {
    std::array<std::vector<Scalar>, 4> coords;
    for (const auto& q : m.ascending()) {
      const Vector v = q.primal.coords();
      for (std::size_t k = 0; k < 4; ++k) coords[k].push_back(v[k]);
    }
    for (std::size_t k = 0; k < 4; ++k) reduced[k] = exact_quotient(Polynomial(coords[k]), t2p1);
  }

  const Scalar i = Scalar::imag_unit();
  rep.on_y = true;
  rep.factor_identity = true;
  rep.coincident = true;
  for (std::size_t k = 0; k < 2; ++k) {
    const Scalar t = k == 0 ? i : -i;
    const DualQuaternion at = m(t);
    if (!at.primal.is_zero()) throw DomainError("darboux_invariants: curve does not meet the exceptional generator");
    rep.d[k] = at;
    rep.f[k] = DualQuaternion::from_dual(
        Quaternion{reduced[0](t), reduced[1](t), reduced[2](t), reduced[3](t)});
    if (!rep.d[k].dual.norm().is_zero() || !rep.f[k].dual.norm().is_zero()) rep.on_y = false;
    const Quaternion expect = inverse ? rep.f[k].dual * rep.p.conj() : rep.p * rep.f[k].dual;
    if (expect != rep.d[k].dual) rep.factor_identity = false;
    if (ProjPoint::from_dq(rep.d[k]) != ProjPoint::from_dq(rep.f[k])) rep.coincident = false;
  }
  if (!rep.coincident) {
    const Handedness h = ruling_handedness(ProjPoint::from_dq(rep.d[0]), ProjPoint::from_dq(rep.f[0]));
    if (ruling_handedness(ProjPoint::from_dq(rep.d[1]), ProjPoint::from_dq(rep.f[1])) == h) rep.handedness = h;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Straight lines and vertical Darboux motions

/// A violated hypothesis of the line-to-C-space construction.
class LineHypothesisError : public DomainError {
 public:
  enum class Kind { InsideExceptionalGenerator, InsideNullCone, InsideTranslationSpace };
  LineHypothesisError(Kind k, const std::string& msg) : DomainError(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct CSpaceReport {
  Subspace space;                 // span of l and phi(l)
  DualQuaternion study_base;      // displacement used to move the base point to [1]
  ProjPoint a, b;                 // l ^ N
  Line e1, l1, l2, n;             // e1, l1, l2 span U ^ S ^ N; n is a further ruling through the base
  ProjPoint s1, s2;               // [eps a'], [eps conj(a')]
  Scalar rho, f, g1, g2;
  bool exact = true;
  std::array<bool, 5> memberships{};
  bool lines_match = false;       // U ^ S ^ N computed independently equals {e1, l1, l2}
  std::optional<Verdict> verdict; // classifier result (real lines only)

  bool ok() const {
    for (bool m : memberships)
      if (!m) return false;
    return lines_match && (!verdict || *verdict == Verdict::C);
  }
};

namespace detail {

inline std::size_t primal_rank(const Subspace& s) {
  Matrix m(s.basis().rows(), 4);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = s.basis()(r, c);
  return rank(m);
}

inline bool inside_quadric(const QuadricForm& q, const Subspace& s) { return form_vanishes_on(q.gram, s); }

}  // namespace detail

/// Moves a point of l to [1] (admissible left multiplication by the inverse of the
/// Study point on its fiber, followed by a fiber shift, which fixes U setwise),
/// intersects the line with N in [a], [b] and reproduces the parameter table of
/// U ^ S ^ N in the basis a, b, eps a', eps conj(a').
inline CSpaceReport c_space_from_line(const Line& l) {
  const Subspace& ls = l.subspace();
  if (ls.ambient() != 8) throw DomainError("c_space_from_line expects a line of P^7");
  const std::size_t pr = detail::primal_rank(ls);
  if (pr == 0)
    throw LineHypothesisError(LineHypothesisError::Kind::InsideExceptionalGenerator,
                              "line inside exceptional generator");
  if (detail::inside_quadric(null_cone(), ls))
    throw LineHypothesisError(LineHypothesisError::Kind::InsideNullCone, "line inside null cone");
  if (pr == 1)
    throw LineHypothesisError(LineHypothesisError::Kind::InsideTranslationSpace,
                              "line inside translation 4-space");

  const auto rows = ls.vectors();
  std::optional<DualQuaternion> base;
  for (const Vector& v : {rows[0], rows[1], rows[0] + rows[1]}) {
    const DualQuaternion q = DualQuaternion::from_coords(v);
    if (!q.primal.norm().is_zero()) {
      base = q;
      break;
    }
  }
  if (!base) throw LineHypothesisError(LineHypothesisError::Kind::InsideNullCone, "line inside null cone");

  const Scalar mu = -dot(base->primal, base->dual) / base->primal.norm();
  const DualQuaternion ps = *base + DualQuaternion::from_dual(mu * base->primal);
  const DualQuaternion shift = DualQuaternion::one() + DualQuaternion::from_dual(Quaternion::scalar(mu));
  const Matrix to_normal = left_mul_matrix8(shift) * left_mul_matrix8(dq_inverse(ps));
  const Matrix back = left_mul_matrix8(ps);  // admissible; U ^ S ^ N is invariant under the shift

  const Subspace ln = ls.transformed(to_normal);
  DualQuaternion w;
  for (const auto& row : ln.vectors()) {
    if (ProjPoint(row) == ProjPoint(DualQuaternion::one().coords())) continue;
    w = DualQuaternion::from_coords(row);
    break;
  }
  w = w - DualQuaternion::scalar(w.primal.w);

  Scalar rho;
  bool exact = true;
  std::array<bool, 5> memberships{};
  const Scalar rho2 = w.primal.norm();
  if (rho2.is_zero())
    throw LineHypothesisError(LineHypothesisError::Kind::InsideNullCone,
                              "line inside null cone: tangent to the null cone");
  if (auto r = exact_sqrt(rho2)) {
    rho = *r;
  } else {
    rho = sqrt_any(rho2);
    exact = false;
  }

  const Scalar i = Scalar::imag_unit();
  const DualQuaternion iro = DualQuaternion::scalar(i * rho);
  const DualQuaternion a = iro + w;
  const DualQuaternion b = iro - w;  // = conj(a') - eps a''
  const Quaternion a1 = a.primal, a2 = a.dual;
  const Quaternion a1c = a1.conj(), a2c = a2.conj();
  const Scalar f = (a1 * a1 + a1c * a1c).w;
  const Scalar g1 = (a1 * a2c + a2 * a1c).w;
  const Scalar g2 = (a1c * a2c + a2 * a1).w;

  const DualQuaternion ea = DualQuaternion::from_dual(a1), eac = DualQuaternion::from_dual(a1c);
  auto coord = [&](const Scalar& al, const Scalar& be, const Scalar& ga, const Scalar& de) {
    return al * a + be * b + ga * ea + de * eac;
  };
  const Subspace e1n = Subspace::span({ea, eac});
  const Subspace l1n = Subspace::span({coord(-f, 0, 0, g1), ea});
  const Subspace l2n = Subspace::span({coord(0, f, g2, 0), eac});
  const DualQuaternion n1 = coord(-f, 0, g2, g1);
  const DualQuaternion n2 = coord(0, f, g2, g1);
  const Subspace nn = Subspace::span({n1, n2});
  const Subspace un = Subspace::span({a, b, ea, eac});

  const QuadricForm s = study_quadric(), nc = null_cone();
  auto on_both = [&](const Subspace& x) { return detail::inside_quadric(s, x) && detail::inside_quadric(nc, x); };
  memberships[0] = on_both(e1n) && exceptional_generator().contains(e1n);
  memberships[1] = on_both(l1n);
  memberships[2] = on_both(l2n);
  memberships[3] = detail::inside_quadric(s, nn) && meet(nn, e1n).is_empty();
  memberships[4] = nn.contains(DualQuaternion::one().coords()) && un.contains(nn);

  const LineSet found = common_lines_in(un, s, nc);
  if (!found.exact) exact = false;
  bool lines_match = found.lines.size() == 3;
  for (const Subspace& e : {e1n, l1n, l2n}) {
    bool hit = false;
    for (const auto& g : found.lines)
      if (g.subspace() == e) hit = true;
    lines_match = lines_match && hit;
  }

  const Subspace space = join(ls, fiber_image(ls));
  if (space.dim() != 3) throw DomainError("c_space_from_line: span of the line and its fiber image is not a three-space");
  std::optional<Verdict> verdict;
  if (conjugation_closed(space)) verdict = classify(space).verdict;
  const Matrix undo = inverse(to_normal);
  return CSpaceReport{
      .space = space,
      .study_base = ps,
      .a = ProjPoint(undo * a.coords()),
      .b = ProjPoint(undo * b.coords()),
      .e1 = Line(e1n.transformed(back)),
      .l1 = Line(l1n.transformed(back)),
      .l2 = Line(l2n.transformed(back)),
      .n = Line(nn.transformed(back)),
      .s1 = apply(back, ProjPoint(ea.coords())),
      .s2 = apply(back, ProjPoint(eac.coords())),
      .rho = rho,
      .f = f,
      .g1 = g1,
      .g2 = g2,
      .exact = exact,
      .memberships = memberships,
      .lines_match = lines_match,
      .verdict = verdict,
  };
}

/// Fixed sample points of P^3 used for trajectory checks.
inline std::array<ProjPoint, 3> trajectory_probe_points() {
  return {ProjPoint(Vector{1, 2, -1, 3}), ProjPoint(Vector{1, -3, 5, 1}), ProjPoint(Vector{2, 1, 4, -7})};
}

/// True iff the motion of the line is a vertical Darboux motion (including pure
/// rotations, its zero-amplitude case): the span with its fiber image is a C space
/// and trajectories have degree at most two.
inline bool is_vertical_darboux(const Line& l) {
  try {
    const CSpaceReport rep = c_space_from_line(l);
    if (!rep.ok()) return false;
  } catch (const LineHypothesisError& e) {
    if (e.kind() == LineHypothesisError::Kind::InsideTranslationSpace) return false;
    throw;
  }
  const auto pts = l.subspace().vectors();
  const MotionPoly m = line_motion(DualQuaternion::from_coords(pts[0]), DualQuaternion::from_coords(pts[1]));
  if (!l.subspace().is_exact()) return true;
  for (const auto& x : trajectory_probe_points())
    if (trajectory(m, x).degree > 2) return false;
  return true;
}

}  // namespace dqk
