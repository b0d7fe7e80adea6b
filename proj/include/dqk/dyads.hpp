#pragma once

// Constraint varieties of RR, RP, PR and cylindrical dyads, the classifier for
// their projective spans and recovery of the joint axes.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqk/algebra.hpp"
#include "dqk/error.hpp"
#include "dqk/projgeom.hpp"

namespace dqk {

enum class DyadKind { RR, RP, PR, C };

inline std::string to_string(DyadKind k) {
  switch (k) {
    case DyadKind::RR:
      return "RR";
    case DyadKind::RP:
      return "RP";
    case DyadKind::PR:
      return "PR";
    case DyadKind::C:
      return "C";
  }
  return "RR";
}

inline DyadKind dyad_kind_from_string(const std::string& s) {
  if (s == "RR") return DyadKind::RR;
  if (s == "RP") return DyadKind::RP;
  if (s == "PR") return DyadKind::PR;
  if (s == "C") return DyadKind::C;
  throw DomainError("unknown dyad kind '" + s + "'");
}

/// RR: two half-turns h1, h2.  RP, PR, C: h1 = h is the rotation half-turn and
/// h2 = eps p carries the translation direction p.  The variety is moved by
/// left multiplication with `base`, the displacement at parameter origin.
struct DyadSpec {
  DyadKind kind = DyadKind::RR;
  DualQuaternion h1, h2;
  DualQuaternion base = DualQuaternion::one();
  bool normalized = true;  // h h-bar = 1 (false when no rational unit representative exists)
};

struct NamedSubspace {
  std::string name;
  Subspace space;
};

struct ConstraintVariety {
  DyadSpec spec;
  Subspace space;
  QuadricForm quadric;  // S restricted to space
  std::vector<NamedSubspace> witnesses;

  /// Parametrization (t1 - h1)(t2 - h2) for RR and RP/C, (t2 - eps p)(t1 - h) for PR.
  DualQuaternion point(const Scalar& t1, const Scalar& t2) const {
    const DualQuaternion a = DualQuaternion::scalar(t1) - spec.h1;
    const DualQuaternion b = DualQuaternion::scalar(t2) - spec.h2;
    return spec.base * (spec.kind == DyadKind::PR ? b * a : a * b);
  }

  const Subspace& witness(const std::string& name) const {
    for (const auto& w : witnesses)
      if (w.name == name) return w.space;
    throw DomainError("no witness named '" + name + "'");
  }
};

namespace detail {

inline bool is_vector_part_only(const DualQuaternion& h) { return h.primal.w.is_zero() && h.dual.w.is_zero(); }

/// h + conj(h) = 0 and h conj(h) a nonzero real number.
inline void check_half_turn(const DualQuaternion& h, const char* what) {
  if (!is_vector_part_only(h)) throw DomainError(std::string(what) + " must satisfy h + conj(h) = 0");
  const DualNumber n = dq_norm(h);
  if (!n.du.is_zero() || n.re.is_zero() || !n.re.is_real())
    throw DomainError(std::string(what) + " is not a half-turn (h conj(h) must be a nonzero real)");
}

inline bool quaternions_dependent(const Quaternion& a, const Quaternion& b) {
  return rank(Matrix::from_rows({a.coords(), b.coords()})) < 2;
}

inline void check_translation(const DualQuaternion& h2, const DualQuaternion& h, DyadKind kind) {
  if (!h2.primal.is_zero()) throw DomainError("translation must be given as eps p");
  const Quaternion& p = h2.dual;
  if (p.is_zero() || !p.w.is_zero()) throw DomainError("translation direction p must be a nonzero vector");
  const bool parallel = quaternions_dependent(h.primal, p);
  if (kind == DyadKind::C && !parallel) throw DomainError("C dyad requires translation parallel to the rotation axis");
  if (kind != DyadKind::C && parallel)
    throw DomainError("translation parallel to the rotation axis: rotation and translation commute, use kind C");
}

}  // namespace detail

inline void validate(const DyadSpec& spec) {
  if (!study_condition(spec.base) || spec.base.primal.norm().is_zero())
    throw DomainError("base must be a proper displacement on the Study quadric");
  if (spec.kind == DyadKind::RR) {
    detail::check_half_turn(spec.h1, "h1");
    detail::check_half_turn(spec.h2, "h2");
    if (detail::quaternions_dependent(spec.h1.primal, spec.h2.primal))
      throw DomainError("parallel axes: the primal parts of h1 and h2 are linearly dependent");
    // The mutual moment of the axes is the dual scalar part of h1 h2; it vanishes iff they meet.
    if ((spec.h1 * spec.h2).dual.w.is_zero()) throw DomainError("coplanar axes: the axes of h1 and h2 intersect");
    return;
  }
  detail::check_half_turn(spec.h1, "h");
  detail::check_translation(spec.h2, spec.h1, spec.kind);
}

inline ConstraintVariety build_variety(const DyadSpec& spec) {
  validate(spec);
  const DualQuaternion& b = spec.base;
  const DualQuaternion& h1 = spec.h1;
  const DualQuaternion& h2 = spec.h2;
  const Scalar i = Scalar::imag_unit();
  auto pt = [](const DualQuaternion& q) { return Subspace::span({q}); };

  ConstraintVariety v;
  v.spec = spec;
  switch (spec.kind) {
    case DyadKind::RR: {
      v.space = Subspace::span({b, b * h1, b * h2, b * h1 * h2});
      v.witnesses = {{"h1", pt(b * h1)}, {"h2", pt(b * h2)}, {"h1h2", pt(b * h1 * h2)}};
      break;
    }
    case DyadKind::RP:
    case DyadKind::C:
    case DyadKind::PR: {
      const bool pr = spec.kind == DyadKind::PR;
      const DualQuaternion mixed = pr ? h2 * h1 : h1 * h2;
      v.space = Subspace::span({b, b * h1, b * h2, b * mixed});
      v.witnesses.push_back({"h", pt(b * h1)});
      v.witnesses.push_back({"e1", Subspace::span({b * h2, b * mixed})});
      // Null lines R(+-i, v) meet e1 at v = 0 and tau_1 at v = infinity.
      for (int sgn : {1, -1}) {
        const DualQuaternion n = DualQuaternion::scalar(Scalar(sgn) * i) - h1;
        const DualQuaternion s = pr ? -(h2 * n) : -(n * h2);
        const std::string idx = sgn > 0 ? "1" : "2";
        v.witnesses.push_back({"n" + idx, pt(b * n)});
        v.witnesses.push_back({"s" + idx, pt(b * s)});
        v.witnesses.push_back({"l" + idx, Subspace::span({b * n, b * s})});
      }
      break;
    }
  }
  v.quadric = restrict(study_quadric(), v.space);
  return v;
}

// ---------------------------------------------------------------------------
// Classification

enum class Verdict { TwoR, RP, PR, C, NotADyadSpace };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::TwoR:
      return "TwoR";
    case Verdict::RP:
      return "RP";
    case Verdict::PR:
      return "PR";
    case Verdict::C:
      return "C";
    case Verdict::NotADyadSpace:
      return "NotADyadSpace";
  }
  return "NotADyadSpace";
}

inline Verdict verdict_for(DyadKind k) {
  switch (k) {
    case DyadKind::RR:
      return Verdict::TwoR;
    case DyadKind::RP:
      return Verdict::RP;
    case DyadKind::PR:
      return Verdict::PR;
    case DyadKind::C:
      return Verdict::C;
  }
  return Verdict::NotADyadSpace;
}

struct Quadrilateral {
  std::array<Line, 4> sides;
  std::array<ProjPoint, 4> vertices;  // vertex k = sides[k] ^ sides[k+1]
};

/// Orders four null lines cyclically so that consecutive sides meet in four distinct vertices.
inline std::optional<Quadrilateral> null_quadrilateral(const std::vector<Line>& lines) {
  if (lines.size() != 4) return std::nullopt;
  for (const auto& l : lines)
    if (l.subspace().ambient() != 8 || !is_null_line(l)) return std::nullopt;
  std::array<std::size_t, 3> rest{1, 2, 3};
  do {
    const std::array<std::size_t, 4> order{0, rest[0], rest[1], rest[2]};
    std::vector<ProjPoint> verts;
    for (std::size_t k = 0; k < 4; ++k) {
      auto v = intersection_point(lines[order[k]], lines[order[(k + 1) % 4]]);
      if (!v) break;
      verts.push_back(*v);
    }
    if (verts.size() != 4) continue;
    bool distinct = true;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t c = a + 1; c < 4; ++c)
        if (verts[a] == verts[c]) distinct = false;
    if (!distinct) continue;
    return Quadrilateral{{lines[order[0]], lines[order[1]], lines[order[2]], lines[order[3]]},
                         {verts[0], verts[1], verts[2], verts[3]}};
  } while (std::next_permutation(rest.begin(), rest.end()));
  return std::nullopt;
}

struct ClassificationEvidence {
  Signature signature;
  int eps_meet_dim = -1;
  std::vector<Line> null_lines;
  bool null_lines_exact = true;
  std::optional<Quadrilateral> quadrilateral;
  std::optional<Line> e1;
  std::optional<Subspace> fiber_image;
  std::optional<Line> l1, l2;
  std::optional<ProjPoint> s1, s2;
  std::optional<Handedness> handedness;
  std::string reason;
};

struct Classification {
  Verdict verdict = Verdict::NotADyadSpace;
  ClassificationEvidence evidence;
};

inline Classification classify(const Subspace& u) {
  if (u.ambient() != 8 || u.dim() != 3) throw DomainError("classify expects a three-space of P^7");
  if (!conjugation_closed(u)) throw DomainError("classify expects a real (conjugation-closed) three-space");

  Classification out;
  auto& ev = out.evidence;
  ev.signature = signature(restrict(study_quadric(), u));
  const Subspace eps_meet = meet(u, exceptional_generator());
  ev.eps_meet_dim = eps_meet.dim();
  if (ev.signature != Signature{2, 2, 0}) {
    ev.reason = "Study quadric section is not a regular ruled quadric";
    return out;
  }

  auto collect_lines = [&] {
    LineSet ls = common_lines_in(u, study_quadric(), null_cone());
    ev.null_lines = ls.lines;
    ev.null_lines_exact = ls.exact;
  };

  if (ev.eps_meet_dim == -1) {
    collect_lines();
    ev.quadrilateral = null_quadrilateral(ev.null_lines);
    if (ev.quadrilateral) {
      out.verdict = Verdict::TwoR;
    } else {
      ev.reason = "null lines do not form a quadrilateral";
    }
    return out;
  }

  if (ev.eps_meet_dim != 1) {
    ev.reason = "intersection with the exceptional generator is not a line";
    return out;
  }

  ev.e1 = Line(eps_meet);
  ev.fiber_image = fiber_image(u);
  collect_lines();
  if (*ev.fiber_image == eps_meet) {
    out.verdict = Verdict::C;
    return out;
  }

  const Subspace eps_h = exceptional_generator();
  std::vector<Line> off;
  for (const auto& l : ev.null_lines)
    if (!eps_h.contains(l.subspace())) off.push_back(l);
  if (off.size() != 2 || off[1] != off[0].scalar_conj()) {
    ev.reason = "no conjugate complex pair of null lines off the exceptional generator";
    return out;
  }

  std::array<Handedness, 2> hand{};
  for (std::size_t k = 0; k < 2; ++k) {
    const Subspace s = meet(off[k].subspace(), eps_meet);
    const Subspace img = fiber_image(off[k].subspace());
    if (s.dim() != 0 || img.dim() != 0) {
      ev.reason = "null line does not meet e1 in a single point";
      return out;
    }
    const ProjPoint sp = s.points().front();
    const ProjPoint ip = img.points().front();
    hand[k] = sp == ip ? Handedness::NotARuling : ruling_handedness(ip, sp);
    (k == 0 ? ev.s1 : ev.s2) = sp;
  }
  ev.l1 = off[0];
  ev.l2 = off[1];
  ev.handedness = hand[0];
  if (hand[0] != hand[1] || hand[0] == Handedness::NotARuling) {
    ev.reason = "lines phi(l_k) v s_k are not rulings of one family";
    return out;
  }
  out.verdict = hand[0] == Handedness::RightRuling ? Verdict::RP : Verdict::PR;
  return out;
}

// ---------------------------------------------------------------------------
// Axis recovery

/// Rotation and translation rulings of the quadric U ^ S through `base`.
inline DyadSpec recover_axes(const Subspace& u, const ProjPoint& base) {
  const Classification cls = classify(u);
  if (cls.verdict == Verdict::NotADyadSpace) throw DomainError("not a dyad space: " + cls.evidence.reason);
  if (!u.contains(base)) throw DomainError("base point is not on the quadric (not in U)");
  const DualQuaternion b = base.dq();
  if (!study_condition(b)) throw DomainError("base point is not on the quadric (Study condition fails)");
  if (b.primal.norm().is_zero()) throw DomainError("base point is singular: its primal part is not invertible");

  const Subspace moved = u.transformed(left_mul_matrix8(dq_inverse(b)));
  const Matrix& basis = moved.basis();
  const Matrix gram = restrict(study_quadric(), moved).gram;
  const auto one_coords = solve(basis.transpose(), DualQuaternion::one().coords());
  if (!one_coords) throw DomainError("recover_axes: normalization failed");

  // Tangent plane at [1]; the section is a pair of lines through [1].
  const Matrix tangent = nullspace(Matrix::from_rows({gram * *one_coords}));
  const Matrix cone = tangent * gram * tangent.transpose();
  std::vector<DualQuaternion> dirs;
  for (const Subspace& piece : detail::split_degenerate_form(cone)) {
    const Matrix line8 = piece.basis() * tangent * basis;
    for (const auto& row : line8.row_list()) {
      if (ProjPoint(row) == ProjPoint(DualQuaternion::one().coords())) continue;
      DualQuaternion w = DualQuaternion::from_coords(row);
      w = w - DualQuaternion::scalar(w.primal.w);
      dirs.push_back(w);
      break;
    }
  }
  if (dirs.size() != 2) throw DomainError("recover_axes: tangent section is not a line pair");

  DyadSpec spec;
  spec.base = b;
  spec.normalized = true;
  for (auto& h : dirs) {
    if (h.primal.is_zero()) continue;  // translation, kept as eps p
    const auto root = exact_sqrt(h.primal.norm());
    if (root && root->is_real() && !root->is_zero()) {
      h = (Scalar(1) / *root) * h;
    } else if (!h.primal.norm().is_exact()) {
      h = (Scalar(1) / sqrt_any(h.primal.norm())) * h;
    } else {
      spec.normalized = false;
    }
  }

  if (cls.verdict == Verdict::TwoR) {
    spec.kind = DyadKind::RR;
    if (moved.contains((dirs[0] * dirs[1]).coords())) {
      spec.h1 = dirs[0];
      spec.h2 = dirs[1];
    } else if (moved.contains((dirs[1] * dirs[0]).coords())) {
      spec.h1 = dirs[1];
      spec.h2 = dirs[0];
    } else {
      throw DomainError("recover_axes: neither product of the half-turns lies in U");
    }
    return spec;
  }

  const bool first_translation = dirs[0].primal.is_zero();
  if (first_translation == dirs[1].primal.is_zero())
    throw DomainError("recover_axes: expected one rotation and one translation ruling");
  spec.h1 = first_translation ? dirs[1] : dirs[0];
  spec.h2 = first_translation ? dirs[0] : dirs[1];
  spec.kind = cls.verdict == Verdict::RP ? DyadKind::RP : cls.verdict == Verdict::PR ? DyadKind::PR : DyadKind::C;
  return spec;
}

// ---------------------------------------------------------------------------
// The complex three-space that contains a C-like configuration without being
// an RP or PR space.

struct Example2Report {
  bool m1_s1_null_in_eps_h = false;
  bool n1_s1_null_off_eps_h = false;
  bool conjugate_null_off_eps_h = false;
  bool quadric_not_contained = false;
  bool all() const {
    return m1_s1_null_in_eps_h && n1_s1_null_off_eps_h && conjugate_null_off_eps_h && quadric_not_contained;
  }
};

inline DualQuaternion example2_m1() { return DualQuaternion::from_dual(Quaternion::unit_i()); }
inline DualQuaternion example2_n1() {
  return DualQuaternion::from_primal(Quaternion{Scalar::imag_unit(), 1, 0, 0});
}
inline DualQuaternion example2_s1() {
  return DualQuaternion::from_dual(Quaternion{Scalar::imag_unit(), 1, 1, Scalar::imag_unit()});
}

/// Span of the quadric (u - i)(v - eps i), the kinematic image of the commuting dyad.
inline Subspace example2_quadric_span() {
  const DualQuaternion h = DualQuaternion::from_primal(Quaternion::unit_i());
  const DualQuaternion p = DualQuaternion::from_dual(Quaternion::unit_i());
  return Subspace::span({DualQuaternion::one(), h, p, h * p});
}

inline Example2Report example2_checks(const std::optional<DualQuaternion>& s1_override = std::nullopt) {
  const DualQuaternion m1 = example2_m1(), n1 = example2_n1();
  const DualQuaternion s1 = s1_override.value_or(example2_s1());
  const ProjPoint pm(m1.coords()), pn(n1.coords()), ps(s1.coords());
  const Subspace eps_h = exceptional_generator();
  const Subspace u = Subspace::span({DualQuaternion::one(), m1, n1, s1});

  Example2Report rep;
  rep.m1_s1_null_in_eps_h = pm != ps && is_null_line(pm, ps) && eps_h.contains(Subspace::span({m1, s1}));
  rep.n1_s1_null_off_eps_h = is_null_line(pn, ps) && !eps_h.contains(Subspace::span({n1, s1}));
  rep.conjugate_null_off_eps_h = is_null_line(pn.scalar_conj(), ps.scalar_conj()) &&
                                 !eps_h.contains(Subspace::span({n1.scalar_conj(), s1.scalar_conj()}));
  rep.quadric_not_contained = !u.contains(example2_quadric_span());
  return rep;
}

}  // namespace dqk
