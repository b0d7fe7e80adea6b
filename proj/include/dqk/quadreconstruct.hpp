#pragma once

// Cycles of four central projections between the four-spaces E v [u'_1], ...,
// and the unique reconstruction of a spatial quadrilateral on a quadric from its
// projection into F.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dqk/error.hpp"
#include "dqk/matrix.hpp"
#include "dqk/projgeom.hpp"

namespace dqk {

/// E, the points [u'_1], [v'_1], [u'_2], [v'_2] spanning F, and the centres
/// [m_1], [n_1], [m_2], [n_2] of the projections U1 -> V1 -> U2 -> V2 -> U1.
struct ProjectionCycle {
  Subspace e;
  std::array<ProjPoint, 4> f_points;
  std::array<ProjPoint, 4> centers;

  /// The four-spaces E v [u'_1], E v [v'_1], E v [u'_2], E v [v'_2].
  std::array<Subspace, 4> targets() const {
    return {join(e, Subspace::span({f_points[0]})), join(e, Subspace::span({f_points[1]})),
            join(e, Subspace::span({f_points[2]})), join(e, Subspace::span({f_points[3]}))};
  }
};

inline void validate(const ProjectionCycle& c) {
  const std::size_t n = c.e.ambient();
  if (n != 8 || c.e.dim() != 3) throw DomainError("E must be a three-space of P^7");
  const Subspace f = Subspace::span(std::vector<ProjPoint>(c.f_points.begin(), c.f_points.end()));
  if (f.dim() != 3) throw DomainError("the points u'_1, v'_1, u'_2, v'_2 must span a three-space F");
  if (!meet(c.e, f).is_empty()) throw DomainError("E and F must not intersect");
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b)
      if (c.centers[a] == c.centers[b]) throw DomainError("projection centres must be pairwise distinct");
  const Subspace l = Subspace::span(std::vector<ProjPoint>(c.centers.begin(), c.centers.end()));
  if (l.dim() != 2) throw DomainError("projection centres must span a plane");
  const auto t = c.targets();
  static const char* names[4] = {"E v u'_1", "E v v'_1", "E v u'_2", "E v v'_2"};
  for (std::size_t k = 0; k < 4; ++k)
    if (!meet(l, t[k]).is_empty()) throw DomainError(std::string("plane of centres is not complementary to ") + names[k]);
  // Centre k joins target k and target k+1.
  static const char* centre_names[4] = {"m_1", "n_1", "m_2", "n_2"};
  for (std::size_t k = 0; k < 4; ++k)
    if (!join(t[k], t[(k + 1) % 4]).contains(c.centers[k]))
      throw DomainError(std::string("centre ") + centre_names[k] + " does not lie in the span of its two four-spaces");
}

/// Projects start through the four centres in turn; returns [v1, u2, v2, u1'] where u1' == start.
inline std::array<ProjPoint, 4> run_cycle(const ProjectionCycle& c, const ProjPoint& start) {
  validate(c);
  const auto t = c.targets();
  if (!t[0].contains(start)) throw DomainError("start point must lie in E v u'_1");
  if (c.e.contains(start)) throw DomainError("start point must not lie in E");
  const ProjPoint v1 = project_from_center(start, Subspace::span({c.centers[0]}), t[1]);
  const ProjPoint u2 = project_from_center(v1, Subspace::span({c.centers[1]}), t[2]);
  const ProjPoint v2 = project_from_center(u2, Subspace::span({c.centers[2]}), t[3]);
  const ProjPoint u1 = project_from_center(v2, Subspace::span({c.centers[3]}), t[0]);
  return {v1, u2, v2, u1};
}

struct ReconstructionProblem {
  QuadricForm omega;  // 8x8, regular, vanishing on E
  ProjectionCycle cycle;
  std::optional<Matrix> e_basis;  // rows spanning E used for the adapted coordinates
};

struct ReconstructionResult {
  std::array<ProjPoint, 4> vertices;  // u1, v1, u2, v2
  Scalar zeta1, eta1, zeta2;
  bool on_quadric = false;   // all conditions omega(u_i,u_i) = omega(v_i,v_i) = omega(u_i,v_j) = 0
  bool incidences = false;   // m1 in u1 v v1, n1 in v1 v u2, m2 in u2 v v2, n2 in v2 v u1
  bool projections = false;  // projecting from E into F recovers u'_1, v'_1, u'_2, v'_2
  bool ok() const { return on_quadric && incidences && projections; }
};

/// Solves the linear system for the E-coordinates of u1 in a basis adapted to
/// F and E.  The F basis is scaled so that the centres project to
/// [1,1,0,0], [0,1,1,0], [0,0,1,1], [1,0,0,1], which fixes the unit point.
inline ReconstructionResult reconstruct_quadrilateral(const ReconstructionProblem& p) {
  const ProjectionCycle& c = p.cycle;
  validate(c);
  const Matrix& omega = p.omega.gram;
  if (omega.rows() != 8 || !omega.is_square() || !omega.is_symmetric()) throw DomainError("omega must be a symmetric 8x8 form");
  if (!omega.is_exact()) throw DomainError("reconstruction requires exact scalars");
  for (const auto& pt : c.f_points)
    if (!all_exact(pt.coords())) throw DomainError("reconstruction requires exact scalars");
  for (const auto& pt : c.centers)
    if (!all_exact(pt.coords())) throw DomainError("reconstruction requires exact scalars");
  if (rank(omega) != 8) throw DomainError("quadric must be regular");
  if (!detail::form_vanishes_on(omega, c.e)) throw DomainError("E is not contained in the quadric");
  for (const auto& m : c.centers)
    if (!p.omega.eval(m.coords()).is_zero()) throw DomainError("projection centres must lie on the quadric");

  Matrix e_rows = p.e_basis.value_or(c.e.basis());
  if (e_rows.rows() != 4 || Subspace::from_rows(e_rows) != c.e) throw DomainError("e_basis does not span E");

  // Basis as columns: F points, then E.  Coordinates y of a point x satisfy x = P y.
  auto build_basis = [&](const std::array<Vector, 4>& f) {
    Matrix basis(8, 8);
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t r = 0; r < 8; ++r) {
        basis(r, k) = f[k][r];
        basis(r, k + 4) = e_rows(k, r);
      }
    return basis;
  };
  std::array<Vector, 4> f{c.f_points[0].coords(), c.f_points[1].coords(), c.f_points[2].coords(),
                          c.f_points[3].coords()};
  Matrix basis = build_basis(f);
  Matrix to_coords = inverse(basis);

  // Centre k has F-part a_k f_k + b_k f_{k+1}.
  auto f_pair = [&](std::size_t k) {
    const Vector y = to_coords * c.centers[k].coords();
    return std::make_pair(y[k], y[(k + 1) % 4]);
  };
  {
    std::array<Scalar, 4> lambda{1, 0, 0, 0};
    for (std::size_t k = 0; k < 3; ++k) {
      const auto [a, b] = f_pair(k);
      if (a.is_zero() || b.is_zero()) throw DomainError("projection centre lies in a target four-space");
      lambda[k + 1] = lambda[k] * b / a;
    }
    for (std::size_t k = 0; k < 4; ++k) f[k] = lambda[k] * f[k];
    basis = build_basis(f);
    to_coords = inverse(basis);
  }

  std::array<Vector, 4> cent;
  for (std::size_t k = 0; k < 4; ++k) {
    Vector y = to_coords * c.centers[k].coords();
    const Scalar a = y[k];
    if (a.is_zero()) throw DomainError("projection centre lies in a target four-space");
    cent[k] = (Scalar(1) / a) * y;  // F-part now e_k + b e_{k+1}
  }

  // v1 = u1 + zeta1 m1, u2 = v1 + eta1 n1, v2 = u2 + zeta2 m2; each step kills one F-coordinate.
  const Scalar zeta1 = -Scalar(1) / cent[0][0];
  const Scalar eta1 = -(zeta1 * cent[0][1]) / cent[1][1];
  const Scalar zeta2 = -(eta1 * cent[1][2]) / cent[2][2];

  const Matrix g = basis.transpose() * omega * basis;
  const Matrix a_blk = g.block(0, 0, 4, 4);
  const Matrix b_blk = g.block(0, 4, 4, 4);
  if (!g.block(4, 4, 4, 4).is_zero()) throw DomainError("E is not contained in the quadric");
  if (rank(b_blk) != 4) throw DomainError("quadric not in admissible position");

  auto e_part = [](const Vector& y) { return Vector(y.begin() + 4, y.end()); };
  auto f_part = [](const Vector& y) { return Vector(y.begin(), y.begin() + 4); };
  std::array<Vector, 4> delta;
  delta[0] = Vector(4);
  delta[1] = zeta1 * e_part(cent[0]);
  delta[2] = delta[1] + eta1 * e_part(cent[1]);
  delta[3] = delta[2] + zeta2 * e_part(cent[2]);
  std::array<Vector, 4> fcoord;
  fcoord[0] = Vector{1, 0, 0, 0};
  fcoord[1] = fcoord[0] + zeta1 * f_part(cent[0]);
  fcoord[2] = fcoord[1] + eta1 * f_part(cent[1]);
  fcoord[3] = fcoord[2] + zeta2 * f_part(cent[2]);

  // omega(z, z) = z'^T A z' + 2 z'^T B z'' with z' = s_k e_k:  B_k (x + delta_k) = -s_k A_kk / 2.
  Vector rhs(4);
  for (std::size_t k = 0; k < 4; ++k) {
    const Scalar s = fcoord[k][k];
    const Vector bk = b_blk.row(k);
    rhs[k] = -(s * a_blk(k, k)) / Scalar(2) - dot(bk, delta[k]);
  }
  const auto x = solve(b_blk, rhs);
  if (!x) throw DomainError("quadric not in admissible position");

  auto vertex = [&](std::size_t k) {
    Vector y = fcoord[k];
    const Vector ex = *x + delta[k];
    y.insert(y.end(), ex.begin(), ex.end());
    return ProjPoint(basis * y);
  };
  ReconstructionResult res{
      .vertices = {vertex(0), vertex(1), vertex(2), vertex(3)},
      .zeta1 = zeta1,
      .eta1 = eta1,
      .zeta2 = zeta2,
  };

  const auto& v = res.vertices;
  res.on_quadric = true;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) {
      if (i != j && (i % 2) == (j % 2)) continue;  // omega(u1, u2) and omega(v1, v2) are not constrained
      if (!p.omega.polar(v[i].coords(), v[j].coords()).is_zero()) res.on_quadric = false;
    }
  res.incidences = true;
  for (std::size_t k = 0; k < 4; ++k)
    if (!Subspace::span({v[k], v[(k + 1) % 4]}).contains(c.centers[k])) res.incidences = false;
  const Subspace fspace = Subspace::span(std::vector<ProjPoint>(c.f_points.begin(), c.f_points.end()));
  res.projections = true;
  for (std::size_t k = 0; k < 4; ++k)
    if (project_from_center(v[k], c.e, fspace) != c.f_points[k]) res.projections = false;
  return res;
}

}  // namespace dqk
