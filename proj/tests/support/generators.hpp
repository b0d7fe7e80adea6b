#pragma once

// Random exact test data. Every generator draws from a caller-owned engine so
// that test runs are reproducible from a seed.

#include <random>

#include "dqk/algebra.hpp"
#include "dqk/dyads.hpp"
#include "dqk/projgeom.hpp"
#include "dqk/quadreconstruct.hpp"
#include "dqk/scalar.hpp"
#include "dqk/transforms.hpp"

namespace dqk::testing {

using Rng = std::mt19937_64;

inline Scalar random_rational(Rng& rng, long range = 9, long max_den = 5) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, max_den);
  return Scalar::rational(num(rng), den(rng));
}

inline Scalar random_nonzero_rational(Rng& rng, long range = 9, long max_den = 5) {
  for (;;) {
    Scalar s = random_rational(rng, range, max_den);
    if (!s.is_zero()) return s;
  }
}

inline Quaternion random_quaternion(Rng& rng) {
  for (;;) {
    Quaternion q{random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)};
    if (!q.norm().is_zero()) return q;
  }
}

inline Quaternion random_pure_quaternion(Rng& rng) {
  for (;;) {
    Quaternion q = Quaternion::vector(random_rational(rng), random_rational(rng), random_rational(rng));
    if (!q.is_zero()) return q;
  }
}

/// Rational point of the unit sphere by inverse stereographic projection.
inline Quaternion random_unit_vector(Rng& rng) {
  const Scalar u = random_rational(rng, 6, 4), v = random_rational(rng, 6, 4);
  const Scalar n = u * u + v * v;
  const Scalar inv = Scalar(1) / (n + 1);
  return Quaternion::vector(2 * u * inv, 2 * v * inv, (n - 1) * inv);
}

inline Quaternion cross(const Quaternion& a, const Quaternion& b) {
  return Quaternion::vector(a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x);
}

/// Half-turn about a random line: h = d + eps m with unit direction d and moment m orthogonal to d.
inline DualQuaternion random_half_turn(Rng& rng) {
  const Quaternion d = random_unit_vector(rng);
  const Quaternion w = random_pure_quaternion(rng);
  return {d, cross(d, w)};
}

/// A random element of the Study quadric with invertible primal part: p + eps p s, s pure.
inline DualQuaternion random_study(Rng& rng) {
  const Quaternion p = random_quaternion(rng);
  const Quaternion s = Quaternion::vector(random_rational(rng), random_rational(rng), random_rational(rng));
  return {p, p * s};
}

inline DualQuaternion random_dq(Rng& rng) {
  return {Quaternion{random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)},
          Quaternion{random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)}};
}

/// Random dual quaternion with invertible primal part (not necessarily on S).
inline DualQuaternion random_regular_dq(Rng& rng) {
  for (;;) {
    DualQuaternion q = random_dq(rng);
    if (!q.primal.norm().is_zero()) return q;
  }
}

inline Vector random_vector(Rng& rng, std::size_t n) {
  Vector v(n);
  for (auto& s : v) s = random_rational(rng);
  return v;
}

/// Random valid dyad specification with a regular Study section, moved by a random base displacement.
inline DyadSpec random_dyad_spec(Rng& rng, DyadKind kind) {
  for (;;) {
    DyadSpec s;
    s.kind = kind;
    s.base = random_study(rng);
    s.h1 = random_half_turn(rng);
    if (kind == DyadKind::RR)
      s.h2 = random_half_turn(rng);
    else if (kind == DyadKind::C)
      s.h2 = DualQuaternion::from_dual(random_nonzero_rational(rng) * s.h1.primal);
    else
      s.h2 = DualQuaternion::from_dual(random_pure_quaternion(rng));
    try {
      if (signature(build_variety(s).quadric) == Signature{2, 2, 0}) return s;
    } catch (const DomainError&) {
    }
  }
}

/// Line through a random Study point p towards p w with |w'| rational, so that the
/// C-space construction stays over the Gaussian rationals.
inline Line random_exact_line(Rng& rng) {
  const DualQuaternion p = random_study(rng);
  const DualQuaternion w{random_nonzero_rational(rng) * random_unit_vector(rng), random_quaternion(rng)};
  return Line::through(ProjPoint::from_dq(p), ProjPoint::from_dq(p * w));
}

/// Generic line through a point with invertible primal part; its roots are usually irrational.
inline Line random_generic_line(Rng& rng) {
  for (;;) {
    const DualQuaternion p = random_regular_dq(rng), q = random_dq(rng);
    if (ProjPoint::from_dq(p) == ProjPoint::from_dq(q)) continue;
    const Line l = Line::through(ProjPoint::from_dq(p), ProjPoint::from_dq(q));
    Matrix primal(2, 4);
    const auto rows = l.subspace().vectors();
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 4; ++c) primal(r, c) = rows[r][c];
    if (rank(primal) == 2 && !is_null_line(l.point(0), l.point(1))) return l;
  }
}

/// Random admissible transform built from two random Study elements.
inline AdmissibleTransform random_admissible(Rng& rng) { return build_transform(random_study(rng), random_study(rng)); }

/// Random three-space of P^7 disjoint from e.
inline Subspace random_complement(Rng& rng, const Subspace& e) {
  for (;;) {
    std::vector<Vector> pts;
    for (int k = 0; k < 4; ++k) pts.push_back(random_vector(rng, 8));
    Subspace f = Subspace::span(pts, 8);
    if (f.dim() == 3 && meet(f, e).is_empty()) return f;
  }
}

/// Random hyperplane section of a subspace (one dimension less).
inline Subspace random_section(Rng& rng, const Subspace& s) {
  for (;;) {
    const Vector h = random_vector(rng, s.ambient());
    const Subspace cut = meet(s, Subspace::from_rows(nullspace(Matrix::from_rows({h}))));
    if (cut.dim() == s.dim() - 1) return cut;
  }
}

/// A random projection cycle: the centres are the sides of the F-quadrilateral cut by a
/// plane of F, lifted out of F by random E-components while staying coplanar.
inline ProjectionCycle random_cycle(Rng& rng, const Subspace& e) {
  for (;;) {
    const Subspace f = random_complement(rng, e);
    const auto fp = f.points();
    std::array<ProjPoint, 4> quad{ProjPoint(fp[0].coords() + fp[1].coords()), ProjPoint(fp[1].coords() + fp[2].coords()),
                                  ProjPoint(fp[2].coords() + fp[3].coords()), ProjPoint(fp[3].coords() + fp[0].coords())};
    for (auto& q : quad) q = ProjPoint(q.coords() + random_rational(rng) * fp[0].coords() + random_rational(rng) * fp[2].coords());
    if (Subspace::span(std::vector<ProjPoint>(quad.begin(), quad.end())).dim() != 3) continue;
    const Subspace plane = random_section(rng, f);
    std::array<Vector, 4> flat;
    bool good = true;
    for (std::size_t k = 0; k < 4; ++k) {
      const Subspace hit = meet(Subspace::span({quad[k], quad[(k + 1) % 4]}), plane);
      if (hit.dim() != 0) {
        good = false;
        break;
      }
      flat[k] = hit.vectors().front();
    }
    if (!good) continue;
    // flat[3] = al flat[0] + be flat[1] + ga flat[2] inside the plane.
    Matrix sys(8, 3);
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t k = 0; k < 3; ++k) sys(r, k) = flat[k][r];
    const auto coef = solve(sys, flat[3]);
    if (!coef) continue;
    const auto eb = e.vectors();
    std::array<Vector, 3> lifted;
    for (std::size_t k = 0; k < 3; ++k) {
      lifted[k] = flat[k];
      for (const auto& v : eb) lifted[k] = lifted[k] + random_rational(rng) * v;
    }
    const Vector last = (*coef)[0] * lifted[0] + (*coef)[1] * lifted[1] + (*coef)[2] * lifted[2];
    ProjectionCycle c{e, quad, {ProjPoint(lifted[0]), ProjPoint(lifted[1]), ProjPoint(lifted[2]), ProjPoint(last)}};
    try {
      validate(c);
      return c;
    } catch (const DomainError&) {
    }
  }
}

/// Random start point of E v u'_1 outside E.
inline ProjPoint random_cycle_start(Rng& rng, const ProjectionCycle& c) {
  Vector v = random_nonzero_rational(rng) * c.f_points[0].coords();
  for (const auto& b : c.e.vectors()) v = v + random_rational(rng) * b;
  return ProjPoint(v);
}

struct ForwardInstance {
  ReconstructionProblem problem;
  std::array<ProjPoint, 4> quadrilateral;  // u1, v1, u2, v2
};

/// A reconstruction problem with known answer: the null quadrilateral of a random
/// 2R space moved by a random admissible transform, Q = S and E = [eps H].
inline ForwardInstance random_forward_instance(Rng& rng) {
  const Subspace e = exceptional_generator();
  for (;;) {
    const DyadSpec spec = random_dyad_spec(rng, DyadKind::RR);
    const AdmissibleTransform tau = random_admissible(rng);
    const Subspace u = tau(build_variety(spec).space);
    const Classification cls = classify(u);
    if (!cls.evidence.quadrilateral) continue;
    const auto& quad = *cls.evidence.quadrilateral;
    // vertices[k] = sides[k] ^ sides[k+1]; take u1 = vertex 3 so that u1 v v1 = sides[0].
    const std::array<ProjPoint, 4> verts{quad.vertices[3], quad.vertices[0], quad.vertices[1], quad.vertices[2]};
    const Subspace f = random_complement(rng, e);
    std::array<ProjPoint, 4> primes{verts[0], verts[0], verts[0], verts[0]};
    for (std::size_t k = 0; k < 4; ++k) primes[k] = project_from_center(verts[k], e, f);
    const Subspace plane = random_section(rng, u);
    std::vector<ProjPoint> centers;
    for (std::size_t k = 0; k < 4; ++k) {
      const Subspace hit = meet(Subspace::span({verts[k], verts[(k + 1) % 4]}), plane);
      if (hit.dim() != 0) break;
      centers.push_back(hit.points().front());
    }
    if (centers.size() != 4) continue;
    ReconstructionProblem p{study_quadric(), ProjectionCycle{e, primes, {centers[0], centers[1], centers[2], centers[3]}},
                            std::nullopt};
    try {
      validate(p.cycle);
    } catch (const DomainError&) {
      continue;
    }
    return {p, verts};
  }
}

}  // namespace dqk::testing
