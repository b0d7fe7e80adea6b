#include <gtest/gtest.h>

#include "dqk/dyads.hpp"
#include "support/generators.hpp"

using namespace dqk;
namespace gen = dqk::testing;
using gen::Rng;

namespace {

const Scalar I = Scalar::imag_unit();
const Quaternion QI = Quaternion::unit_i(), QJ = Quaternion::unit_j(), QK = Quaternion::unit_k();

DualQuaternion prim(const Quaternion& q) { return DualQuaternion::from_primal(q); }
DualQuaternion eps(const Quaternion& q) { return DualQuaternion::from_dual(q); }
DualQuaternion sc(const Scalar& s) { return DualQuaternion::scalar(s); }
ProjPoint pt(const DualQuaternion& q) { return ProjPoint::from_dq(q); }

DyadSpec rr_fixture() { return {DyadKind::RR, prim(QK), {QI, QK}}; }
DyadSpec rp_fixture() { return {DyadKind::RP, prim(QK), eps(QI + QK)}; }
DyadSpec c_fixture() { return {DyadKind::C, prim(QI), eps(QI)}; }

Subspace conjugated(const Subspace& u) { return u.transformed(conjugation_matrix()); }

std::string message_of(const DyadSpec& s) {
  try {
    validate(s);
  } catch (const DomainError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

TEST(BuildVariety, RrFixture) {
  const ConstraintVariety v = build_variety(rr_fixture());
  EXPECT_EQ(v.space, Subspace::span({DualQuaternion::one(), prim(QK), DualQuaternion{QI, QK},
                                     DualQuaternion{QJ, Quaternion::scalar(-1)}}));
  EXPECT_EQ(signature(v.quadric), (Signature{2, 2, 0}));
}

TEST(BuildVariety, RpSpan) {
  const DyadSpec s{DyadKind::RP, prim(QK), eps(QI)};
  EXPECT_EQ(build_variety(s).space, Subspace::span({DualQuaternion::one(), prim(QK), eps(QI), eps(QJ)}));
}

TEST(BuildVariety, CylindricalSpanAndParametrization) {
  const ConstraintVariety v = build_variety(c_fixture());
  EXPECT_EQ(v.space, Subspace::span({DualQuaternion::one(), prim(QI), DualQuaternion::eps(), eps(QI)}));
  Rng rng(31);
  for (int n = 0; n < 5; ++n) {
    const Scalar u = gen::random_rational(rng), w = gen::random_rational(rng);
    const DualQuaternion q = v.point(u, w);
    EXPECT_EQ(q, (sc(u) - prim(QI)) * (sc(w) - eps(QI)));
    EXPECT_TRUE(v.space.contains(q.coords()));
  }
}

TEST(BuildVariety, ParametrizedPointsLieOnTheQuadric) {
  Rng rng(32);
  for (DyadKind k : {DyadKind::RR, DyadKind::RP, DyadKind::PR, DyadKind::C}) {
    const ConstraintVariety v = build_variety(gen::random_dyad_spec(rng, k));
    for (int n = 0; n < 5; ++n) {
      const DualQuaternion q = v.point(gen::random_rational(rng), gen::random_rational(rng));
      EXPECT_TRUE(v.space.contains(q.coords()));
      EXPECT_TRUE(study_condition(q));
    }
  }
}

TEST(Validate, Errors) {
  EXPECT_NE(message_of({DyadKind::RR, prim(QK), prim(QK + QK)}).find("parallel axes"), std::string::npos);
  EXPECT_NE(message_of({DyadKind::RR, prim(QK), prim(QI)}).find("coplanar axes"), std::string::npos);
  EXPECT_NE(message_of({DyadKind::RP, prim(QK), eps(QK)}).find("use kind C"), std::string::npos);
  EXPECT_NE(message_of({DyadKind::C, prim(QK), eps(QI)}).find("parallel to the rotation axis"), std::string::npos);
  EXPECT_NE(message_of({DyadKind::RR, sc(1), prim(QI)}).find("h1"), std::string::npos);
  DyadSpec bad_base = rr_fixture();
  bad_base.base = {Quaternion::one(), Quaternion::one()};
  EXPECT_NE(message_of(bad_base).find("base"), std::string::npos);
  EXPECT_EQ(message_of(rr_fixture()), "");
}

// ---------------------------------------------------------------------------
// Classification

TEST(Classify, RrFixtureIsTwoR) {
  const Classification c = classify(build_variety(rr_fixture()).space);
  EXPECT_EQ(c.verdict, Verdict::TwoR);
  ASSERT_TRUE(c.evidence.quadrilateral.has_value());
  EXPECT_EQ(c.evidence.null_lines.size(), 4u);
  EXPECT_EQ(c.evidence.eps_meet_dim, -1);
}

TEST(Classify, RpAndItsConjugate) {
  const Subspace u = build_variety(rp_fixture()).space;
  const Classification c = classify(u);
  EXPECT_EQ(c.verdict, Verdict::RP);
  EXPECT_EQ(c.evidence.handedness, Handedness::RightRuling);
  EXPECT_EQ(classify(conjugated(u)).verdict, Verdict::PR);
}

TEST(Classify, RpWithOrthogonalTranslationIsDegenerate) {
  // For p orthogonal to the axis the space lies inside the Study quadric.
  const Subspace u = Subspace::span({DualQuaternion::one(), prim(QK), eps(QI), eps(QJ)});
  const Classification c = classify(u);
  EXPECT_EQ(c.verdict, Verdict::NotADyadSpace);
  EXPECT_EQ(c.evidence.signature, (Signature{0, 0, 4}));
}

TEST(Classify, CylindricalSpace) {
  const Subspace u = Subspace::span({DualQuaternion::one(), prim(QI), DualQuaternion::eps(), eps(QI)});
  const Classification c = classify(u);
  EXPECT_EQ(c.verdict, Verdict::C);
  EXPECT_EQ(*c.evidence.fiber_image, meet(u, exceptional_generator()));
}

TEST(Classify, RejectsBadInput) {
  EXPECT_THROW(classify(Subspace::span({DualQuaternion::one(), prim(QI)})), DomainError);
  const Subspace complex = Subspace::span({DualQuaternion::one(), eps(QI), example2_n1(), example2_s1()});
  EXPECT_THROW(classify(complex), DomainError);
}

TEST(Classify, SoundOnRandomSpecs) {
  Rng rng(33);
  for (DyadKind k : {DyadKind::RR, DyadKind::RP, DyadKind::PR, DyadKind::C})
    for (int n = 0; n < 8; ++n) {
      const DyadSpec s = gen::random_dyad_spec(rng, k);
      EXPECT_EQ(classify(build_variety(s).space).verdict, verdict_for(k)) << to_string(k);
    }
}

TEST(Classify, ConjugationDuality) {
  Rng rng(34);
  const std::pair<DyadKind, Verdict> cases[] = {
      {DyadKind::RR, Verdict::TwoR}, {DyadKind::RP, Verdict::PR}, {DyadKind::PR, Verdict::RP}, {DyadKind::C, Verdict::C}};
  for (const auto& [kind, image] : cases)
    for (int n = 0; n < 3; ++n) {
      const Subspace u = build_variety(gen::random_dyad_spec(rng, kind)).space;
      EXPECT_EQ(classify(conjugated(u)).verdict, image);
    }
}

TEST(Classify, InvariantUnderAdmissibleTransforms) {
  Rng rng(35);
  for (DyadKind k : {DyadKind::RR, DyadKind::RP, DyadKind::PR, DyadKind::C})
    for (int n = 0; n < 3; ++n) {
      const Subspace u = build_variety(gen::random_dyad_spec(rng, k)).space;
      EXPECT_EQ(classify(gen::random_admissible(rng)(u)).verdict, verdict_for(k));
    }
}

// ---------------------------------------------------------------------------
// Null quadrilaterals

TEST(NullQuadrilateral, RrVerticesAreParametricProducts) {
  const ConstraintVariety v = build_variety(rr_fixture());
  const Classification c = classify(v.space);
  ASSERT_TRUE(c.evidence.quadrilateral.has_value());
  std::vector<ProjPoint> expected;
  for (const Scalar& t1 : {I, -I})
    for (const Scalar& t2 : {I, -I}) expected.push_back(pt(v.point(t1, t2)));
  for (const auto& vert : c.evidence.quadrilateral->vertices)
    EXPECT_NE(std::find(expected.begin(), expected.end(), vert), expected.end());
  const auto& q = *c.evidence.quadrilateral;
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_TRUE(q.sides[k].contains(q.vertices[k]));
    EXPECT_TRUE(q.sides[(k + 1) % 4].contains(q.vertices[k]));
  }
}

TEST(NullQuadrilateral, NeedsFourDistinctVertices) {
  const Classification c = classify(build_variety(rr_fixture()).space);
  const auto& l = c.evidence.null_lines;
  EXPECT_FALSE(null_quadrilateral({l[0], l[1], l[2]}).has_value());
  EXPECT_FALSE(null_quadrilateral({l[0], l[0], l[1], l[1]}).has_value());
  EXPECT_TRUE(null_quadrilateral(l).has_value());
}

TEST(NullQuadrilateral, SkewLinesGiveNothing) {
  const Subspace u = build_variety(rr_fixture()).space;
  const Classification c = classify(u);
  // Opposite sides and their translates: no two consecutive lines can meet.
  const Matrix shift = left_mul_matrix8({Quaternion::one(), QJ});
  std::vector<Line> lines;
  const auto& q = *c.evidence.quadrilateral;
  lines.push_back(q.sides[0]);
  lines.push_back(q.sides[2]);
  lines.push_back(Line(q.sides[0].subspace().transformed(shift)));
  lines.push_back(Line(q.sides[2].subspace().transformed(shift)));
  EXPECT_FALSE(null_quadrilateral(lines).has_value());
}

// ---------------------------------------------------------------------------
// Axis recovery

TEST(RecoverAxes, RrFixture) {
  const Subspace u = build_variety(rr_fixture()).space;
  const DyadSpec s = recover_axes(u, pt(DualQuaternion::one()));
  EXPECT_EQ(s.kind, DyadKind::RR);
  const std::vector<ProjPoint> axes{pt(prim(QK)), pt({QI, QK})};
  EXPECT_NE(std::find(axes.begin(), axes.end(), pt(s.h1)), axes.end());
  EXPECT_NE(std::find(axes.begin(), axes.end(), pt(s.h2)), axes.end());
  EXPECT_NE(pt(s.h1), pt(s.h2));
  EXPECT_EQ(build_variety(s).space, u);
}

TEST(RecoverAxes, RpFixture) {
  const DyadSpec rp = rp_fixture();
  const DyadSpec s = recover_axes(build_variety(rp).space, pt(DualQuaternion::one()));
  EXPECT_EQ(s.kind, DyadKind::RP);
  EXPECT_EQ(pt(s.h1), pt(rp.h1));
  EXPECT_EQ(pt(s.h2), pt(rp.h2));
}

TEST(RecoverAxes, RoundTripWithMovedBase) {
  Rng rng(36);
  for (DyadKind k : {DyadKind::RR, DyadKind::RP, DyadKind::PR, DyadKind::C})
    for (int n = 0; n < 3; ++n) {
      const ConstraintVariety v = build_variety(gen::random_dyad_spec(rng, k));
      const DualQuaternion base = v.point(gen::random_rational(rng), gen::random_rational(rng));
      if (base.primal.norm().is_zero()) continue;
      const DyadSpec s = recover_axes(v.space, pt(base));
      EXPECT_EQ(s.kind, k);
      EXPECT_EQ(build_variety(s).space, v.space);
    }
}

TEST(RecoverAxes, BaseOffTheQuadric) {
  const Subspace u = build_variety(rr_fixture()).space;
  EXPECT_THROW(recover_axes(u, pt(prim(QJ))), DomainError);
}

// ---------------------------------------------------------------------------
// The complex C-like three-space

TEST(Example2, AllClaimsHold) {
  const Example2Report r = example2_checks();
  EXPECT_TRUE(r.m1_s1_null_in_eps_h);
  EXPECT_TRUE(r.n1_s1_null_off_eps_h);
  EXPECT_TRUE(r.conjugate_null_off_eps_h);
  EXPECT_TRUE(r.quadric_not_contained);
}

TEST(Example2, ProductWitnessFlipsContainment) {
  const DualQuaternion s1 = example2_m1() * example2_n1();
  EXPECT_EQ(s1, eps({-1, I, 0, 0}));
  EXPECT_EQ(s1, example2_n1() * example2_m1());
  EXPECT_FALSE(example2_checks(s1).quadric_not_contained);
}

TEST(Example2, QuadricPointsSatisfyStudyCondition) {
  Rng rng(37);
  for (int n = 0; n < 5; ++n) {
    const DualQuaternion q =
        (sc(gen::random_rational(rng)) - prim(QI)) * (sc(gen::random_rational(rng)) - eps(QI));
    EXPECT_TRUE(study_condition(q));
    EXPECT_TRUE(example2_quadric_span().contains(q.coords()));
  }
}
