#include <gtest/gtest.h>

#include "dqk/transforms.hpp"
#include "support/generators.hpp"

using namespace dqk;
namespace gen = dqk::testing;
using gen::Rng;

namespace {

ProjPoint pt(const DualQuaternion& q) { return ProjPoint::from_dq(q); }

// Projective equality of dual quaternions.
bool proportional(const DualQuaternion& a, const DualQuaternion& b) { return pt(a) == pt(b); }

}  // namespace

TEST(BuildTransform, IdentityFactors) {
  const AdmissibleTransform t = build_transform(DualQuaternion::one(), DualQuaternion::one());
  EXPECT_EQ(t.matrix, Matrix::identity(8));
}

TEST(BuildTransform, LeftFactorActsByMultiplication) {
  Rng rng(21);
  const DualQuaternion k = DualQuaternion::from_primal(Quaternion::unit_k());
  const AdmissibleTransform t = build_transform(k, DualQuaternion::one());
  for (int n = 0; n < 10; ++n) {
    const DualQuaternion q = gen::random_dq(rng);
    EXPECT_EQ(t(pt(q)), pt(k * q));
  }
}

TEST(BuildTransform, FactorMatricesCommute) {
  const DualQuaternion l{Quaternion::one(), Quaternion::unit_i()};
  const DualQuaternion r{Quaternion::one(), -Quaternion::unit_i()};
  EXPECT_EQ(left_mul_matrix8(l) * right_mul_matrix8(r), right_mul_matrix8(r) * left_mul_matrix8(l));
}

TEST(BuildTransform, RejectsNonStudyFactors) {
  EXPECT_THROW(build_transform({Quaternion::one(), Quaternion::one()}, DualQuaternion::one()), DomainError);
  EXPECT_THROW(build_transform(DualQuaternion::eps(), DualQuaternion::one()), DomainError);
}

TEST(Verify, BuiltTransformsAreAdmissible) {
  Rng rng(22);
  for (int n = 0; n < 20; ++n) {
    const VerificationReport rep = verify_admissible(gen::random_admissible(rng).matrix);
    EXPECT_TRUE(rep.pencil_fixed);
    EXPECT_TRUE(rep.shape_ok);
    EXPECT_TRUE(rep.rulings_preserved);
    EXPECT_TRUE(rep.overall);
  }
}

TEST(Verify, ConjugationOnlySwapsRulings) {
  const VerificationReport rep = verify_admissible(chi_matrix());
  EXPECT_TRUE(rep.pencil_fixed);
  EXPECT_TRUE(rep.shape_ok);
  EXPECT_FALSE(rep.rulings_preserved);
  EXPECT_FALSE(rep.overall);
}

TEST(Verify, UpperRightBlockBreaksShape) {
  Matrix t = Matrix::identity(8);
  t(0, 5) = 1;
  EXPECT_FALSE(verify_admissible(t).shape_ok);
  EXPECT_FALSE(verify_admissible(t).overall);
}

TEST(Verify, SingularMatrixIsAnError) {
  Matrix t = Matrix::identity(8);
  t(3, 3) = 0;
  EXPECT_THROW(verify_admissible(t), DomainError);
}

TEST(Verify, PencilInvariance) {
  Rng rng(23);
  for (int n = 0; n < 10; ++n) {
    const Matrix t = gen::random_admissible(rng).matrix;
    const Scalar nu = gen::random_rational(rng), sigma = gen::random_nonzero_rational(rng);
    const Matrix g = pencil_member(nu, sigma).gram;
    const Matrix h = t.transpose() * g * t;
    const Scalar lambda = h(0, 4) / g(0, 4);
    EXPECT_EQ(h, lambda * g);
  }
}

TEST(Verify, GroupClosure) {
  Rng rng(24);
  for (int n = 0; n < 10; ++n) {
    const Matrix t = gen::random_admissible(rng).matrix * gen::random_admissible(rng).matrix;
    EXPECT_TRUE(verify_admissible(t).overall);
  }
}

TEST(FactorSo4, Examples) {
  const auto [l, r] = factor_so4(Matrix::identity(4));
  EXPECT_EQ(pt(DualQuaternion::from_primal(l)), pt(DualQuaternion::one()));
  EXPECT_EQ(pt(DualQuaternion::from_primal(r)), pt(DualQuaternion::one()));

  const auto [lk, rk] = factor_so4(left_mul_matrix(Quaternion::unit_k()));
  EXPECT_EQ(pt(DualQuaternion::from_primal(lk)), pt(DualQuaternion::from_primal(Quaternion::unit_k())));
  EXPECT_EQ(pt(DualQuaternion::from_primal(rk)), pt(DualQuaternion::one()));
}

TEST(FactorSo4, RoundTrip) {
  Rng rng(25);
  for (int n = 0; n < 50; ++n) {
    const Quaternion l = gen::random_quaternion(rng), r = gen::random_quaternion(rng);
    const Matrix a = left_mul_matrix(l) * right_mul_matrix(r);
    const auto [l1, r1] = factor_so4(a);
    EXPECT_EQ(left_mul_matrix(l1) * right_mul_matrix(r1), a);
    EXPECT_EQ(pt(DualQuaternion::from_primal(l1)), pt(DualQuaternion::from_primal(l)));
    EXPECT_EQ(pt(DualQuaternion::from_primal(r1)), pt(DualQuaternion::from_primal(r)));
  }
}

TEST(FactorSo4, Errors) {
  EXPECT_THROW(factor_so4(Matrix::from_ints({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})), DomainError);
  try {
    factor_so4(Matrix::diagonal({1, -1, -1, -1}));
    FAIL() << "reflection accepted";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("orientation-reversing"), std::string::npos);
  }
}

TEST(FactorTransform, Identity) {
  const auto [l, r] = factor_transform(Matrix::identity(8));
  EXPECT_TRUE(proportional(l, DualQuaternion::one()));
  EXPECT_TRUE(proportional(r, DualQuaternion::one()));
}

TEST(FactorTransform, PureTranslationFactor) {
  const DualQuaternion l0{Quaternion::one(), Quaternion::unit_i()};
  const auto [l, r] = factor_transform(build_transform(l0, DualQuaternion::one()).matrix);
  EXPECT_TRUE(proportional(l, l0));
  EXPECT_TRUE(proportional(r, DualQuaternion::one()));
}

TEST(FactorTransform, RoundTripOnRandomStudyPairs) {
  Rng rng(26);
  for (int n = 0; n < 30; ++n) {
    const DualQuaternion l0 = gen::random_study(rng), r0 = gen::random_study(rng);
    const Matrix t = build_transform(l0, r0).matrix;
    const auto [l, r] = factor_transform(t);
    EXPECT_TRUE(proportional(l, l0));
    EXPECT_TRUE(proportional(r, r0));
    EXPECT_TRUE(study_condition(l));
    EXPECT_TRUE(study_condition(r));
    EXPECT_EQ(left_mul_matrix8(l) * right_mul_matrix8(r), t);
  }
}

TEST(FactorTransform, InadmissibleCarriesReport) {
  try {
    factor_transform(chi_matrix());
    FAIL() << "conjugation accepted";
  } catch (const NotAdmissibleError& e) {
    EXPECT_TRUE(e.report().pencil_fixed);
    EXPECT_FALSE(e.report().rulings_preserved);
  }
}

TEST(Fiber, CommutesWithAdmissibleTransforms) {
  Rng rng(27);
  for (int n = 0; n < 20; ++n) {
    const AdmissibleTransform t = gen::random_admissible(rng);
    const ProjPoint x = pt(gen::random_regular_dq(rng));
    EXPECT_EQ(t(fiber_projectivity(x)), fiber_projectivity(t(x)));
  }
}
