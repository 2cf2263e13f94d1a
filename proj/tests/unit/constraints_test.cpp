#include <gtest/gtest.h>

#include "projection_axioms.hpp"
#include "ric/constraints.hpp"
#include "ric/errors.hpp"

namespace ric {
namespace {

const Vector kSample = (Vector(3) << 1.5, -2.0, 0.25).finished();

Box unit_box() { return {Vector::Constant(3, -1.0), Vector::Constant(3, 1.0)}; }

TEST(Project, FullSpaceIsIdentity) {
  EXPECT_EQ(project(FullSpace{}, kSample), kSample);
  EXPECT_EQ(distance_sq(FullSpace{}, kSample), 0.0);
}

TEST(Project, OrthantClipsNegatives) {
  const Vector p = project(NonnegativeOrthant{}, kSample);
  EXPECT_EQ(p, (Vector(3) << 1.5, 0.0, 0.25).finished());
  EXPECT_DOUBLE_EQ(distance_sq(NonnegativeOrthant{}, kSample), 4.0);
}

TEST(Project, BoxClamps) {
  const Vector p = project(unit_box(), kSample);
  EXPECT_EQ(p, (Vector(3) << 1.0, -1.0, 0.25).finished());
  EXPECT_DOUBLE_EQ(distance_sq(unit_box(), kSample), 0.25 + 1.0);
}

TEST(Project, BoxWithInfiniteSides) {
  const Box half{Vector::Constant(3, -kUnbounded), Vector::Constant(3, 0.5)};
  EXPECT_EQ(project(half, kSample), (Vector(3) << 0.5, -2.0, 0.25).finished());
}

TEST(Project, BoxDimensionMismatchThrows) {
  EXPECT_THROW(static_cast<void>(project(unit_box(), Vector::Zero(2))), DomainError);
}

TEST(ExposureSet, RejectsInvertedBox) {
  EXPECT_THROW(ExposureSet(Box{Vector::Constant(2, 1.0), Vector::Constant(2, 0.0)}), DomainError);
  EXPECT_THROW(ExposureSet(Box{Vector::Zero(2), Vector::Zero(3)}), DomainError);
}

TEST(ExposureSet, Kinds) {
  EXPECT_TRUE(ExposureSet().is_full_space());
  EXPECT_TRUE(ExposureSet(NonnegativeOrthant{}).is_cone());
  EXPECT_FALSE(ExposureSet(unit_box()).is_cone());
}

TEST(ScaleSet, ConesAreInvariant) {
  const Vector d = (Vector(3) << 2.0, 3.0, 4.0).finished();
  EXPECT_TRUE(scale_set(NonnegativeOrthant{}, d).is_orthant());
  EXPECT_TRUE(scale_set(FullSpace{}, d).is_full_space());
}

TEST(ScaleSet, BoxBoundsScaleBySquareRoot) {
  const Vector d = (Vector(3) << 4.0, 9.0, 1.0).finished();
  const auto scaled = scale_set(unit_box(), d);
  const auto& box = std::get<Box>(scaled.shape());
  EXPECT_EQ(box.upper, (Vector(3) << 2.0, 3.0, 1.0).finished());
  EXPECT_EQ(box.lower, -box.upper);
}

TEST(ScaleSet, RejectsNonpositiveFactors) {
  EXPECT_THROW(static_cast<void>(scale_set(FullSpace{}, (Vector(2) << 1.0, 0.0).finished())),
               DomainError);
}

class ProjectionAxioms : public ::testing::TestWithParam<int> {};

TEST_P(ProjectionAxioms, HoldOnRandomVectors) {
  const ExposureSet sets[] = {
      FullSpace{}, NonnegativeOrthant{},
      Box{(Vector(4) << -1.0, 0.0, -kUnbounded, 2.0).finished(),
          (Vector(4) << 1.0, 3.0, 0.5, 2.0).finished()}};
  const auto tally = testing::check_projection_axioms(sets[GetParam()], 4, 10'000, 100 + GetParam());
  EXPECT_EQ(tally.idempotence, 0);
  EXPECT_EQ(tally.nonexpansive, 0);
  EXPECT_EQ(tally.variational, 0);
  EXPECT_EQ(tally.pythagoras, 0);
}

INSTANTIATE_TEST_SUITE_P(SetKinds, ProjectionAxioms, ::testing::Values(0, 1, 2));

TEST(ConsumptionBand, ClampLevel) {
  const ConsumptionBand band{0.2, 1.0};
  EXPECT_EQ(band.clamp_level(2.0), 2.0);
  EXPECT_EQ(band.clamp_level(0.5), 1.0);
  EXPECT_EQ(band.clamp_level(10.0), 5.0);
  EXPECT_EQ(ConsumptionBand{}.clamp_level(1e-9), 1e-9);
  EXPECT_TRUE(ConsumptionBand{}.is_unconstrained());
  EXPECT_FALSE(band.is_unconstrained());
}

TEST(ConsumptionBand, ClampConsumption) {
  const ConsumptionBand band{0.2, 1.0};
  EXPECT_EQ(clamp_consumption(band, 0.5), 0.5);
  EXPECT_EQ(clamp_consumption(band, 2.0), 1.0);
  EXPECT_EQ(clamp_consumption(band, 0.1), 0.2);
}

TEST(ConsumptionBand, CheckRejectsInvalidBands) {
  EXPECT_THROW((ConsumptionBand{-0.1, 1.0}.check()), DomainError);
  EXPECT_THROW((ConsumptionBand{1.0, 1.0}.check()), DomainError);
  EXPECT_NO_THROW((ConsumptionBand{0.0, kUnbounded}.check()));
}

}  // namespace
}  // namespace ric
