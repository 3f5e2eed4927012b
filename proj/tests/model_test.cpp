#include "nomamec/model.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace nomamec {
namespace {

const SystemParams kReference{15.0, 5.0, 1.0, 1.0};

TEST(DeriveConstants, ReferenceSetting) {
  const DerivedConstants k = derive_constants(kReference);
  // e^3 - 1 and the threshold formulas, evaluated at 40 digits.
  EXPECT_NEAR(k.p_m, 19.08553692318766774, 1e-12);
  EXPECT_NEAR(k.e1, 95.42768461593833870, 1e-11);
  EXPECT_NEAR(k.e2, 1916.716282847737274, 1e-9);
  EXPECT_DOUBLE_EQ(k.e_oma_min, 15.0);
  EXPECT_NEAR(k.mu_lb(500.0), 0.03817107384637533548, 1e-15);
}

TEST(DeriveConstants, UserMPowerMeetsDeadline) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const SystemParams p = testing::random_params(rng);
    const DerivedConstants k = derive_constants(p);
    EXPECT_LT(testing::rel_diff(p.d_m * std::log1p(k.p_m * p.h_m_sq), p.n_nats), 1e-12);
    EXPECT_LT(testing::rel_diff(k.p_m * p.h_m_sq + 1.0, k.growth), 1e-12);
  }
}

TEST(DeriveConstants, ThresholdsAreOrdered) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const DerivedConstants k = derive_constants(testing::random_params(rng));
    EXPECT_LT(k.e_oma_min, k.e1);
    EXPECT_LT(k.e1, k.e2);
  }
}

TEST(DeriveConstants, ThresholdsCollapseForShortTasks) {
  const SystemParams p{1e-6, 1.0, 1.0, 2.0};
  const DerivedConstants k = derive_constants(p);
  EXPECT_NEAR(k.e1 / k.e_oma_min, 1.0, 1e-6);
  EXPECT_NEAR(k.e2 / k.e1, 1.0, 1e-5);
}

TEST(DeriveConstants, OverflowIsARangeError) {
  EXPECT_THROW(derive_constants({1e4, 1.0, 1.0, 1.0}), RangeError);
}

TEST(SystemParams, RejectsNonPositiveFields) {
  EXPECT_THROW((SystemParams{0.0, 5.0, 1.0, 1.0}.validate()), InvalidInput);
  EXPECT_THROW((SystemParams{15.0, -1.0, 1.0, 1.0}.validate()), InvalidInput);
  EXPECT_THROW((SystemParams{15.0, 5.0, NAN, 1.0}.validate()), InvalidInput);
  try {
    SystemParams{15.0, 5.0, 1.0, 0.0}.validate();
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("h_n_sq"), std::string::npos);
  }
}

TEST(ClassifyRegime, Examples) {
  const Scenario s(kReference);
  EXPECT_EQ(classify_regime(s, 2000.0), EnergyRegime::PureNoma);
  EXPECT_EQ(classify_regime(s, 50.0), EnergyRegime::OmaOnly);
  EXPECT_EQ(classify_regime(s, 500.0), EnergyRegime::Hybrid);
  EXPECT_EQ(classify_regime(s, 0.0), EnergyRegime::Infeasible);
  EXPECT_EQ(classify_regime(s, 14.999), EnergyRegime::Infeasible);
}

TEST(ClassifyRegime, BoundaryConvention) {
  const Scenario s(kReference);
  const DerivedConstants& k = s.constants();
  EXPECT_EQ(classify_regime(s, k.e_oma_min), EnergyRegime::OmaOnly);
  EXPECT_EQ(classify_regime(s, k.e1), EnergyRegime::OmaOnly);
  EXPECT_EQ(classify_regime(s, std::nextafter(k.e1, 1e9)), EnergyRegime::Hybrid);
  EXPECT_EQ(classify_regime(s, std::nextafter(k.e2, 0.0)), EnergyRegime::Hybrid);
  EXPECT_EQ(classify_regime(s, k.e2), EnergyRegime::PureNoma);
}

TEST(ClassifyRegime, RejectsNegativeEnergy) {
  const Scenario s(kReference);
  EXPECT_THROW(classify_regime(s, -1.0), InvalidInput);
  EXPECT_THROW(classify_regime(s, NAN), InvalidInput);
}

TEST(ClassifyRegime, PartitionIsMonotoneInEnergy) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10000; ++i) {
    const Scenario s(testing::random_params(rng));
    const double e2 = s.constants().e2;
    const double a = testing::uniform(rng, 0.0, 1.5 * e2);
    const double b = testing::uniform(rng, 0.0, 1.5 * e2);
    const auto ra = classify_regime(s, std::min(a, b));
    const auto rb = classify_regime(s, std::max(a, b));
    EXPECT_LE(static_cast<int>(ra), static_cast<int>(rb));
  }
}

TEST(ClassifyRegime, PureNomaThresholdMeetsTaskExactly) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) {
    const Scenario s(testing::random_params(rng));
    const double e2 = s.constants().e2;
    ASSERT_EQ(classify_regime(s, e2), EnergyRegime::PureNoma);
    const double delivered = s.noma_phase_nats(e2 / s.d_m());
    EXPECT_LT(testing::rel_diff(delivered, s.n_nats()), 1e-9);
  }
}

TEST(DedicatedSlot, MatchesDefinition) {
  const Scenario s(kReference);
  // No NOMA-phase power: plain OMA slot.
  EXPECT_DOUBLE_EQ(dedicated_slot_length(s, 0.0, std::exp(1.0) - 1.0), 15.0);
  // Enough NOMA-phase power to finish within D_m.
  EXPECT_EQ(dedicated_slot_length(s, 2000.0 / 5.0, 1.0), 0.0);
  EXPECT_TRUE(std::isinf(dedicated_slot_length(s, 1.0, 0.0)));
}

}  // namespace
}  // namespace nomamec
