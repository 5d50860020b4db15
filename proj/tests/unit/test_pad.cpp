#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "emosim/errors.hpp"
#include "emosim/pad.hpp"

using namespace emosim;

namespace {

void expect_pad(const PadVector& v, double p, double a, double d) {
  EXPECT_DOUBLE_EQ(v.pleasure, p);
  EXPECT_DOUBLE_EQ(v.arousal, a);
  EXPECT_DOUBLE_EQ(v.dominance, d);
}

PadVector random_pad(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(rng), u(rng), u(rng)};
}

}  // namespace

TEST(OctantLabel, ExamplePoints) {
  EXPECT_EQ(octant_label({0.5, 0.5, 0.5}), EmotionLabel::Exuberant);
  EXPECT_EQ(octant_label({0.0, 0.0, 0.0}), EmotionLabel::Exuberant);
  EXPECT_EQ(octant_label({-0.3, 0.7, 0.2}), EmotionLabel::Hostile);
}

TEST(OctantLabel, EachDiagonalPair) {
  EXPECT_EQ(octant_label({-0.5, -0.5, -0.5}), EmotionLabel::Bored);
  EXPECT_EQ(octant_label({0.5, 0.5, -0.5}), EmotionLabel::Dependent);
  EXPECT_EQ(octant_label({-0.5, -0.5, 0.5}), EmotionLabel::Disdainful);
  EXPECT_EQ(octant_label({0.5, -0.5, 0.5}), EmotionLabel::Relaxed);
  EXPECT_EQ(octant_label({-0.5, 0.5, -0.5}), EmotionLabel::Anxious);
  EXPECT_EQ(octant_label({0.5, -0.5, -0.5}), EmotionLabel::Docile);
  EXPECT_EQ(octant_label({-0.5, 0.5, 0.5}), EmotionLabel::Hostile);
}

TEST(OctantLabel, BijectiveOverSignCube) {
  std::set<EmotionLabel> seen;
  for (double p : {-0.5, 0.5})
    for (double a : {-0.5, 0.5})
      for (double d : {-0.5, 0.5}) seen.insert(octant_label({p, a, d}));
  EXPECT_EQ(seen.size(), kEmotionLabelCount);
}

TEST(OctantLabel, DependsOnlyOnSigns) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto v = random_pad(rng);
    const PadVector signs{v.pleasure >= 0 ? 0.5 : -0.5, v.arousal >= 0 ? 0.5 : -0.5,
                          v.dominance >= 0 ? 0.5 : -0.5};
    EXPECT_EQ(octant_label(v), octant_label(signs));
  }
}

TEST(OctantLabel, NamesRoundTrip) {
  for (std::size_t i = 0; i < kEmotionLabelCount; ++i) {
    const auto label = static_cast<EmotionLabel>(i);
    EXPECT_EQ(parse_emotion_label(to_string(label)), label);
  }
  EXPECT_FALSE(parse_emotion_label("Happy").has_value());
}

TEST(BigFive, PleasureColumn) {
  const auto b = big_five_from_pad({1, 0, 0});
  EXPECT_NEAR(b.extraversion, 0.24, 1e-12);
  EXPECT_NEAR(b.agreeableness, 0.76, 1e-12);
  EXPECT_NEAR(b.conscientiousness, 0.29, 1e-12);
  EXPECT_NEAR(b.emotional_stability, 0.50, 1e-12);
  EXPECT_NEAR(b.sophistication, 0.00, 1e-12);
}

TEST(BigFive, Origin) { EXPECT_EQ(big_five_from_pad({}), BigFiveScores{}); }

TEST(BigFive, ArousalPlusDominance) {
  const auto b = big_five_from_pad({0, 1, 1});
  EXPECT_NEAR(b.extraversion, 0.72, 1e-12);
  EXPECT_NEAR(b.agreeableness, -0.02, 1e-12);
  EXPECT_NEAR(b.conscientiousness, 0.28, 1e-12);
  EXPECT_NEAR(b.emotional_stability, -0.55, 1e-12);
  EXPECT_NEAR(b.sophistication, 0.88, 1e-12);
}

TEST(BigFive, LinearInScale) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto v = random_pad(rng);
    const double s = unit(rng);
    const auto lhs = big_five_from_pad(s * v);
    const auto rhs = big_five_from_pad(v);
    EXPECT_NEAR(lhs.extraversion, s * rhs.extraversion, 1e-9);
    EXPECT_NEAR(lhs.agreeableness, s * rhs.agreeableness, 1e-9);
    EXPECT_NEAR(lhs.conscientiousness, s * rhs.conscientiousness, 1e-9);
    EXPECT_NEAR(lhs.emotional_stability, s * rhs.emotional_stability, 1e-9);
    EXPECT_NEAR(lhs.sophistication, s * rhs.sophistication, 1e-9);
  }
}

TEST(BigFive, BoundedByCoefficientMass) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const auto b = big_five_from_pad(random_pad(rng));
    EXPECT_LE(std::abs(b.extraversion), 0.96 + 1e-12);
    EXPECT_LE(std::abs(b.agreeableness), 1.12 + 1e-12);
    EXPECT_LE(std::abs(b.conscientiousness), 0.57 + 1e-12);
    EXPECT_LE(std::abs(b.emotional_stability), 1.05 + 1e-12);
    EXPECT_LE(std::abs(b.sophistication), 0.88 + 1e-12);
  }
}

TEST(Integrate, EmptySum) {
  const auto e = integrate_appraisals(EmotionalState{}, {}, 1);
  expect_pad(e.current(), 0, 0, 0);
}

TEST(Integrate, DirectSummation) {
  const std::vector<PadVector> deltas{{0.05, 0, 0}, {0, -0.1, 0}};
  const auto e = integrate_appraisals(EmotionalState({0.1, 0.2, 0.3}), deltas, 1);
  EXPECT_NEAR(e.current().pleasure, 0.15, 1e-15);
  EXPECT_NEAR(e.current().arousal, 0.1, 1e-15);
  EXPECT_NEAR(e.current().dominance, 0.3, 1e-15);
}

TEST(Integrate, ClampsAtUpperBound) {
  const std::vector<PadVector> deltas{{0.5, 0, 0}};
  const auto e = integrate_appraisals(EmotionalState({0.9, 0, 0}), deltas, 1);
  expect_pad(e.current(), 1.0, 0, 0);
}

TEST(Integrate, RejectsNonIncreasingCycle) {
  auto e = integrate_appraisals(EmotionalState{}, {}, 5);
  EXPECT_THROW(e.integrate({}, 5), OrderingError);
  EXPECT_THROW(e.integrate({}, 4), OrderingError);
  EXPECT_NO_THROW(e.integrate({}, 6));
}

TEST(Integrate, EmptyDeltasNeverChangeState) {
  std::mt19937_64 rng(3);
  EmotionalState e(random_pad(rng));
  const auto before = e.current();
  for (std::uint64_t c = 1; c < 50; ++c) e.integrate({}, c);
  EXPECT_EQ(e.current(), before);
}

TEST(Integrate, HistoryBoundedAndOrdered) {
  std::mt19937_64 rng(4);
  EmotionalState e;
  for (std::uint64_t c = 0; c < 5000; ++c) {
    const std::vector<PadVector> deltas{random_pad(rng, -0.7, 0.7), random_pad(rng, -0.7, 0.7)};
    e.integrate(deltas, c * 2 + 1);
  }
  ASSERT_FALSE(e.history().empty());
  EXPECT_EQ(e.history().back().pad, e.current());
  for (std::size_t i = 0; i < e.history().size(); ++i) {
    EXPECT_TRUE(is_valid(e.history()[i].pad));
    if (i > 0) EXPECT_GT(e.history()[i].cycle, e.history()[i - 1].cycle);
  }
}

TEST(Integrate, StrideKeepsMultiplesAndLatest) {
  EmotionalState e({}, 10);
  const std::vector<PadVector> step{{0.001, 0, 0}};
  for (std::uint64_t c = 0; c <= 25; ++c) e.integrate(step, c);
  std::vector<std::uint64_t> cycles;
  for (const auto& s : e.history()) cycles.push_back(s.cycle);
  EXPECT_EQ(cycles, (std::vector<std::uint64_t>{0, 10, 20, 25}));
  EXPECT_EQ(e.history().back().pad, e.current());
}

TEST(Report, ScalesByTen) {
  EXPECT_EQ(scale_for_report({1, -1, 0}), (ReportedPad{10, -10, 0}));
  EXPECT_EQ(scale_for_report({0, 0, 0}), (ReportedPad{0, 0, 0}));
  EXPECT_EQ(scale_for_report({0.25, 0.5, -0.75}), (ReportedPad{2.5, 5, -7.5}));
}

TEST(Clamp, SaturatesEachComponent) {
  expect_pad(clamp({2, -3, 0.5}), 1, -1, 0.5);
  EXPECT_FALSE(is_valid({1.0001, 0, 0}));
  EXPECT_FALSE(is_valid({std::nan(""), 0, 0}));
  EXPECT_TRUE(is_valid({-1, 1, 0}));
}
