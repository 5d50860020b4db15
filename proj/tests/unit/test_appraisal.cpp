#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "emosim/appraisal.hpp"

using namespace emosim;

namespace {

TemperamentProfile profile_of(TemperamentKind kind, double anxiety, double mobility = 0.5) {
  TemperamentProfile p;
  p.kind = kind;
  p.force = p.steadiness = {0.5, 0.5};
  p.mobility = {mobility, mobility};
  p.anxiety = anxiety;
  p.group = eysenck_group(kind).group;
  return p;
}

bool contains(const std::vector<AppraisalEvent>& events, EventKind kind) {
  return std::any_of(events.begin(), events.end(),
                     [kind](const AppraisalEvent& e) { return e.kind == kind; });
}

int sign(double x) { return (x > 0) - (x < 0); }

const std::vector<AppraisalEvent> kNone;

}  // namespace

TEST(Encode, CollisionIsPainful) {
  SensorReadings r;
  r.collision = true;
  const auto events = encode_events(r, profile_of(TemperamentKind::Sanguine, 0.3), {});
  const auto it = std::find_if(events.begin(), events.end(),
                               [](const auto& e) { return e.kind == EventKind::WallCollision; });
  ASSERT_NE(it, events.end());
  EXPECT_DOUBLE_EQ(it->intensity, 1.0);
}

TEST(Encode, LonelyIntrovertIsSatisfied) {
  const auto events = encode_events({}, profile_of(TemperamentKind::Melancholic, 0.8), {});
  EXPECT_TRUE(contains(events, EventKind::SocialNeedMet));
  EXPECT_FALSE(contains(events, EventKind::SocialNeedUnmet));
}

TEST(Encode, LonelyExtravertIsNot) {
  const auto events = encode_events({}, profile_of(TemperamentKind::Sanguine, 0.3), {});
  EXPECT_TRUE(contains(events, EventKind::SocialNeedUnmet));
}

TEST(Encode, HostileRobotIsAThreatAtItsBearing) {
  SensorReadings r;
  r.vision.push_back({0.3, 2.0, EmotionLabel::Hostile});
  const auto events = encode_events(r, profile_of(TemperamentKind::Sanguine, 0.3), {});
  const auto it = std::find_if(events.begin(), events.end(),
                               [](const auto& e) { return e.kind == EventKind::ThreatVisible; });
  ASSERT_NE(it, events.end());
  ASSERT_TRUE(it->source_bearing.has_value());
  EXPECT_DOUBLE_EQ(*it->source_bearing, 0.3);
  EXPECT_GT(it->intensity, 0.0);
  EXPECT_LE(it->intensity, 1.0);
}

TEST(Encode, PositivePleasureLabelsAreFriends) {
  for (std::size_t i = 0; i < kEmotionLabelCount; ++i) {
    const auto label = static_cast<EmotionLabel>(i);
    SensorReadings r;
    r.vision.push_back({0.0, 1.0, label});
    const auto events = encode_events(r, profile_of(TemperamentKind::Sanguine, 0.3), {});
    const bool positive = i == static_cast<std::size_t>(EmotionLabel::Exuberant) ||
                          i == static_cast<std::size_t>(EmotionLabel::Dependent) ||
                          i == static_cast<std::size_t>(EmotionLabel::Relaxed) ||
                          i == static_cast<std::size_t>(EmotionLabel::Docile);
    EXPECT_EQ(contains(events, EventKind::FriendVisible), positive) << to_string(label);
    EXPECT_EQ(contains(events, EventKind::ThreatVisible), label == EmotionLabel::Hostile);
  }
}

TEST(Encode, WallAheadBelowThreshold) {
  SensorReadings r;
  r.front = 0.1;
  EXPECT_TRUE(contains(encode_events(r, profile_of(TemperamentKind::Sanguine, 0.3), {}),
                       EventKind::WallAhead));
  r.front = 0.9;
  EXPECT_FALSE(contains(encode_events(r, profile_of(TemperamentKind::Sanguine, 0.3), {}),
                        EventKind::WallAhead));
}

TEST(Encode, BeaconVisibilityUsesFrontOcclusion) {
  const auto p = profile_of(TemperamentKind::Sanguine, 0.3);
  SensorReadings r;
  r.beacon_bearing = 0.2;
  auto events = encode_events(r, p, {});
  EXPECT_TRUE(contains(events, EventKind::BeaconVisible));
  EXPECT_TRUE(contains(events, EventKind::ClearPathToGoal));
  r.beacon_bearing = 2.0;
  events = encode_events(r, p, {});
  EXPECT_TRUE(contains(events, EventKind::BeaconVisible));
  EXPECT_FALSE(contains(events, EventKind::ClearPathToGoal));
  r.front = 0.2;
  events = encode_events(r, p, {});
  EXPECT_FALSE(contains(events, EventKind::BeaconVisible));
  EXPECT_FALSE(contains(events, EventKind::GoalLost));
}

TEST(Encode, GoalLostIsAOneCycleEdge) {
  const auto p = profile_of(TemperamentKind::Sanguine, 0.3);
  SensorReadings hidden;
  hidden.beacon_bearing = 0.0;
  hidden.front = 0.1;
  EXPECT_TRUE(contains(encode_events(hidden, p, {true}), EventKind::GoalLost));
  EXPECT_FALSE(contains(encode_events(hidden, p, {false}), EventKind::GoalLost));
}

TEST(Encode, GroundMeansGoalReached) {
  SensorReadings r;
  r.ground = true;
  EXPECT_TRUE(contains(encode_events(r, profile_of(TemperamentKind::Sanguine, 0.3), {}),
                       EventKind::GoalReached));
}

TEST(Encode, NoBeaconNoBeaconEvents) {
  SensorReadings r;
  const auto events = encode_events(r, profile_of(TemperamentKind::Sanguine, 0.3), {true});
  EXPECT_FALSE(contains(events, EventKind::BeaconVisible));
  EXPECT_TRUE(contains(events, EventKind::GoalLost));
}

TEST(Survival, NoEventsNoDelta) { EXPECT_EQ(appraise_survival(kNone).delta, PadVector{}); }

TEST(Survival, ThreatDefaultGain) {
  const std::vector<AppraisalEvent> e{{EventKind::ThreatVisible, 1.0}};
  const auto r = appraise_survival(e);
  EXPECT_EQ(r.bank, BankId::Survival);
  EXPECT_DOUBLE_EQ(r.delta.pleasure, -0.05);
  EXPECT_DOUBLE_EQ(r.delta.arousal, 0.05);
  EXPECT_DOUBLE_EQ(r.delta.dominance, -0.05);
}

TEST(Survival, CollisionSigns) {
  const std::vector<AppraisalEvent> e{{EventKind::WallCollision, 1.0}};
  const auto r = appraise_survival(e);
  EXPECT_LT(r.delta.pleasure, 0.0);
  EXPECT_GT(r.delta.arousal, 0.0);
}

TEST(Survival, ScalesWithIntensityAndCaps) {
  const std::vector<AppraisalEvent> half{{EventKind::ThreatVisible, 0.5}};
  EXPECT_DOUBLE_EQ(appraise_survival(half).delta.pleasure, -0.025);
  const std::vector<AppraisalEvent> many(10, {EventKind::ThreatVisible, 1.0});
  const auto r = appraise_survival(many);
  EXPECT_DOUBLE_EQ(r.delta.pleasure, -0.1);
  EXPECT_DOUBLE_EQ(r.delta.arousal, 0.1);
}

TEST(Goal, WallAheadLowersDominance) {
  const std::vector<AppraisalEvent> e{{EventKind::WallAhead, 1.0}};
  EXPECT_LT(appraise_goal(e, profile_of(TemperamentKind::Sanguine, 0.3)).delta.dominance, 0.0);
}

TEST(Goal, ClearPathToVisibleBeacon) {
  const std::vector<AppraisalEvent> e{{EventKind::BeaconVisible, 1.0},
                                      {EventKind::ClearPathToGoal, 1.0}};
  const auto r = appraise_goal(e, profile_of(TemperamentKind::Sanguine, 0.3));
  EXPECT_GT(r.delta.pleasure, 0.0);
  EXPECT_GT(r.delta.dominance, 0.0);
}

TEST(Goal, NoEventsNoDelta) {
  EXPECT_EQ(appraise_goal(kNone, profile_of(TemperamentKind::Sanguine, 0.3)).delta, PadVector{});
}

TEST(Goal, GoalReachedIsFullStep) {
  const std::vector<AppraisalEvent> e{{EventKind::GoalReached, 1.0}};
  EXPECT_DOUBLE_EQ(appraise_goal(e, profile_of(TemperamentKind::Sanguine, 0.3)).delta.pleasure,
                   0.1);
}

TEST(Goal, LosingTheGoalNeedsNoAttention) {
  const std::vector<AppraisalEvent> e{{EventKind::GoalLost, 1.0}};
  const auto r = appraise_goal(e, profile_of(TemperamentKind::Sanguine, 0.3));
  EXPECT_LT(r.delta.pleasure, 0.0);
  EXPECT_EQ(r.delta.arousal, 0.0);
}

TEST(Goal, MobilityWeightsBeaconPleasure) {
  const std::vector<AppraisalEvent> e{{EventKind::BeaconVisible, 1.0}};
  const double inert = appraise_goal(e, profile_of(TemperamentKind::Sanguine, 0.3, 0.1)).delta.pleasure;
  const double mobile = appraise_goal(e, profile_of(TemperamentKind::Sanguine, 0.3, 0.9)).delta.pleasure;
  EXPECT_GT(mobile, inert);
}

TEST(Banks, EachEventBelongsToExactlyOneBank) {
  const auto p = profile_of(TemperamentKind::Sanguine, 0.3);
  for (std::size_t i = 0; i < kEventKindCount; ++i) {
    const auto kind = static_cast<EventKind>(i);
    const std::vector<AppraisalEvent> e{{kind, 1.0}};
    const auto s = appraise_survival(e).delta;
    const auto g = appraise_goal(e, p).delta;
    if (bank_of(kind) == BankId::Survival) {
      EXPECT_EQ(g, PadVector{}) << to_string(kind);
    } else {
      EXPECT_EQ(s, PadVector{}) << to_string(kind);
    }
  }
  EXPECT_EQ(bank_of(EventKind::ThreatVisible), BankId::Survival);
  EXPECT_EQ(bank_of(EventKind::WallCollision), BankId::Survival);
  EXPECT_EQ(bank_of(EventKind::SocialNeedMet), BankId::Goal);
}

TEST(Banks, SignTableIsExhaustiveAndObserved) {
  const std::vector<std::pair<EventKind, SignSignature>> table{
      {EventKind::BeaconVisible, {1, 0, 0}},    {EventKind::GoalLost, {-1, 0, 0}},
      {EventKind::ClearPathToGoal, {0, -1, 1}}, {EventKind::WallAhead, {0, 1, -1}},
      {EventKind::WallCollision, {-1, 1, 0}},   {EventKind::ThreatVisible, {-1, 1, -1}},
      {EventKind::FriendVisible, {0, 0, 0}},    {EventKind::SocialNeedMet, {1, -1, 0}},
      {EventKind::SocialNeedUnmet, {-1, 1, 0}}, {EventKind::GoalReached, {1, 0, 0}},
  };
  ASSERT_EQ(table.size(), kEventKindCount);
  const auto p = profile_of(TemperamentKind::Sanguine, 0.3);
  for (const auto& [kind, expected] : table) {
    EXPECT_EQ(sign_signature(kind), expected) << to_string(kind);
    const std::vector<AppraisalEvent> e{{kind, 1.0}};
    const auto d = bank_of(kind) == BankId::Survival ? appraise_survival(e).delta
                                                     : appraise_goal(e, p).delta;
    EXPECT_EQ(sign(d.pleasure), expected.pleasure) << to_string(kind);
    EXPECT_EQ(sign(d.arousal), expected.arousal) << to_string(kind);
    EXPECT_EQ(sign(d.dominance), expected.dominance) << to_string(kind);
  }
}

TEST(Modulate, AnxietyScalesPleasureOnly) {
  const auto p = profile_of(TemperamentKind::Melancholic, 0.8);
  const auto neg = modulate_delta({-0.1, 0.1, -0.1}, p);
  EXPECT_NEAR(neg.pleasure, -0.1 * 1.8 * 1.8, 1e-15);
  EXPECT_NEAR(neg.arousal, 0.1 * 1.8, 1e-15);
  EXPECT_NEAR(neg.dominance, -0.1 * 1.8, 1e-15);
  const auto pos = modulate_delta({0.1, 0, 0}, p);
  EXPECT_NEAR(pos.pleasure, 0.1 * 0.6 * 1.8, 1e-15);
}

TEST(StepEmotion, NoEventsLeavesStateUnchanged) {
  const auto p = profile_of(TemperamentKind::Sanguine, 0.3);
  EmotionalState e({0.2, -0.1, 0.4});
  e = step_emotion(e, kNone, p, 1);
  EXPECT_EQ(e.current(), (PadVector{0.2, -0.1, 0.4}));
}

TEST(StepEmotion, ZeroAnxietyIsNeutralForPleasure) {
  auto p = profile_of(TemperamentKind::Sanguine, 0.0);
  const std::vector<AppraisalEvent> e{{EventKind::BeaconVisible, 1.0}};
  const auto next = step_emotion(EmotionalState{}, e, p, 1);
  EXPECT_DOUBLE_EQ(next.current().pleasure, appraise_goal(e, p).delta.pleasure);
}

TEST(StepEmotion, AnxiousAgentSuffersThreatsFaster) {
  const auto anxious = profile_of(TemperamentKind::Melancholic, 0.8);
  auto calm = anxious;
  calm.anxiety = 0.1;
  const std::vector<AppraisalEvent> e{{EventKind::ThreatVisible, 1.0}};
  const auto a = step_emotion(EmotionalState{}, e, anxious, 1);
  const auto c = step_emotion(EmotionalState{}, e, calm, 1);
  EXPECT_LT(a.current().pleasure, c.current().pleasure);
  EXPECT_LT(a.current().pleasure, 0.0);
}

TEST(StepEmotion, TrajectoriesDivergeAfterFirstNegativeEvent) {
  const auto a = profile_of(TemperamentKind::Sanguine, 0.2);
  auto b = a;
  b.anxiety = 0.6;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, kEventKindCount - 1);
  EmotionalState ea, eb;
  bool negative_seen = false;
  for (std::uint64_t c = 1; c <= 200; ++c) {
    std::vector<AppraisalEvent> events{{static_cast<EventKind>(pick(rng)), 1.0}};
    ea = step_emotion(ea, events, a, c);
    eb = step_emotion(eb, events, b, c);
    const auto s = sign_signature(events.front().kind);
    if (s.pleasure < 0 && !negative_seen) {
      negative_seen = true;
      EXPECT_NE(ea.current().pleasure, eb.current().pleasure);
    }
  }
  EXPECT_TRUE(negative_seen);
}

TEST(StepEmotion, PropagatesOrderingError) {
  const auto p = profile_of(TemperamentKind::Sanguine, 0.3);
  auto e = step_emotion(EmotionalState{}, kNone, p, 3);
  EXPECT_ANY_THROW(step_emotion(e, kNone, p, 3));
}

TEST(StepEmotion, BoundedUnderRandomStreams) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> pick(0, kEventKindCount - 1);
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto kind : kAllTemperaments) {
    auto p = sample_profile(kind, rng);
    EmotionalState e;
    for (std::uint64_t c = 1; c <= 20000; ++c) {
      std::vector<AppraisalEvent> events;
      for (int k = count(rng); k > 0; --k)
        events.push_back({static_cast<EventKind>(pick(rng)), unit(rng)});
      e = step_emotion(std::move(e), events, p, c);
      ASSERT_TRUE(is_valid(e.current()));
    }
  }
}

TEST(Stress, CountsCollisionsAndNearThreats) {
  const std::vector<AppraisalEvent> e{{EventKind::WallCollision, 1.0},
                                      {EventKind::ThreatVisible, 0.8, 0.0, 1.0},
                                      {EventKind::ThreatVisible, 0.2, 0.0, 4.0},
                                      {EventKind::WallAhead, 1.0}};
  EXPECT_EQ(count_stress_events(e), 2u);
}

TEST(Beliefs, RulesAreTheFixedSet) {
  EXPECT_EQ(BeliefBase::beliefs.size(), 3u);
  EXPECT_EQ(BeliefBase::intentions[2], "follow happy agents");
  EXPECT_TRUE(BeliefBase::is_threat(EmotionLabel::Hostile));
  EXPECT_FALSE(BeliefBase::is_threat(EmotionLabel::Anxious));
}
