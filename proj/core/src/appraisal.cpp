#include "emosim/appraisal.hpp"

#include <algorithm>
#include <cmath>

namespace emosim {

namespace {

constexpr std::array<std::string_view, kEventKindCount> kEventNames = {
    "BeaconVisible", "GoalLost",      "ClearPathToGoal", "WallAhead",
    "WallCollision", "ThreatVisible", "FriendVisible",   "SocialNeedMet",
    "SocialNeedUnmet", "GoalReached",
};

PadVector cap(const PadVector& v, double max_step) { return clamp(v, -max_step, max_step); }

PadVector contribution(const AppraisalEvent& e, double magnitude) {
  const auto sig = sign_signature(e.kind);
  const double m = magnitude * std::clamp(e.intensity, 0.0, 1.0);
  return {sig.pleasure * m, sig.arousal * m, sig.dominance * m};
}

}  // namespace

std::string_view to_string(EventKind kind) {
  return kEventNames[static_cast<std::size_t>(kind)];
}

BankId bank_of(EventKind kind) {
  switch (kind) {
    case EventKind::WallCollision:
    case EventKind::ThreatVisible:
      return BankId::Survival;
    default:
      return BankId::Goal;
  }
}

SignSignature sign_signature(EventKind kind) {
  switch (kind) {
    case EventKind::BeaconVisible: return {+1, 0, 0};
    case EventKind::GoalLost: return {-1, 0, 0};  // losing the goal needs no attention
    case EventKind::ClearPathToGoal: return {0, -1, +1};
    case EventKind::WallAhead: return {0, +1, -1};
    case EventKind::WallCollision: return {-1, +1, 0};
    case EventKind::ThreatVisible: return {-1, +1, -1};
    case EventKind::FriendVisible: return {0, 0, 0};
    case EventKind::SocialNeedMet: return {+1, -1, 0};
    case EventKind::SocialNeedUnmet: return {-1, +1, 0};
    case EventKind::GoalReached: return {+1, 0, 0};
  }
  return {};
}

bool BeliefBase::is_friend(EmotionLabel label) {
  return label == EmotionLabel::Exuberant || label == EmotionLabel::Dependent ||
         label == EmotionLabel::Relaxed || label == EmotionLabel::Docile;
}

bool beacon_visible(const SensorReadings& readings, const EncodingThresholds& thresholds) {
  return readings.beacon_bearing.has_value() && readings.front >= thresholds.goal_occlusion;
}

bool social_need_met(const SensorReadings& readings, SocialGroup group,
                     double social_radius) {
  const auto company = std::count_if(readings.vision.begin(), readings.vision.end(),
                                     [&](const VisionEntry& v) { return v.distance <= social_radius; });
  return group == SocialGroup::Extravert ? company > 0 : company == 0;
}

std::vector<AppraisalEvent> encode_events(const SensorReadings& readings,
                                          const TemperamentProfile& profile,
                                          const EncodingFlags& flags,
                                          const EncodingThresholds& thresholds) {
  std::vector<AppraisalEvent> events;

  for (const auto& seen : readings.vision) {
    if (BeliefBase::is_threat(seen.label)) {
      const double intensity =
          std::clamp(1.0 - seen.distance / thresholds.vision_range, 0.0, 1.0);
      events.push_back({EventKind::ThreatVisible, intensity, seen.bearing, seen.distance});
    } else if (BeliefBase::is_friend(seen.label)) {
      events.push_back({EventKind::FriendVisible, 1.0, seen.bearing, seen.distance});
    }
  }

  if (readings.front < thresholds.wall_ahead) {
    const double intensity = std::clamp(1.0 - readings.front / thresholds.wall_ahead, 0.0, 1.0);
    events.push_back({EventKind::WallAhead, intensity, 0.0, std::nullopt});
  }
  if (readings.collision) events.push_back({EventKind::WallCollision, 1.0, {}, {}});

  const bool visible = beacon_visible(readings, thresholds);
  if (visible) {
    events.push_back({EventKind::BeaconVisible, 1.0, readings.beacon_bearing, {}});
    if (std::abs(*readings.beacon_bearing) <= thresholds.clear_path_cone)
      events.push_back({EventKind::ClearPathToGoal, 1.0, readings.beacon_bearing, {}});
  } else if (flags.beacon_was_visible) {
    events.push_back({EventKind::GoalLost, 1.0, {}, {}});
  }

  const bool met = social_need_met(readings, profile.group, thresholds.social_radius);
  events.push_back({met ? EventKind::SocialNeedMet : EventKind::SocialNeedUnmet, 1.0, {}, {}});

  if (readings.ground) events.push_back({EventKind::GoalReached, 1.0, {}, {}});
  return events;
}

AppraisalResult appraise_survival(std::span<const AppraisalEvent> events,
                                  const AppraisalGains& gains, double threat_gain) {
  PadVector sum;
  for (const auto& e : events) {
    if (bank_of(e.kind) != BankId::Survival) continue;
    double m = gains.magnitude(e.kind);
    if (e.kind == EventKind::ThreatVisible) m *= threat_gain;
    sum += contribution(e, m);
  }
  return {BankId::Survival, cap(sum, gains.max_step)};
}

AppraisalResult appraise_goal(std::span<const AppraisalEvent> events,
                              const TemperamentProfile& profile, const AppraisalGains& gains) {
  const double persistence = 0.5 + std::clamp(profile.mobility.value, 0.0, 1.0);
  PadVector sum;
  for (const auto& e : events) {
    if (bank_of(e.kind) != BankId::Goal) continue;
    double m = gains.magnitude(e.kind);
    switch (e.kind) {
      case EventKind::GoalReached: m = gains.max_step; break;
      case EventKind::BeaconVisible:
      case EventKind::GoalLost: m *= persistence; break;
      default: break;
    }
    sum += contribution(e, m);
  }
  return {BankId::Goal, cap(sum, gains.max_step)};
}

PadVector modulate_delta(const PadVector& delta, const TemperamentProfile& profile,
                         const TemperamentConfig& config) {
  const double rate = actuation_limits(profile, config).emotional_rate;
  PadVector out = delta;
  out.pleasure *= delta.pleasure < 0.0 ? 1.0 + profile.anxiety : 1.0 - 0.5 * profile.anxiety;
  return rate * out;
}

EmotionalState step_emotion(EmotionalState state, std::span<const AppraisalEvent> events,
                            const TemperamentProfile& profile, std::uint64_t cycle,
                            const AppraisalGains& gains, const TemperamentConfig& config) {
  const double threat_gain =
      pavlov_traits(profile.kind).excitation_dominant ? gains.excitation_threat_gain : 1.0;
  const std::array<PadVector, 2> deltas = {
      modulate_delta(appraise_survival(events, gains, threat_gain).delta, profile, config),
      modulate_delta(appraise_goal(events, profile, gains).delta, profile, config),
  };
  state.integrate(deltas, cycle);
  return state;
}

unsigned count_stress_events(std::span<const AppraisalEvent> events,
                             const EncodingThresholds& thresholds) {
  unsigned n = 0;
  for (const auto& e : events) {
    if (e.kind == EventKind::WallCollision) ++n;
    if (e.kind == EventKind::ThreatVisible && e.source_distance &&
        *e.source_distance <= thresholds.danger_radius)
      ++n;
  }
  return n;
}

}  // namespace emosim
