#include "emosim/mind.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace emosim {

namespace {

constexpr std::array<std::string_view, kBehaviorCount> kBehaviorNames = {
    "Recover", "AvoidThreat", "AvoidWall", "SeekBeacon", "Social", "Wander", "Idle"};

// forward and turn are fractions of the ceiling; turn > 0 rotates CCW.
MotorCommand steer(double ceiling, double forward, double turn) {
  return {ceiling * std::clamp(forward - turn, -1.0, 1.0),
          ceiling * std::clamp(forward + turn, -1.0, 1.0)};
}

double turn_toward(double bearing, double span) { return std::clamp(bearing / span, -1.0, 1.0); }

}  // namespace

std::string_view to_string(Behavior behavior) {
  return kBehaviorNames[static_cast<std::size_t>(behavior)];
}

bool idle_gate(const EmotionalState& state, const TemperamentProfile& profile,
               const MindThresholds& thresholds) {
  const PadVector& e = state.current();
  return e.pleasure > thresholds.comfort &&
         profile.mobility.defuzzify() < thresholds.idle_mobility && e.arousal < 0.0;
}

double social_turn(const SensorReadings& readings, SocialGroup group,
                   const MindThresholds& thresholds) {
  if (readings.vision.empty()) return 0.0;

  if (group == SocialGroup::Extravert) {
    const VisionEntry* target = nullptr;
    bool target_friendly = false;
    for (const auto& v : readings.vision) {
      const bool friendly = BeliefBase::is_friend(v.label);
      if (target == nullptr || (friendly && !target_friendly) ||
          (friendly == target_friendly && v.distance < target->distance)) {
        target = &v;
        target_friendly = friendly;
      }
    }
    const double t = turn_toward(target->bearing, thresholds.steer_span);
    return t != 0.0 ? t : 1e-3;
  }

  // Introverts: head opposite to the inverse-distance-weighted crowd direction.
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& v : readings.vision) {
    const double w = 1.0 / std::max(v.distance, 1e-3);
    sx += w * std::cos(v.bearing);
    sy += w * std::sin(v.bearing);
  }
  const double away = std::atan2(-sy, -sx);
  const double t = turn_toward(away, thresholds.steer_span);
  return t != 0.0 ? t : -1e-3;
}

Decision decide(const SensorReadings& readings, const EmotionalState& state,
                const TemperamentProfile& profile, const MindMemory& memory,
                const MindThresholds& thresholds, const TemperamentConfig& temperament) {
  const double ceiling = actuation_limits(profile, temperament).motor_ceiling;
  Decision out{{}, memory};

  // 1. Collision recovery: back off in an arc toward the freer side.
  if (readings.collision || memory.recover_remaining > 0) {
    if (readings.collision) {
      out.memory.recover_remaining = thresholds.recover_cycles;
      out.memory.recover_turn_left = readings.left >= readings.right;
    }
    if (out.memory.recover_remaining > 0) --out.memory.recover_remaining;
    const double turn = out.memory.recover_turn_left ? 0.25 : -0.25;
    out.verdict = {Behavior::Recover, steer(ceiling, -0.5, turn)};
    return out;
  }

  // 2. Threats: flee from the nearest hostile agent inside the danger radius.
  const VisionEntry* threat = nullptr;
  for (const auto& v : readings.vision) {
    if (!BeliefBase::is_threat(v.label) || v.distance > thresholds.danger_radius) continue;
    if (threat == nullptr || v.distance < threat->distance) threat = &v;
  }
  if (threat != nullptr) {
    const double turn = threat->bearing >= 0.0 ? -1.0 : 1.0;
    out.verdict = {Behavior::AvoidThreat, steer(ceiling, 0.5, turn)};
    return out;
  }

  // 3. Walls: turn away from the closest reading.
  const double nearest = std::min({readings.front, readings.left, readings.right});
  if (nearest < thresholds.wall_avoid) {
    MotorCommand cmd;
    if (readings.front <= readings.left && readings.front <= readings.right) {
      cmd = steer(ceiling, 0.1, readings.left >= readings.right ? 0.9 : -0.9);
    } else if (readings.left < readings.right) {
      cmd = steer(ceiling, 0.6, -0.6);
    } else {
      cmd = steer(ceiling, 0.6, 0.6);
    }
    out.verdict = {Behavior::AvoidWall, cmd};
    return out;
  }

  // 4. Temperamental social need.
  const bool need_met = social_need_met(readings, profile.group, thresholds.social_radius);
  if (!need_met && !readings.vision.empty()) {
    const double turn = social_turn(readings, profile.group, thresholds);
    out.verdict = {Behavior::Social, steer(ceiling, 1.0 - 0.5 * std::abs(turn), turn)};
    return out;
  }

  // 5. Beacon.
  if (readings.beacon_bearing) {
    const double turn = turn_toward(*readings.beacon_bearing, thresholds.steer_span);
    out.verdict = {Behavior::SeekBeacon, steer(ceiling, 1.0, turn)};
    return out;
  }

  // 6. No goal in sight. Extraverts follow the nearest friendly robot, or turn
  // on the spot to look for company when lonely; others wander, or settle
  // when comfortable and inert.
  const bool extravert = profile.group == SocialGroup::Extravert;
  const VisionEntry* friend_in_view = nullptr;
  if (extravert) {
    for (const auto& v : readings.vision) {
      if (!BeliefBase::is_friend(v.label)) continue;
      if (friend_in_view == nullptr || v.distance < friend_in_view->distance) friend_in_view = &v;
    }
  }
  if (idle_gate(state, profile, thresholds)) {
    out.verdict = {Behavior::Idle, MotorCommand{}};
  } else if (friend_in_view != nullptr) {
    const double turn = turn_toward(friend_in_view->bearing, thresholds.steer_span);
    const double gap = friend_in_view->distance / thresholds.social_radius;
    out.verdict = {Behavior::Social, steer(ceiling, std::clamp(gap - 0.5, 0.0, 1.0), turn)};
  } else if (extravert && !need_met) {
    out.verdict = {Behavior::Social, steer(ceiling, 0.0, thresholds.search_turn)};
  } else {
    out.verdict = {Behavior::Wander, steer(ceiling, 1.0, 0.0)};
  }
  return out;
}

AgentController::AgentController(TemperamentProfile profile, AgentParams params)
    : profile_(profile),
      params_(params),
      emotion_(PadVector{}, params.history_stride) {}

AgentOutput AgentController::step(const SensorReadings& readings, std::uint64_t cycle) {
  const auto events = encode_events(readings, profile_, flags_, params_.encoding);
  emotion_ = step_emotion(std::move(emotion_), events, profile_, cycle, params_.gains,
                          params_.temperament);
  flags_.beacon_was_visible = beacon_visible(readings, params_.encoding);

  profile_ = stress_update(profile_, count_stress_events(events, params_.encoding),
                           emotion_.current().arousal, 1, params_.temperament);

  const auto decision =
      decide(readings, emotion_, profile_, memory_, params_.mind, params_.temperament);
  memory_ = decision.memory;

  const auto limits = actuation_limits(profile_, params_.temperament);
  return {decision.verdict.command, emotion_.current(), limits.motor_ceiling,
          limits.sensor_reach, decision.verdict.behavior};
}

}  // namespace emosim
