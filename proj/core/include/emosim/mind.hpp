#pragma once

// Decision layer: fixed-priority behavior arbitration, plus the per-agent
// controller that runs both emotional layers and the arbiter each cycle.

#include <cstdint>
#include <string_view>

#include "emosim/appraisal.hpp"
#include "emosim/pad.hpp"
#include "emosim/temperament.hpp"
#include "emosim/world.hpp"

namespace emosim {

enum class Behavior : std::uint8_t { Recover, AvoidThreat, AvoidWall, SeekBeacon, Social, Wander, Idle };

inline constexpr std::size_t kBehaviorCount = 7;

std::string_view to_string(Behavior behavior);

struct BehaviorVerdict {
  Behavior behavior = Behavior::Idle;
  MotorCommand command;
  friend bool operator==(const BehaviorVerdict&, const BehaviorVerdict&) = default;
};

struct MindThresholds {
  double comfort = 0.5;         // pleasure above which an agent may settle
  double idle_mobility = 0.5;   // defuzzified mobility below which it may settle
  double danger_radius = 3.0;   // meters
  double wall_avoid = 0.3;      // normalized proximity
  double social_radius = 2.5;   // meters
  unsigned recover_cycles = 5;
  double steer_span = kPi / 4;  // bearing error that saturates the turn
  double search_turn = 0.5;     // spin rate of a lonely extravert with nobody in view
};

/// Arbitration state that must persist across cycles.
struct MindMemory {
  unsigned recover_remaining = 0;
  bool recover_turn_left = true;
  friend bool operator==(const MindMemory&, const MindMemory&) = default;
};

struct Decision {
  BehaviorVerdict verdict;
  MindMemory memory;
};

/// True when a comfortable, low-mobility, calm agent may stop.
bool idle_gate(const EmotionalState& state, const TemperamentProfile& profile,
               const MindThresholds& thresholds = {});

/// Turn command in [-1, 1] (positive = counter-clockwise) produced by the
/// social intention alone: extraverts turn toward the nearest friendly (or
/// any) visible robot, introverts away from everyone they see. Zero when
/// nothing is visible.
double social_turn(const SensorReadings& readings, SocialGroup group,
                   const MindThresholds& thresholds = {});

/// Fixed priority: Recover > AvoidThreat > AvoidWall > Social (need unmet)
/// > SeekBeacon > Idle > follow or search for company (extraverts) > Wander. Pure in all
/// arguments.
Decision decide(const SensorReadings& readings, const EmotionalState& state,
                const TemperamentProfile& profile, const MindMemory& memory,
                const MindThresholds& thresholds = {},
                const TemperamentConfig& temperament = {});

/// Everything an agent needs to know about its own model parameters.
struct AgentParams {
  TemperamentConfig temperament;
  AppraisalGains gains;
  EncodingThresholds encoding;
  MindThresholds mind;
  std::uint32_t history_stride = 1;
};

/// What an agent reports to the simulator each cycle.
struct AgentOutput {
  MotorCommand command;
  PadVector pad;
  double motor_ceiling = 1.0;
  double sensor_reach = 1.0;
  Behavior behavior = Behavior::Idle;
  friend bool operator==(const AgentOutput&, const AgentOutput&) = default;
};

/// One robotic agent: temperament profile, emotional state and arbiter.
class AgentController {
 public:
  AgentController(TemperamentProfile profile, AgentParams params);

  /// Appraises `readings`, drifts the temperament under stress and decides.
  AgentOutput step(const SensorReadings& readings, std::uint64_t cycle);

  const TemperamentProfile& profile() const { return profile_; }
  const EmotionalState& emotion() const { return emotion_; }
  const MindMemory& memory() const { return memory_; }

 private:
  TemperamentProfile profile_;
  AgentParams params_;
  EmotionalState emotion_;
  MindMemory memory_;
  EncodingFlags flags_;
};

}  // namespace emosim
