#pragma once

// Psychical layer: percepts are encoded as events with emotional meaning,
// evaluated by a survival bank and a goal/temperamental-needs bank, and the
// resulting PAD deltas are integrated into the emotional state.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "emosim/pad.hpp"
#include "emosim/temperament.hpp"
#include "emosim/world.hpp"

namespace emosim {

enum class EventKind : std::uint8_t {
  BeaconVisible,
  GoalLost,
  ClearPathToGoal,
  WallAhead,
  WallCollision,
  ThreatVisible,
  FriendVisible,
  SocialNeedMet,
  SocialNeedUnmet,
  GoalReached,
};

inline constexpr std::size_t kEventKindCount = 10;

std::string_view to_string(EventKind kind);

struct AppraisalEvent {
  EventKind kind = EventKind::BeaconVisible;
  double intensity = 1.0;  // [0, 1]
  std::optional<double> source_bearing;
  std::optional<double> source_distance;

  friend bool operator==(const AppraisalEvent&, const AppraisalEvent&) = default;
};

enum class BankId : std::uint8_t { Survival, Goal };

struct AppraisalResult {
  BankId bank = BankId::Survival;
  PadVector delta;
};

/// Sign signature of one event kind: each entry is -1, 0 or +1.
struct SignSignature {
  int pleasure = 0;
  int arousal = 0;
  int dominance = 0;
  friend bool operator==(const SignSignature&, const SignSignature&) = default;
};

/// Which bank evaluates an event kind.
BankId bank_of(EventKind kind);

/// Fixed PAD sign structure per event kind.
SignSignature sign_signature(EventKind kind);

/// Appraisal magnitudes. Every nonzero channel of an event contributes
/// sign * event_magnitude * intensity; each bank's total is capped at max_step.
struct AppraisalGains {
  double max_step = 0.1;
  double event_magnitude = 0.05;
  std::array<double, kEventKindCount> per_event{};  // 0 = use event_magnitude
  double excitation_threat_gain = 1.5;  // threat weight for excitation-dominant kinds

  double magnitude(EventKind kind) const {
    const double m = per_event[static_cast<std::size_t>(kind)];
    return m > 0.0 ? m : event_magnitude;
  }
};

/// Rules that turn readings into events.
struct EncodingThresholds {
  double wall_ahead = 0.3;       // normalized front proximity
  double goal_occlusion = 0.5;   // front proximity below this hides the goal
  double clear_path_cone = 0.5;  // |beacon bearing| for a clear path, radians
  double social_radius = 2.5;    // meters; company counts only inside it
  double danger_radius = 3.0;    // meters; threats inside it are stressful
  double vision_range = 5.0;     // meters; threat intensity falls off to zero here
};

/// Fixed beliefs, desires and intentions shared by every agent.
struct BeliefBase {
  struct Rule {
    std::string_view premise;
    std::string_view conclusion;
  };
  static constexpr std::array<Rule, 3> beliefs{{
      {"angry", "dangerous"},
      {"collision", "painful"},
      {"happy", "friendly"},
  }};
  static constexpr std::array<std::string_view, 3> desires{
      "reach beacon", "satisfy social need", "avoid harm"};
  static constexpr std::array<std::string_view, 3> intentions{
      "avoid threats", "avoid walls", "follow happy agents"};

  /// Angry agents are dangerous: Hostile octant.
  static bool is_threat(EmotionLabel label) { return label == EmotionLabel::Hostile; }
  /// Happy agents are friendly: any positive-pleasure octant.
  static bool is_friend(EmotionLabel label);
};

/// Per-agent context that outlives a single cycle.
struct EncodingFlags {
  bool beacon_was_visible = false;
};

bool beacon_visible(const SensorReadings& readings, const EncodingThresholds& thresholds = {});

/// Extraverts need at least one robot inside the social radius; introverts
/// need none.
bool social_need_met(const SensorReadings& readings, SocialGroup group,
                     double social_radius);

std::vector<AppraisalEvent> encode_events(const SensorReadings& readings,
                                          const TemperamentProfile& profile,
                                          const EncodingFlags& flags,
                                          const EncodingThresholds& thresholds = {});

/// Survival bank. `threat_gain` multiplies the ThreatVisible contribution.
AppraisalResult appraise_survival(std::span<const AppraisalEvent> events,
                                  const AppraisalGains& gains = {}, double threat_gain = 1.0);

/// Goal and temperamental-needs bank. Pleasure from seeing or losing the
/// beacon is weighted by the agent's mobility (its persistence on the goal).
AppraisalResult appraise_goal(std::span<const AppraisalEvent> events,
                              const TemperamentProfile& profile,
                              const AppraisalGains& gains = {});

/// Scales a bank delta by the agent's anxiety (pleasure channel only) and
/// emotional rate (all channels).
PadVector modulate_delta(const PadVector& delta, const TemperamentProfile& profile,
                         const TemperamentConfig& config = {});

EmotionalState step_emotion(EmotionalState state, std::span<const AppraisalEvent> events,
                            const TemperamentProfile& profile, std::uint64_t cycle,
                            const AppraisalGains& gains = {},
                            const TemperamentConfig& config = {});

/// Number of stressful percepts in an event list: threats inside the danger
/// radius and wall collisions.
unsigned count_stress_events(std::span<const AppraisalEvent> events,
                             const EncodingThresholds& thresholds = {});

}  // namespace emosim
