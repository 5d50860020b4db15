#pragma once

// Pleasure-Arousal-Dominance algebra: emotional state, octant labels,
// Big-Five regressions and appraisal integration.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace emosim {

struct PadVector {
  double pleasure = 0.0;
  double arousal = 0.0;
  double dominance = 0.0;

  friend bool operator==(const PadVector&, const PadVector&) = default;

  PadVector& operator+=(const PadVector& o) {
    pleasure += o.pleasure;
    arousal += o.arousal;
    dominance += o.dominance;
    return *this;
  }
  friend PadVector operator+(PadVector a, const PadVector& b) { return a += b; }
  friend PadVector operator*(double s, const PadVector& v) {
    return {s * v.pleasure, s * v.arousal, s * v.dominance};
  }
};

/// Componentwise saturation into [lo, hi].
PadVector clamp(const PadVector& v, double lo = -1.0, double hi = 1.0);

/// True when every component lies in [-1, 1] and is finite.
bool is_valid(const PadVector& v);

enum class EmotionLabel : std::uint8_t {
  Exuberant,   // +P +A +D
  Bored,       // -P -A -D
  Dependent,   // +P +A -D
  Disdainful,  // -P -A +D
  Relaxed,     // +P -A +D
  Anxious,     // -P +A -D
  Docile,      // +P -A -D
  Hostile,     // -P +A +D
};

inline constexpr std::size_t kEmotionLabelCount = 8;

/// Label of the sign octant containing `v`. Zero components count as positive.
EmotionLabel octant_label(const PadVector& v);

std::string_view to_string(EmotionLabel label);
std::optional<EmotionLabel> parse_emotion_label(std::string_view text);

struct BigFiveScores {
  double extraversion = 0.0;
  double agreeableness = 0.0;
  double conscientiousness = 0.0;
  double emotional_stability = 0.0;
  double sophistication = 0.0;

  friend bool operator==(const BigFiveScores&, const BigFiveScores&) = default;
};

/// Personality factors as linear functions of a PAD point.
BigFiveScores big_five_from_pad(const PadVector& v);

/// PAD triple on the [-10, 10] presentation scale.
struct ReportedPad {
  double pleasure = 0.0;
  double arousal = 0.0;
  double dominance = 0.0;

  friend bool operator==(const ReportedPad&, const ReportedPad&) = default;
};

ReportedPad scale_for_report(const PadVector& v);

/// Current emotional state plus its cycle-indexed history.
///
/// History is kept at full resolution by default. With a stride k > 1 only
/// cycles divisible by k are retained permanently; the most recent sample is
/// always kept as the last entry, and `current()` equals `history().back()`.
class EmotionalState {
 public:
  struct Sample {
    std::uint64_t cycle = 0;
    PadVector pad;
    friend bool operator==(const Sample&, const Sample&) = default;
  };

  EmotionalState() = default;
  explicit EmotionalState(PadVector initial, std::uint32_t history_stride = 1);

  const PadVector& current() const { return current_; }
  const std::vector<Sample>& history() const { return history_; }
  std::optional<std::uint64_t> last_cycle() const { return last_cycle_; }
  std::uint32_t history_stride() const { return stride_; }

  /// E(t+1) = clamp(E(t) + sum(deltas)). Throws OrderingError unless `cycle`
  /// is strictly greater than the last integrated cycle.
  void integrate(std::span<const PadVector> deltas, std::uint64_t cycle);

  friend bool operator==(const EmotionalState&, const EmotionalState&) = default;

 private:
  PadVector current_{};
  std::vector<Sample> history_;
  std::optional<std::uint64_t> last_cycle_;
  std::uint32_t stride_ = 1;
};

EmotionalState integrate_appraisals(EmotionalState state,
                                    std::span<const PadVector> deltas,
                                    std::uint64_t cycle);

}  // namespace emosim
