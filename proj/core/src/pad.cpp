#include "emosim/pad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "emosim/errors.hpp"

namespace emosim {

namespace {

constexpr std::array<std::string_view, kEmotionLabelCount> kLabelNames = {
    "Exuberant", "Bored", "Dependent", "Disdainful",
    "Relaxed",   "Anxious", "Docile",  "Hostile",
};

}  // namespace

PadVector clamp(const PadVector& v, double lo, double hi) {
  return {std::clamp(v.pleasure, lo, hi), std::clamp(v.arousal, lo, hi),
          std::clamp(v.dominance, lo, hi)};
}

bool is_valid(const PadVector& v) {
  auto ok = [](double x) { return std::isfinite(x) && x >= -1.0 && x <= 1.0; };
  return ok(v.pleasure) && ok(v.arousal) && ok(v.dominance);
}

EmotionLabel octant_label(const PadVector& v) {
  const bool p = v.pleasure >= 0.0;
  const bool a = v.arousal >= 0.0;
  const bool d = v.dominance >= 0.0;
  if (p) {
    if (a) return d ? EmotionLabel::Exuberant : EmotionLabel::Dependent;
    return d ? EmotionLabel::Relaxed : EmotionLabel::Docile;
  }
  if (a) return d ? EmotionLabel::Hostile : EmotionLabel::Anxious;
  return d ? EmotionLabel::Disdainful : EmotionLabel::Bored;
}

std::string_view to_string(EmotionLabel label) {
  return kLabelNames[static_cast<std::size_t>(label)];
}

std::optional<EmotionLabel> parse_emotion_label(std::string_view text) {
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == text) return static_cast<EmotionLabel>(i);
  }
  return std::nullopt;
}

BigFiveScores big_five_from_pad(const PadVector& v) {
  const double p = v.pleasure;
  const double a = v.arousal;
  const double d = v.dominance;
  return {
      .extraversion = 0.24 * p + 0.72 * d,
      .agreeableness = 0.76 * p + 0.17 * a - 0.19 * d,
      .conscientiousness = 0.29 * p + 0.28 * d,
      .emotional_stability = 0.50 * p - 0.55 * a,
      .sophistication = 0.28 * a + 0.60 * d,
  };
}

ReportedPad scale_for_report(const PadVector& v) {
  return {10.0 * v.pleasure, 10.0 * v.arousal, 10.0 * v.dominance};
}

EmotionalState::EmotionalState(PadVector initial, std::uint32_t history_stride)
    : current_(clamp(initial)), stride_(std::max<std::uint32_t>(1, history_stride)) {}

void EmotionalState::integrate(std::span<const PadVector> deltas, std::uint64_t cycle) {
  if (last_cycle_ && cycle <= *last_cycle_) {
    throw OrderingError("emotional state advanced to cycle " + std::to_string(cycle) +
                        " after cycle " + std::to_string(*last_cycle_));
  }
  PadVector next = current_;
  for (const auto& d : deltas) next += d;
  current_ = clamp(next);

  // An off-stride tail entry is only a placeholder for the latest sample.
  if (!history_.empty() && history_.back().cycle % stride_ != 0) history_.pop_back();
  history_.push_back({cycle, current_});
  last_cycle_ = cycle;
}

EmotionalState integrate_appraisals(EmotionalState state,
                                    std::span<const PadVector> deltas,
                                    std::uint64_t cycle) {
  state.integrate(deltas, cycle);
  return state;
}

}  // namespace emosim
