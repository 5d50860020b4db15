#include "emosim/temperament.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace emosim {

std::string_view to_string(TemperamentKind kind) {
  switch (kind) {
    case TemperamentKind::Choleric: return "Choleric";
    case TemperamentKind::Sanguine: return "Sanguine";
    case TemperamentKind::Phlegmatic: return "Phlegmatic";
    case TemperamentKind::Melancholic: return "Melancholic";
  }
  return "?";
}

std::optional<TemperamentKind> parse_temperament(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "c" || lower == "choleric") return TemperamentKind::Choleric;
  if (lower == "s" || lower == "sanguine") return TemperamentKind::Sanguine;
  if (lower == "p" || lower == "phlegmatic") return TemperamentKind::Phlegmatic;
  if (lower == "m" || lower == "melancholic") return TemperamentKind::Melancholic;
  return std::nullopt;
}

std::string_view to_string(SocialGroup group) {
  return group == SocialGroup::Introvert ? "Introvert" : "Extravert";
}

NervousSystemTraits pavlov_traits(TemperamentKind kind) {
  switch (kind) {
    case TemperamentKind::Sanguine:
      return {Force::Strong, Steadiness::Balanced, Mobility::Mobile, false};
    case TemperamentKind::Phlegmatic:
      return {Force::Strong, Steadiness::Balanced, Mobility::Inert, false};
    case TemperamentKind::Choleric:
      return {Force::Strong, Steadiness::Unbalanced, Mobility::Mobile, true};
    case TemperamentKind::Melancholic:
      return {Force::Weak, Steadiness::Unbalanced, Mobility::Inert, false};
  }
  return {Force::Strong, Steadiness::Balanced, Mobility::Mobile, false};
}

Memberships triangular_memberships(double x) {
  x = std::clamp(x, 0.0, 1.0);
  if (x <= 0.5) return {1.0 - 2.0 * x, 2.0 * x, 0.0};
  return {0.0, 2.0 - 2.0 * x, 2.0 * x - 1.0};
}

Memberships FuzzyVariable::memberships() const { return triangular_memberships(value); }

double FuzzyVariable::defuzzify() const {
  const auto m = memberships();
  return (0.0 * m.low + 0.5 * m.medium + 1.0 * m.high) / (m.low + m.medium + m.high);
}

EysenckPlacement eysenck_group(TemperamentKind kind, const TemperamentConfig& config) {
  const bool introvert =
      kind == TemperamentKind::Melancholic || kind == TemperamentKind::Phlegmatic;
  return {introvert ? SocialGroup::Introvert : SocialGroup::Extravert,
          config.anxiety_for(kind)};
}

bool is_valid(const TemperamentProfile& p, const TemperamentConfig& config) {
  auto in_unit = [](const FuzzyVariable& v) {
    return std::isfinite(v.value) && v.value >= 0.0 && v.value <= 1.0 &&
           v.baseline >= 0.0 && v.baseline <= 1.0;
  };
  const auto placement = eysenck_group(p.kind, config);
  return in_unit(p.force) && in_unit(p.mobility) && in_unit(p.steadiness) &&
         p.group == placement.group && p.anxiety == placement.anxiety;
}

TemperamentProfile sample_profile(TemperamentKind kind, std::mt19937_64& rng,
                                  const TemperamentConfig& config) {
  const auto traits = pavlov_traits(kind);
  auto draw = [&](bool upper) {
    const Band& band = upper ? config.upper_band : config.lower_band;
    std::uniform_real_distribution<double> dist(band.lo, band.hi);
    const double v = dist(rng);
    return FuzzyVariable{v, v};
  };
  TemperamentProfile p;
  p.kind = kind;
  p.force = draw(traits.force == Force::Strong);
  p.mobility = draw(traits.mobility == Mobility::Mobile);
  p.steadiness = draw(traits.steadiness == Steadiness::Balanced);
  const auto placement = eysenck_group(kind, config);
  p.anxiety = placement.anxiety;
  p.group = placement.group;
  return p;
}

TemperamentProfile stress_update(TemperamentProfile profile, unsigned stress_events,
                                 double arousal, unsigned dt,
                                 const TemperamentConfig& config) {
  const double step =
      config.stress_rate * (1.0 + std::max(arousal, 0.0)) * static_cast<double>(dt);
  auto drift = [&](FuzzyVariable& v) {
    if (stress_events > 0) {
      v.value = std::min(1.0, v.value + step);
    } else if (v.value > v.baseline) {
      v.value = std::max(v.baseline, v.value - step);
    } else {
      v.value = std::min(v.baseline, v.value + step);
    }
    v.value = std::clamp(v.value, 0.0, 1.0);
  };
  drift(profile.force);
  drift(profile.mobility);
  drift(profile.steadiness);
  return profile;
}

ActuationLimits actuation_limits(const TemperamentProfile& profile,
                                 const TemperamentConfig& config) {
  const double f = std::clamp(profile.force.defuzzify(), 0.0, 1.0);
  const double ceiling = config.motor_floor + (config.motor_max - config.motor_floor) * f;
  return {
      .motor_ceiling = std::min(ceiling, config.motor_max),
      .sensor_reach = config.reach_min + (config.reach_max - config.reach_min) * f,
      .emotional_rate = 1.0 + profile.anxiety,
  };
}

}  // namespace emosim
