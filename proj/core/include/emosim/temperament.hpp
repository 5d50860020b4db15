#pragma once

// Physiological layer: Pavlov nervous-system traits, Eysenck grouping, fuzzy
// temperament profiles and the actuation limits they imply.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace emosim {

enum class TemperamentKind : std::uint8_t { Choleric, Sanguine, Phlegmatic, Melancholic };

inline constexpr std::array<TemperamentKind, 4> kAllTemperaments = {
    TemperamentKind::Choleric, TemperamentKind::Sanguine, TemperamentKind::Phlegmatic,
    TemperamentKind::Melancholic};

std::string_view to_string(TemperamentKind kind);
/// Accepts full names in any case or the single-letter forms C/S/P/M.
std::optional<TemperamentKind> parse_temperament(std::string_view text);

enum class Force : std::uint8_t { Strong, Weak };
enum class Steadiness : std::uint8_t { Balanced, Unbalanced };
enum class Mobility : std::uint8_t { Mobile, Inert };

struct NervousSystemTraits {
  Force force;
  Steadiness steadiness;
  Mobility mobility;
  bool excitation_dominant;

  friend bool operator==(const NervousSystemTraits&, const NervousSystemTraits&) = default;
};

NervousSystemTraits pavlov_traits(TemperamentKind kind);

enum class SocialGroup : std::uint8_t { Introvert, Extravert };

std::string_view to_string(SocialGroup group);

/// Fuzzy membership grades of a value over the Low/Medium/High partition.
struct Memberships {
  double low = 0.0;
  double medium = 0.0;
  double high = 0.0;
};

/// A temperament variable on [0, 1] with its innate baseline.
///
/// The three triangular sets peak at 0, 0.5 and 1 and form a partition of
/// unity, so centroid defuzzification returns the crisp value itself.
struct FuzzyVariable {
  double value = 0.5;
  double baseline = 0.5;

  Memberships memberships() const;
  double defuzzify() const;

  friend bool operator==(const FuzzyVariable&, const FuzzyVariable&) = default;
};

Memberships triangular_memberships(double x);

struct Band {
  double lo = 0.0;
  double hi = 1.0;
};

/// Tunables of the physiological layer, read from the [temperament] section.
struct TemperamentConfig {
  Band upper_band{0.6, 0.95};
  Band lower_band{0.05, 0.4};
  std::array<double, 4> anxiety{0.9, 0.3, 0.1, 0.8};  // indexed by TemperamentKind
  double stress_rate = 0.01;
  double motor_max = 1.0;
  double motor_floor = 0.4;
  double reach_min = 0.75;
  double reach_max = 1.25;

  double anxiety_for(TemperamentKind kind) const {
    return anxiety[static_cast<std::size_t>(kind)];
  }
};

struct EysenckPlacement {
  SocialGroup group;
  double anxiety;
};

EysenckPlacement eysenck_group(TemperamentKind kind, const TemperamentConfig& config = {});

struct TemperamentProfile {
  TemperamentKind kind = TemperamentKind::Sanguine;
  FuzzyVariable force;
  FuzzyVariable mobility;
  FuzzyVariable steadiness;
  double anxiety = 0.0;
  SocialGroup group = SocialGroup::Extravert;

  friend bool operator==(const TemperamentProfile&, const TemperamentProfile&) = default;
};

/// Checks value ranges and consistency of group/anxiety with the kind.
bool is_valid(const TemperamentProfile& profile, const TemperamentConfig& config = {});

/// Draws a unique mixture for `kind`: each variable is uniform in the upper
/// band when the Pavlov trait is Strong/Mobile/Balanced, otherwise in the
/// lower band. Baselines equal the drawn values.
TemperamentProfile sample_profile(TemperamentKind kind, std::mt19937_64& rng,
                                  const TemperamentConfig& config = {});

/// Stress pushes every fuzzy variable toward 1; calm relaxes it toward its
/// baseline. Step size is stress_rate * (1 + max(arousal, 0)) * dt.
TemperamentProfile stress_update(TemperamentProfile profile, unsigned stress_events,
                                 double arousal, unsigned dt = 1,
                                 const TemperamentConfig& config = {});

struct ActuationLimits {
  double motor_ceiling = 1.0;   // fraction of max wheel power
  double sensor_reach = 1.0;    // multiplier on base sensor reach
  double emotional_rate = 1.0;  // multiplier on appraisal deltas

  friend bool operator==(const ActuationLimits&, const ActuationLimits&) = default;
};

ActuationLimits actuation_limits(const TemperamentProfile& profile,
                                 const TemperamentConfig& config = {});

}  // namespace emosim
