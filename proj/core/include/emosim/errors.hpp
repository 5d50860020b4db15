#pragma once

#include <stdexcept>
#include <string>

namespace emosim {

/// Raised when an emotional state is advanced with a cycle index that does not
/// strictly follow the last recorded one.
class OrderingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed or inconsistent scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ScoringError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A trial inside a batch failed; carries the offending cell.
class TrialError : public std::runtime_error {
 public:
  TrialError(std::string scenario, std::string team, unsigned long long seed,
             const std::string& what)
      : std::runtime_error(what),
        scenario_(std::move(scenario)),
        team_(std::move(team)),
        seed_(seed) {}

  const std::string& scenario() const { return scenario_; }
  const std::string& team() const { return team_; }
  unsigned long long seed() const { return seed_; }

 private:
  std::string scenario_;
  std::string team_;
  unsigned long long seed_;
};

}  // namespace emosim
