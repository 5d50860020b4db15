#pragma once

// Newline-delimited text protocol between the simulator and its clients.
// See PROTOCOL.md for the grammar.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "emosim/pad.hpp"
#include "emosim/world.hpp"

namespace emosim::net {

enum class Role : std::uint8_t { Agent, Viewer };

struct Register {
  Role role = Role::Agent;
  std::string name;
  friend bool operator==(const Register&, const Register&) = default;
};

struct Welcome {
  AgentId agent_id = 0;
  double cycle_period = 0.1;  // seconds
  friend bool operator==(const Welcome&, const Welcome&) = default;
};

struct Sensors {
  std::uint64_t cycle = 0;
  SensorReadings readings;
  friend bool operator==(const Sensors&, const Sensors&) = default;
};

struct Motors {
  std::uint64_t cycle = 0;
  MotorCommand command;
  friend bool operator==(const Motors&, const Motors&) = default;
};

/// Agent self-report sent before Motors: emotional state plus the
/// physiological limits the simulator must apply to the body.
struct Status {
  std::uint64_t cycle = 0;
  PadVector pad;
  double motor_ceiling = 1.0;
  double sensor_reach = 1.0;
  friend bool operator==(const Status&, const Status&) = default;
};

struct ViewEntry {
  AgentId id = 0;
  Vec2 position;
  double heading = 0.0;
  EmotionLabel label = EmotionLabel::Exuberant;
  ReportedPad pad;
  bool finished = false;
  friend bool operator==(const ViewEntry&, const ViewEntry&) = default;
};

struct ViewFrame {
  std::uint64_t cycle = 0;
  std::vector<ViewEntry> agents;
  friend bool operator==(const ViewFrame&, const ViewFrame&) = default;
};

struct Finish {
  std::uint64_t cycle = 0;
  friend bool operator==(const Finish&, const Finish&) = default;
};

struct Error {
  std::string code;
  std::string text;
  friend bool operator==(const Error&, const Error&) = default;
};

using WireMessage =
    std::variant<Register, Welcome, Sensors, Motors, Status, ViewFrame, Finish, Error>;

/// Single newline-terminated line. Reals carry six decimals.
std::string encode(const WireMessage& msg);

/// Parses one line (trailing newline optional). Anything encode cannot emit
/// yields Error{"parse", ...}.
WireMessage decode(std::string_view line);

inline bool is_parse_error(const WireMessage& m) {
  const auto* e = std::get_if<Error>(&m);
  return e != nullptr && e->code == "parse";
}

}  // namespace emosim::net
