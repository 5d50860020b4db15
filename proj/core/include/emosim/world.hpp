#pragma once

// Discrete-time arena: geometry, differential-drive kinematics, collision
// handling and noisy sensor synthesis.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "emosim/pad.hpp"

namespace emosim {

using AgentId = int;

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Axis-aligned rectangle, normalized so that min <= max.
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  static Rect from_corners(double ax, double ay, double bx, double by);
  bool contains(Vec2 p) const { return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Wraps an angle into [-pi, pi).
double wrap_angle(double a);

double distance(Vec2 a, Vec2 b);
/// Shortest distance from `p` to the closed rectangle (0 inside).
double distance_to_rect(Vec2 p, const Rect& r);

struct Arena {
  double width = 10.0;
  double height = 10.0;
  std::vector<Rect> walls;
  std::optional<Vec2> beacon;
  double arrival_radius = 1.0;
  friend bool operator==(const Arena&, const Arena&) = default;
};

struct Spawn {
  Vec2 position;
  double heading = 0.0;
  friend bool operator==(const Spawn&, const Spawn&) = default;
};

/// Physical constants and sensor model parameters.
struct WorldParams {
  double cycle_seconds = 0.1;
  double v_max = 0.5;          // m/s at full power
  double robot_radius = 0.25;  // axle = 2 * radius
  double base_reach = 2.0;     // proximity reach before the temperament multiplier
  double vision_range = 5.0;   // before the temperament multiplier
  double vision_half_fov = kPi / 2.0;
  double sigma_proximity = 0.02;
  double sigma_angle = 0.02;
  double filter_keep = 0.5;    // new = keep * old + (1 - keep) * clipped
  friend bool operator==(const WorldParams&, const WorldParams&) = default;
};

struct WorldConfig {
  Arena arena;
  std::vector<Spawn> spawns;
  WorldParams params;
};

struct MotorCommand {
  double left = 0.0;
  double right = 0.0;
  friend bool operator==(const MotorCommand&, const MotorCommand&) = default;
};

struct AgentBody {
  AgentId id = 0;
  Vec2 position;
  double heading = 0.0;
  double radius = 0.25;
  double power_left = 0.0;   // filtered wheel power
  double power_right = 0.0;
  bool collision = false;
  bool led_on = false;
  bool started = false;
  bool stopped = false;      // arrived; no longer moves, collides, or is seen
  EmotionLabel broadcast_label = EmotionLabel::Exuberant;
  double motor_ceiling = 1.0;
  double sensor_reach = 1.0;

  friend bool operator==(const AgentBody&, const AgentBody&) = default;
};

struct VisionEntry {
  double bearing = 0.0;   // relative to heading, [-pi, pi)
  double distance = 0.0;  // center to center, meters
  EmotionLabel label = EmotionLabel::Exuberant;
  friend bool operator==(const VisionEntry&, const VisionEntry&) = default;
};

struct SensorReadings {
  double front = 1.0;  // proximity, distance / reach, 1 = nothing in reach
  double left = 1.0;   // +60 degrees
  double right = 1.0;  // -60 degrees
  std::optional<double> beacon_bearing;  // absent when the arena has no beacon
  double compass = 0.0;
  bool ground = false;
  bool collision = false;
  std::vector<VisionEntry> vision;

  friend bool operator==(const SensorReadings&, const SensorReadings&) = default;
};

class World {
 public:
  World() = default;

  const Arena& arena() const { return arena_; }
  const WorldParams& params() const { return params_; }
  std::span<const AgentBody> bodies() const { return bodies_; }
  AgentBody& body(AgentId id) { return bodies_.at(static_cast<std::size_t>(id)); }
  const AgentBody& body(AgentId id) const { return bodies_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return bodies_.size(); }
  std::uint64_t cycle() const { return cycle_; }

  /// Marks every body as started (the test has begun).
  void start_all();

  std::mt19937_64& noise_stream(AgentId id) { return noise_.at(static_cast<std::size_t>(id)); }

  /// True when a circle at `p` with radius `r` overlaps a wall or leaves the arena.
  bool hits_static(Vec2 p, double r) const;

  friend bool operator==(const World&, const World&) = default;

 private:
  friend World load_scenario(const WorldConfig&, std::uint64_t, std::size_t);
  friend std::vector<SensorReadings> step_world(World&,
                                                const std::map<AgentId, MotorCommand>&);

  Arena arena_;
  WorldParams params_;
  std::vector<AgentBody> bodies_;
  std::vector<std::mt19937_64> noise_;
  std::uint64_t cycle_ = 0;
};

/// Validates `config` and places one body per spawn (or the first
/// `agent_count` spawns when given). Throws ConfigError.
World load_scenario(const WorldConfig& config, std::uint64_t noise_seed = 0,
                    std::size_t agent_count = 0);

/// Clips to the ceiling, low-pass filters the wheel powers and integrates the
/// differential-drive pose over one cycle.
AgentBody apply_motors(AgentBody body, const MotorCommand& cmd, double motor_ceiling,
                       const WorldParams& params);

/// Synthesizes readings for one agent from the current world state.
SensorReadings sense(const World& world, AgentId id, std::mt19937_64& rng);

/// Advances every started, unstopped body one cycle. Agents without a command
/// coast with zero power. Returns readings for the new state, indexed by id.
std::vector<SensorReadings> step_world(World& world,
                                       const std::map<AgentId, MotorCommand>& commands);

/// Readings for every agent from the current state, using each agent's stream.
std::vector<SensorReadings> sense_all(World& world);

}  // namespace emosim
