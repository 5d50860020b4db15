#include "emosim/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "emosim/errors.hpp"
#include "emosim/seeding.hpp"

namespace emosim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSideAngle = kPi / 3.0;  // proximity sensors at +-60 degrees

// Entry distance of a ray into an axis-aligned box (slab method).
double ray_rect(Vec2 o, Vec2 d, const Rect& r) {
  double tmin = 0.0;
  double tmax = kInf;
  const double lo[2] = {r.x0, r.y0};
  const double hi[2] = {r.x1, r.y1};
  const double org[2] = {o.x, o.y};
  const double dir[2] = {d.x, d.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (std::abs(dir[axis]) < 1e-12) {
      if (org[axis] < lo[axis] || org[axis] > hi[axis]) return kInf;
      continue;
    }
    double t1 = (lo[axis] - org[axis]) / dir[axis];
    double t2 = (hi[axis] - org[axis]) / dir[axis];
    if (t1 > t2) std::swap(t1, t2);
    tmin = std::max(tmin, t1);
    tmax = std::min(tmax, t2);
    if (tmin > tmax) return kInf;
  }
  return tmin;
}

// Distance from an interior point to the arena boundary along a ray.
double ray_bounds(Vec2 o, Vec2 d, double width, double height) {
  double t = kInf;
  if (d.x > 1e-12) t = std::min(t, (width - o.x) / d.x);
  if (d.x < -1e-12) t = std::min(t, -o.x / d.x);
  if (d.y > 1e-12) t = std::min(t, (height - o.y) / d.y);
  if (d.y < -1e-12) t = std::min(t, -o.y / d.y);
  return std::max(t, 0.0);
}

double ray_circle(Vec2 o, Vec2 d, Vec2 c, double radius) {
  const double rx = c.x - o.x;
  const double ry = c.y - o.y;
  const double proj = rx * d.x + ry * d.y;
  if (proj < 0.0) return kInf;
  const double perp2 = rx * rx + ry * ry - proj * proj;
  const double r2 = radius * radius;
  if (perp2 > r2) return kInf;
  const double t = proj - std::sqrt(std::max(0.0, r2 - perp2));
  return t >= 0.0 ? t : 0.0;
}

bool is_active(const AgentBody& b) { return b.started && !b.stopped; }

// Bodies that still occupy space: everything except agents that arrived.
bool is_solid(const AgentBody& b) { return !b.stopped; }

}  // namespace

Rect Rect::from_corners(double ax, double ay, double bx, double by) {
  return {std::min(ax, bx), std::min(ay, by), std::max(ax, bx), std::max(ay, by)};
}

double wrap_angle(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  w -= kPi;
  return w >= kPi ? -kPi : w;
}

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double distance_to_rect(Vec2 p, const Rect& r) {
  const double dx = std::max({r.x0 - p.x, 0.0, p.x - r.x1});
  const double dy = std::max({r.y0 - p.y, 0.0, p.y - r.y1});
  return std::hypot(dx, dy);
}

void World::start_all() {
  for (auto& b : bodies_) b.started = true;
}

bool World::hits_static(Vec2 p, double r) const {
  if (p.x - r < 0.0 || p.y - r < 0.0 || p.x + r > arena_.width || p.y + r > arena_.height)
    return true;
  return std::any_of(arena_.walls.begin(), arena_.walls.end(),
                     [&](const Rect& w) { return distance_to_rect(p, w) < r; });
}

World load_scenario(const WorldConfig& config, std::uint64_t noise_seed,
                    std::size_t agent_count) {
  const Arena& arena = config.arena;
  if (!(arena.width > 0.0) || !(arena.height > 0.0))
    throw ConfigError("arena dimensions must be positive");
  if (!(arena.arrival_radius > 0.0)) throw ConfigError("arrival radius must be positive");
  if (!(config.params.robot_radius > 0.0)) throw ConfigError("robot radius must be positive");
  if (!(config.params.cycle_seconds > 0.0)) throw ConfigError("cycle period must be positive");

  if (arena.beacon) {
    const Vec2 b = *arena.beacon;
    if (b.x < 0.0 || b.y < 0.0 || b.x > arena.width || b.y > arena.height)
      throw ConfigError("beacon lies outside the arena");
    for (std::size_t i = 0; i < arena.walls.size(); ++i) {
      const double d = distance_to_rect(b, arena.walls[i]);
      if (d == 0.0) throw ConfigError("beacon lies inside wall " + std::to_string(i));
      if (d < arena.arrival_radius)
        throw ConfigError("arrival zone intersects wall " + std::to_string(i));
    }
  }

  const std::size_t n = agent_count == 0 ? config.spawns.size() : agent_count;
  if (n == 0) throw ConfigError("scenario defines no spawn points");
  if (n > config.spawns.size())
    throw ConfigError("scenario has " + std::to_string(config.spawns.size()) +
                      " spawn points but " + std::to_string(n) + " agents were requested");

  World world;
  world.arena_ = arena;
  world.params_ = config.params;
  const double r = config.params.robot_radius;
  for (std::size_t i = 0; i < n; ++i) {
    const Spawn& s = config.spawns[i];
    if (world.hits_static(s.position, r))
      throw ConfigError("spawn " + std::to_string(i) + " overlaps a wall or the arena edge");
    for (std::size_t j = 0; j < i; ++j) {
      if (distance(s.position, config.spawns[j].position) < 2.0 * r)
        throw ConfigError("spawns " + std::to_string(j) + " and " + std::to_string(i) +
                          " overlap");
    }
    AgentBody body;
    body.id = static_cast<AgentId>(i);
    body.position = s.position;
    body.heading = wrap_angle(s.heading);
    body.radius = r;
    world.bodies_.push_back(body);
    world.noise_.push_back(make_stream(noise_seed, StreamTag::SensorNoise, i));
  }
  return world;
}

AgentBody apply_motors(AgentBody body, const MotorCommand& cmd, double motor_ceiling,
                       const WorldParams& params) {
  const double ceiling = std::clamp(motor_ceiling, 0.0, 1.0);
  const double keep = params.filter_keep;
  const double l = std::clamp(cmd.left, -ceiling, ceiling);
  const double r = std::clamp(cmd.right, -ceiling, ceiling);
  body.power_left = std::clamp(keep * body.power_left + (1.0 - keep) * l, -ceiling, ceiling);
  body.power_right = std::clamp(keep * body.power_right + (1.0 - keep) * r, -ceiling, ceiling);

  const double axle = 2.0 * body.radius;
  const double v = 0.5 * (body.power_left + body.power_right) * params.v_max;
  const double omega = (body.power_right - body.power_left) / axle * params.v_max;
  const double dt = params.cycle_seconds;
  const double mid = body.heading + 0.5 * omega * dt;
  body.position.x += v * dt * std::cos(mid);
  body.position.y += v * dt * std::sin(mid);
  body.heading = wrap_angle(body.heading + omega * dt);
  return body;
}

SensorReadings sense(const World& world, AgentId id, std::mt19937_64& rng) {
  const AgentBody& self = world.body(id);
  const WorldParams& p = world.params();
  const Arena& arena = world.arena();
  std::normal_distribution<double> unit(0.0, 1.0);

  const double reach = p.base_reach * self.sensor_reach;
  auto proximity = [&](double rel_angle) {
    const double a = self.heading + rel_angle;
    const Vec2 d{std::cos(a), std::sin(a)};
    double t = ray_bounds(self.position, d, arena.width, arena.height);
    for (const auto& w : arena.walls) t = std::min(t, ray_rect(self.position, d, w));
    for (const auto& other : world.bodies()) {
      if (other.id == id || !is_solid(other)) continue;
      t = std::min(t, ray_circle(self.position, d, other.position, other.radius));
    }
    const double noise = unit(rng) * p.sigma_proximity;
    const double surface = t - self.radius;
    // No return within reach reads exactly 1.
    if (!(surface < reach)) return 1.0;
    return std::clamp(std::max(surface, 0.0) / reach + noise, 0.0, 1.0);
  };

  SensorReadings out;
  out.front = proximity(0.0);
  out.left = proximity(kSideAngle);
  out.right = proximity(-kSideAngle);

  const double beacon_noise = unit(rng) * p.sigma_angle;
  const double compass_noise = unit(rng) * p.sigma_angle;
  if (arena.beacon) {
    const Vec2 b = *arena.beacon;
    const double dir = std::atan2(b.y - self.position.y, b.x - self.position.x);
    out.beacon_bearing = wrap_angle(dir - self.heading + beacon_noise);
    out.ground = distance(self.position, b) <= arena.arrival_radius;
  }
  out.compass = wrap_angle(self.heading + compass_noise);
  out.collision = self.collision;

  const double vision_range = p.vision_range * self.sensor_reach;
  for (const auto& other : world.bodies()) {
    if (other.id == id || !is_solid(other)) continue;
    const double dist = distance(self.position, other.position);
    if (dist > vision_range) continue;
    const double bearing = wrap_angle(
        std::atan2(other.position.y - self.position.y, other.position.x - self.position.x) -
        self.heading);
    if (std::abs(bearing) > p.vision_half_fov) continue;
    out.vision.push_back({bearing, dist, other.broadcast_label});
  }
  return out;
}

std::vector<SensorReadings> sense_all(World& world) {
  std::vector<SensorReadings> out;
  out.reserve(world.size());
  for (std::size_t i = 0; i < world.size(); ++i) {
    const auto id = static_cast<AgentId>(i);
    out.push_back(sense(world, id, world.noise_stream(id)));
  }
  return out;
}

std::vector<SensorReadings> step_world(World& world,
                                       const std::map<AgentId, MotorCommand>& commands) {
  auto& bodies = world.bodies_;
  const std::vector<AgentBody> before = bodies;
  std::vector<bool> moved(bodies.size(), false);

  for (std::size_t i = 0; i < bodies.size(); ++i) {
    AgentBody& b = bodies[i];
    if (!is_active(b)) continue;
    const auto it = commands.find(b.id);
    const MotorCommand cmd = it == commands.end() ? MotorCommand{} : it->second;
    b = apply_motors(b, cmd, b.motor_ceiling, world.params_);
    b.collision = false;
    moved[i] = true;
    if (world.hits_static(b.position, b.radius)) {
      b.position = before[i].position;
      b.heading = before[i].heading;
      b.collision = true;
    }
  }

  // Robot-robot contacts: roll both parties back until no overlap remains.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      if (!is_solid(bodies[i])) continue;
      for (std::size_t j = i + 1; j < bodies.size(); ++j) {
        if (!is_solid(bodies[j])) continue;
        if (distance(bodies[i].position, bodies[j].position) >=
            bodies[i].radius + bodies[j].radius)
          continue;
        for (std::size_t k : {i, j}) {
          if (!moved[k]) continue;
          AgentBody& b = bodies[k];
          b.collision = true;
          if (b.position != before[k].position || b.heading != before[k].heading) {
            b.position = before[k].position;
            b.heading = before[k].heading;
            changed = true;
          }
        }
      }
    }
  }

  const auto& beacon = world.arena_.beacon;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    AgentBody& b = bodies[i];
    const bool ground =
        beacon && distance(b.position, *beacon) <= world.arena_.arrival_radius;
    b.led_on = ground;
    if (moved[i] && ground) {
      b.stopped = true;
      b.power_left = 0.0;
      b.power_right = 0.0;
    }
  }

  ++world.cycle_;
  return sense_all(world);
}

}  // namespace emosim
