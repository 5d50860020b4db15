#include "emosim/scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "emosim/appraisal.hpp"
#include "emosim/errors.hpp"

namespace emosim {

namespace {

namespace pt = boost::property_tree;

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

double to_real(const std::string& where, const std::string& text) {
  const auto words = split_words(text);
  if (words.size() != 1) throw ConfigError(where + ": expected one number, got '" + text + "'");
  const std::string& w = words.front();
  double v = 0.0;
  const auto res = std::from_chars(w.data(), w.data() + w.size(), v);
  if (res.ec != std::errc{} || res.ptr != w.data() + w.size())
    throw ConfigError(where + ": '" + w + "' is not a number");
  return v;
}

std::vector<double> to_reals(const std::string& where, const std::string& text,
                             std::size_t count) {
  const auto words = split_words(text);
  if (words.size() != count)
    throw ConfigError(where + ": expected " + std::to_string(count) + " numbers, got '" +
                      text + "'");
  std::vector<double> out;
  for (const auto& w : words) out.push_back(to_real(where, w));
  return out;
}

bool to_bool(const std::string& where, const std::string& text) {
  const auto words = split_words(text);
  if (words.size() == 1) {
    if (words[0] == "true" || words[0] == "1" || words[0] == "yes") return true;
    if (words[0] == "false" || words[0] == "0" || words[0] == "no") return false;
  }
  throw ConfigError(where + ": expected a boolean, got '" + text + "'");
}

using Setter = std::function<void(const std::string& where, const std::string& value)>;

void apply_section(const pt::ptree& section, const std::string& name,
                   const std::map<std::string, Setter>& setters) {
  for (const auto& [key, node] : section) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("[" + name + "] unknown key '" + key + "'");
    it->second("[" + name + "] " + key, node.data());
  }
}

Setter real(double& target) {
  return [&target](const std::string& w, const std::string& v) { target = to_real(w, v); };
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("scenario parse error: ") + e.what());
  }

  ScenarioConfig cfg;
  WorldParams& wp = cfg.world.params;
  Arena& arena = cfg.world.arena;
  AgentParams& ap = cfg.agent;
  TemperamentConfig& tc = ap.temperament;
  bool saw_arena = false;
  bool saw_beacon = false;

  double beacon_x = 0.0, beacon_y = 0.0;
  bool beacon_enabled = true;
  bool beacon_x_set = false, beacon_y_set = false;

  for (const auto& [name, section] : tree) {
    if (!section.data().empty())
      throw ConfigError("key '" + name + "' appears outside of any section");

    if (name == "arena") {
      saw_arena = true;
      apply_section(section, name,
                    {
                        {"name",
                         [&](const auto& w, const auto& v) {
                           const auto words = split_words(v);
                           if (words.size() != 1) throw ConfigError(w + ": expected one word");
                           cfg.id = words.front();
                         }},
                        {"width", real(arena.width)},
                        {"height", real(arena.height)},
                        {"arrival_radius", real(arena.arrival_radius)},
                        {"cycle_seconds", real(wp.cycle_seconds)},
                        {"v_max", real(wp.v_max)},
                        {"robot_radius", real(wp.robot_radius)},
                        {"filter_keep", real(wp.filter_keep)},
                    });
    } else if (name == "walls") {
      for (const auto& [key, node] : section) {
        const auto c = to_reals("[walls] " + key, node.data(), 4);
        arena.walls.push_back(Rect::from_corners(c[0], c[1], c[2], c[3]));
      }
    } else if (name == "beacon") {
      saw_beacon = true;
      apply_section(section, name,
                    {
                        {"x", [&](const auto& w, const auto& v) { beacon_x = to_real(w, v); beacon_x_set = true; }},
                        {"y", [&](const auto& w, const auto& v) { beacon_y = to_real(w, v); beacon_y_set = true; }},
                        {"enabled", [&](const auto& w, const auto& v) { beacon_enabled = to_bool(w, v); }},
                    });
    } else if (name == "spawns") {
      for (const auto& [key, node] : section) {
        const auto c = to_reals("[spawns] " + key, node.data(), 3);
        cfg.world.spawns.push_back({{c[0], c[1]}, c[2]});
      }
    } else if (name == "temperament") {
      auto band = [](Band& b) {
        return [&b](const std::string& w, const std::string& v) {
          const auto c = to_reals(w, v, 2);
          if (!(c[0] >= 0.0 && c[0] <= c[1] && c[1] <= 1.0))
            throw ConfigError(w + ": band must satisfy 0 <= lo <= hi <= 1");
          b = {c[0], c[1]};
        };
      };
      auto anxiety = [&tc](TemperamentKind k) {
        return real(tc.anxiety[static_cast<std::size_t>(k)]);
      };
      apply_section(section, name,
                    {
                        {"upper_band", band(tc.upper_band)},
                        {"lower_band", band(tc.lower_band)},
                        {"anxiety_choleric", anxiety(TemperamentKind::Choleric)},
                        {"anxiety_sanguine", anxiety(TemperamentKind::Sanguine)},
                        {"anxiety_phlegmatic", anxiety(TemperamentKind::Phlegmatic)},
                        {"anxiety_melancholic", anxiety(TemperamentKind::Melancholic)},
                        {"stress_rate", real(tc.stress_rate)},
                        {"motor_max", real(tc.motor_max)},
                        {"motor_floor", real(tc.motor_floor)},
                        {"reach_min", real(tc.reach_min)},
                        {"reach_max", real(tc.reach_max)},
                    });
    } else if (name == "appraisal_gains") {
      std::map<std::string, Setter> setters{
          {"max_step", real(ap.gains.max_step)},
          {"event_magnitude", real(ap.gains.event_magnitude)},
          {"excitation_threat_gain", real(ap.gains.excitation_threat_gain)},
      };
      for (std::size_t i = 0; i < kEventKindCount; ++i) {
        setters.emplace(std::string(to_string(static_cast<EventKind>(i))),
                        real(ap.gains.per_event[i]));
      }
      apply_section(section, name, setters);
    } else if (name == "thresholds") {
      apply_section(
          section, name,
          {
              {"comfort", real(ap.mind.comfort)},
              {"idle_mobility", real(ap.mind.idle_mobility)},
              {"danger_radius",
               [&](const auto& w, const auto& v) {
                 ap.mind.danger_radius = ap.encoding.danger_radius = to_real(w, v);
               }},
              {"social_radius",
               [&](const auto& w, const auto& v) {
                 ap.mind.social_radius = ap.encoding.social_radius = to_real(w, v);
               }},
              {"wall_avoid", real(ap.mind.wall_avoid)},
              {"wall_ahead", real(ap.encoding.wall_ahead)},
              {"goal_occlusion", real(ap.encoding.goal_occlusion)},
              {"clear_path_cone", real(ap.encoding.clear_path_cone)},
              {"steer_span", real(ap.mind.steer_span)},
              {"search_turn", real(ap.mind.search_turn)},
              {"recover_cycles",
               [&](const auto& w, const auto& v) {
                 const double r = to_real(w, v);
                 if (r < 0.0 || r != static_cast<unsigned>(r))
                   throw ConfigError(w + ": expected a non-negative integer");
                 ap.mind.recover_cycles = static_cast<unsigned>(r);
               }},
              {"base_reach", real(wp.base_reach)},
              {"vision_range", real(wp.vision_range)},
              {"vision_half_fov_deg",
               [&](const auto& w, const auto& v) { wp.vision_half_fov = to_real(w, v) * kPi / 180.0; }},
              {"sigma_proximity", real(wp.sigma_proximity)},
              {"sigma_angle", real(wp.sigma_angle)},
              {"max_cycles",
               [&](const auto& w, const auto& v) {
                 const double r = to_real(w, v);
                 if (r < 1.0 || r != static_cast<std::uint32_t>(r))
                   throw ConfigError(w + ": expected a positive integer");
                 cfg.max_cycles = static_cast<std::uint32_t>(r);
               }},
              {"history_stride",
               [&](const auto& w, const auto& v) {
                 const double r = to_real(w, v);
                 if (r < 1.0 || r != static_cast<std::uint32_t>(r))
                   throw ConfigError(w + ": expected a positive integer");
                 ap.history_stride = static_cast<std::uint32_t>(r);
               }},
          });
    } else if (name == "teams") {
      apply_section(section, name,
                    {
                        {"heterogeneous",
                         [&](const auto& w, const auto& v) {
                           std::vector<TemperamentKind> kinds;
                           for (const auto& word : split_words(v)) {
                             const auto k = parse_temperament(word);
                             if (!k) throw ConfigError(w + ": unknown temperament '" + word + "'");
                             kinds.push_back(*k);
                           }
                           cfg.heterogeneous = std::move(kinds);
                         }},
                    });
    } else {
      throw ConfigError("unknown section [" + name + "]");
    }
  }

  if (!saw_arena) throw ConfigError("missing [arena] section");
  if (!saw_beacon) throw ConfigError("missing [beacon] section");
  if (beacon_enabled) {
    if (!beacon_x_set || !beacon_y_set) throw ConfigError("[beacon] needs x and y");
    arena.beacon = Vec2{beacon_x, beacon_y};
  }
  ap.encoding.vision_range = wp.vision_range;
  return cfg;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    auto cfg = parse_scenario(text.str());
    return cfg;
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

World load_world(const ScenarioConfig& config, std::uint64_t seed, std::size_t agent_count) {
  return load_scenario(config.world, seed, agent_count);
}

}  // namespace emosim
