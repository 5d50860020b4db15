#include "emosim/net/wire.hpp"

#include <charconv>
#include <optional>
#include <stdexcept>

#include "emosim/resolution.hpp"

namespace emosim::net {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void put_uint(std::string& out, std::uint64_t v) {
  out += ' ';
  out += std::to_string(v);
}

void put_real(std::string& out, double v) {
  out += ' ';
  append_real(out, v);
}

void put_word(std::string& out, std::string_view w) {
  out += ' ';
  out += w;
}

// Tokenizer over single-space separated fields; rejects empty tokens.
class Fields {
 public:
  explicit Fields(std::string_view line) : rest_(line) {}

  std::optional<std::string_view> word() {
    if (done_) return std::nullopt;
    const auto pos = rest_.find(' ');
    std::string_view tok = rest_.substr(0, pos);
    if (pos == std::string_view::npos) {
      done_ = true;
    } else {
      rest_.remove_prefix(pos + 1);
    }
    if (tok.empty()) return std::nullopt;
    return tok;
  }

  /// Remainder of the line, consumed verbatim.
  std::optional<std::string_view> tail() {
    if (done_) return std::nullopt;
    done_ = true;
    return rest_;
  }

  bool at_end() const { return done_; }

 private:
  std::string_view rest_;
  bool done_ = false;
};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::optional<std::uint64_t> parse_uint(std::optional<std::string_view> tok) {
  if (!tok || !all_digits(*tok)) return std::nullopt;
  if (tok->size() > 1 && tok->front() == '0') return std::nullopt;
  std::uint64_t v = 0;
  const auto res = std::from_chars(tok->data(), tok->data() + tok->size(), v);
  if (res.ec != std::errc{} || res.ptr != tok->data() + tok->size()) return std::nullopt;
  return v;
}

// Canonical form only: -?digits.dddddd
std::optional<double> parse_real(std::optional<std::string_view> tok) {
  if (!tok) return std::nullopt;
  std::string_view s = *tok;
  std::string_view body = s;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto dot = body.find('.');
  if (dot == std::string_view::npos || dot == 0) return std::nullopt;
  const auto ip = body.substr(0, dot);
  const auto fp = body.substr(dot + 1);
  if (!all_digits(ip) || fp.size() != kWireDecimals || !all_digits(fp)) return std::nullopt;
  if (ip.size() > 1 && ip.front() == '0') return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<bool> parse_flag(std::optional<std::string_view> tok) {
  if (tok == "0") return false;
  if (tok == "1") return true;
  return std::nullopt;
}

std::optional<EmotionLabel> parse_label(std::optional<std::string_view> tok) {
  if (!tok) return std::nullopt;
  return parse_emotion_label(*tok);
}

bool valid_token(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t') return false;
  return true;
}

Error parse_error(std::string_view why) { return Error{"parse", std::string(why)}; }

WireMessage decode_register(Fields& f) {
  const auto role = f.word();
  const auto name = f.word();
  if (!role || !name || !f.at_end()) return parse_error("REG expects role and name");
  if (*role == "agent") return Register{Role::Agent, std::string(*name)};
  if (*role == "viewer") return Register{Role::Viewer, std::string(*name)};
  return parse_error("REG role must be agent or viewer");
}

WireMessage decode_welcome(Fields& f) {
  const auto id = parse_uint(f.word());
  const auto period = parse_real(f.word());
  if (!id || !period || !f.at_end()) return parse_error("malformed WEL");
  return Welcome{static_cast<AgentId>(*id), *period};
}

WireMessage decode_sensors(Fields& f) {
  Sensors m;
  const auto cycle = parse_uint(f.word());
  const auto front = parse_real(f.word());
  const auto left = parse_real(f.word());
  const auto right = parse_real(f.word());
  const auto beacon_tok = f.word();
  const auto compass = parse_real(f.word());
  const auto ground = parse_flag(f.word());
  const auto collision = parse_flag(f.word());
  const auto count = parse_uint(f.word());
  if (!cycle || !front || !left || !right || !beacon_tok || !compass || !ground ||
      !collision || !count)
    return parse_error("malformed SEN");
  m.cycle = *cycle;
  m.readings.front = *front;
  m.readings.left = *left;
  m.readings.right = *right;
  if (*beacon_tok != "-") {
    const auto beacon = parse_real(beacon_tok);
    if (!beacon) return parse_error("malformed SEN beacon bearing");
    m.readings.beacon_bearing = *beacon;
  }
  m.readings.compass = *compass;
  m.readings.ground = *ground;
  m.readings.collision = *collision;
  for (std::uint64_t i = 0; i < *count; ++i) {
    const auto bearing = parse_real(f.word());
    const auto dist = parse_real(f.word());
    const auto label = parse_label(f.word());
    if (!bearing || !dist || !label) return parse_error("malformed SEN vision entry");
    m.readings.vision.push_back({*bearing, *dist, *label});
  }
  if (!f.at_end()) return parse_error("trailing fields in SEN");
  return m;
}

WireMessage decode_motors(Fields& f) {
  const auto cycle = parse_uint(f.word());
  const auto l = parse_real(f.word());
  const auto r = parse_real(f.word());
  if (!cycle || !l || !r || !f.at_end()) return parse_error("malformed MOT");
  return Motors{*cycle, {*l, *r}};
}

WireMessage decode_status(Fields& f) {
  const auto cycle = parse_uint(f.word());
  const auto p = parse_real(f.word());
  const auto a = parse_real(f.word());
  const auto d = parse_real(f.word());
  const auto ceiling = parse_real(f.word());
  const auto reach = parse_real(f.word());
  if (!cycle || !p || !a || !d || !ceiling || !reach || !f.at_end())
    return parse_error("malformed STA");
  return Status{*cycle, {*p, *a, *d}, *ceiling, *reach};
}

WireMessage decode_view(Fields& f) {
  ViewFrame m;
  const auto cycle = parse_uint(f.word());
  const auto count = parse_uint(f.word());
  if (!cycle || !count) return parse_error("malformed VIEW");
  m.cycle = *cycle;
  for (std::uint64_t i = 0; i < *count; ++i) {
    const auto id = parse_uint(f.word());
    const auto x = parse_real(f.word());
    const auto y = parse_real(f.word());
    const auto heading = parse_real(f.word());
    const auto label = parse_label(f.word());
    const auto p = parse_real(f.word());
    const auto a = parse_real(f.word());
    const auto d = parse_real(f.word());
    const auto fin = parse_flag(f.word());
    if (!id || !x || !y || !heading || !label || !p || !a || !d || !fin)
      return parse_error("malformed VIEW entry");
    m.agents.push_back(
        {static_cast<AgentId>(*id), {*x, *y}, *heading, *label, {*p, *a, *d}, *fin});
  }
  if (!f.at_end()) return parse_error("trailing fields in VIEW");
  return m;
}

WireMessage decode_finish(Fields& f) {
  const auto cycle = parse_uint(f.word());
  if (!cycle || !f.at_end()) return parse_error("malformed FIN");
  return Finish{*cycle};
}

WireMessage decode_error(Fields& f) {
  const auto code = f.word();
  if (!code) return parse_error("malformed ERR");
  Error e{std::string(*code), {}};
  if (!f.at_end()) {
    const auto text = f.tail();
    if (!text || text->empty()) return parse_error("malformed ERR text");
    e.text = std::string(*text);
  }
  return e;
}

}  // namespace

std::string encode(const WireMessage& msg) {
  std::string out;
  out.reserve(64);
  std::visit(
      Overloaded{
          [&](const Register& m) {
            if (!valid_token(m.name)) throw std::invalid_argument("register name must be a token");
            out = "REG";
            put_word(out, m.role == Role::Agent ? "agent" : "viewer");
            put_word(out, m.name);
          },
          [&](const Welcome& m) {
            out = "WEL";
            put_uint(out, static_cast<std::uint64_t>(m.agent_id));
            put_real(out, m.cycle_period);
          },
          [&](const Sensors& m) {
            const auto& r = m.readings;
            out = "SEN";
            put_uint(out, m.cycle);
            put_real(out, r.front);
            put_real(out, r.left);
            put_real(out, r.right);
            if (r.beacon_bearing) {
              put_real(out, *r.beacon_bearing);
            } else {
              put_word(out, "-");
            }
            put_real(out, r.compass);
            put_word(out, r.ground ? "1" : "0");
            put_word(out, r.collision ? "1" : "0");
            put_uint(out, r.vision.size());
            for (const auto& v : r.vision) {
              put_real(out, v.bearing);
              put_real(out, v.distance);
              put_word(out, to_string(v.label));
            }
          },
          [&](const Motors& m) {
            out = "MOT";
            put_uint(out, m.cycle);
            put_real(out, m.command.left);
            put_real(out, m.command.right);
          },
          [&](const Status& m) {
            out = "STA";
            put_uint(out, m.cycle);
            put_real(out, m.pad.pleasure);
            put_real(out, m.pad.arousal);
            put_real(out, m.pad.dominance);
            put_real(out, m.motor_ceiling);
            put_real(out, m.sensor_reach);
          },
          [&](const ViewFrame& m) {
            out = "VIEW";
            put_uint(out, m.cycle);
            put_uint(out, m.agents.size());
            for (const auto& a : m.agents) {
              put_uint(out, static_cast<std::uint64_t>(a.id));
              put_real(out, a.position.x);
              put_real(out, a.position.y);
              put_real(out, a.heading);
              put_word(out, to_string(a.label));
              put_real(out, a.pad.pleasure);
              put_real(out, a.pad.arousal);
              put_real(out, a.pad.dominance);
              put_word(out, a.finished ? "1" : "0");
            }
          },
          [&](const Finish& m) {
            out = "FIN";
            put_uint(out, m.cycle);
          },
          [&](const Error& m) {
            if (!valid_token(m.code)) throw std::invalid_argument("error code must be a token");
            if (m.text.find('\n') != std::string::npos)
              throw std::invalid_argument("error text must be a single line");
            out = "ERR";
            put_word(out, m.code);
            if (!m.text.empty()) put_word(out, m.text);
          },
      },
      msg);
  out += '\n';
  return out;
}

WireMessage decode(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  if (line.find('\n') != std::string_view::npos) return parse_error("embedded newline");
  Fields f(line);
  const auto tag = f.word();
  if (!tag) return parse_error("empty line");
  if (*tag == "REG") return decode_register(f);
  if (*tag == "WEL") return decode_welcome(f);
  if (*tag == "SEN") return decode_sensors(f);
  if (*tag == "MOT") return decode_motors(f);
  if (*tag == "STA") return decode_status(f);
  if (*tag == "VIEW") return decode_view(f);
  if (*tag == "FIN") return decode_finish(f);
  if (*tag == "ERR") return decode_error(f);
  return parse_error("unknown message tag");
}

}  // namespace emosim::net
