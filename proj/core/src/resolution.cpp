#include "emosim/resolution.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace emosim {

void append_real(std::string& out, double x) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite value cannot be encoded");
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed, kWireDecimals);
  if (res.ec != std::errc{}) throw std::domain_error("value too large to encode");
  out.append(buf.data(), res.ptr);
}

std::string format_real(double x) {
  std::string s;
  append_real(s, x);
  return s;
}

double quantize(double x) {
  const std::string s = format_real(x);
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

SensorReadings quantize(const SensorReadings& r) {
  SensorReadings q = r;
  q.front = quantize(r.front);
  q.left = quantize(r.left);
  q.right = quantize(r.right);
  if (r.beacon_bearing) q.beacon_bearing = quantize(*r.beacon_bearing);
  q.compass = quantize(r.compass);
  for (auto& v : q.vision) {
    v.bearing = quantize(v.bearing);
    v.distance = quantize(v.distance);
  }
  return q;
}

AgentOutput quantize(const AgentOutput& o) {
  AgentOutput q = o;
  q.command = {quantize(o.command.left), quantize(o.command.right)};
  q.pad = {quantize(o.pad.pleasure), quantize(o.pad.arousal), quantize(o.pad.dominance)};
  q.motor_ceiling = quantize(o.motor_ceiling);
  q.sensor_reach = quantize(o.sensor_reach);
  return q;
}

}  // namespace emosim
