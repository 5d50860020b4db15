#pragma once

// Values exchanged between the simulator and its agents travel at a fixed
// decimal resolution of 1e-6. The in-process engine applies the same rounding.

#include <string>
#include <string_view>

#include "emosim/mind.hpp"
#include "emosim/world.hpp"

namespace emosim {

inline constexpr int kWireDecimals = 6;

/// Fixed-point text form with six decimals, e.g. "-0.500000".
std::string format_real(double x);
void append_real(std::string& out, double x);

/// Nearest double to the six-decimal text form of `x`.
double quantize(double x);

SensorReadings quantize(const SensorReadings& readings);
AgentOutput quantize(const AgentOutput& output);

}  // namespace emosim
