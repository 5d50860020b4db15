#pragma once

#include <cstdint>
#include <random>

namespace emosim {

enum class StreamTag : std::uint64_t {
  SensorNoise = 0x5e5e,
  Profile = 0x9f0f,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent per-agent stream seed; agent order never changes what a given
/// agent draws.
inline std::uint64_t derive_seed(std::uint64_t master, StreamTag tag, std::uint64_t index) {
  return splitmix64(splitmix64(master ^ static_cast<std::uint64_t>(tag)) + index);
}

inline std::mt19937_64 make_stream(std::uint64_t master, StreamTag tag, std::uint64_t index) {
  return std::mt19937_64(derive_seed(master, tag, index));
}

}  // namespace emosim
