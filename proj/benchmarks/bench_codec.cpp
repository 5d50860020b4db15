#include <benchmark/benchmark.h>

#include "emosim/net/wire.hpp"

using namespace emosim;
using namespace emosim::net;

namespace {

Sensors sample_frame() {
  Sensors s{42, {}};
  s.readings.front = 0.731;
  s.readings.beacon_bearing = -0.25;
  for (int i = 0; i < 8; ++i) s.readings.vision.push_back({0.1 * i, 1.0 + i, EmotionLabel::Relaxed});
  return s;
}

void BM_EncodeSensors(benchmark::State& state) {
  const WireMessage msg = sample_frame();
  for (auto _ : state) benchmark::DoNotOptimize(encode(msg));
}
BENCHMARK(BM_EncodeSensors);

void BM_DecodeSensors(benchmark::State& state) {
  const std::string line = encode(sample_frame());
  for (auto _ : state) benchmark::DoNotOptimize(decode(line));
}
BENCHMARK(BM_DecodeSensors);

void BM_DecodeMotors(benchmark::State& state) {
  const std::string line = encode(Motors{1234, {0.5, -0.125}});
  for (auto _ : state) benchmark::DoNotOptimize(decode(line));
}
BENCHMARK(BM_DecodeMotors);

}  // namespace
