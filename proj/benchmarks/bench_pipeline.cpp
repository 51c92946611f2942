#include "agisim/config.hpp"
#include "agisim/simulator.hpp"
#include "agisim/trajectory.hpp"
#include "agisim/verifier.hpp"

#include <benchmark/benchmark.h>

using namespace agisim;

namespace {

std::vector<PoseSample> flight(double seconds) {
  auto poses = synth_flight_plan(default_maneuvering_plan({0.78, 0.12, 300.0}), 50.0);
  poses.resize(static_cast<std::size_t>(seconds * 50.0) + 1);
  return poses;
}

void BM_ParseDatagram(benchmark::State& state) {
  const std::string rec =
      "12.34,45.000001,7.0000002,300.5,51.2,-3.4,0.25,0.012,-0.034,1.2345";
  const StreamConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(parse_fdm_datagram(rec, cfg));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ParseDatagram);

void BM_PipelineStep(benchmark::State& state) {
  const auto poses = flight(20.0);
  for (auto _ : state) {
    Pipeline p(GimbalConfig::reference_motion(), default_params(1));
    for (const auto& pose : poses) benchmark::DoNotOptimize(p.step(pose));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(poses.size()));
}
BENCHMARK(BM_PipelineStep)->Unit(benchmark::kMillisecond);

void BM_StrapdownStep(benchmark::State& state) {
  const SimulationResult sim = simulate(flight(20.0), GimbalConfig::reference_motion(), default_params(1));
  for (auto _ : state) {
    NavState s = nav_state_from_pose(sim.imu_truth.front());
    for (const auto& imu : sim.imu) s = strapdown_step(s, imu);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sim.imu.size()));
}
BENCHMARK(BM_StrapdownStep)->Unit(benchmark::kMillisecond);

void BM_ClosedLoop200s(benchmark::State& state) {
  const RunConfig cfg = parse_config("trajectory.profile = maneuvering\n");
  const auto poses = build_trajectory(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_closed_loop(poses, cfg.gimbal_config(), cfg.imu_params(), cfg.aiding_config()));
  }
}
BENCHMARK(BM_ClosedLoop200s)->Unit(benchmark::kMillisecond);

void BM_ParseConfig(benchmark::State& state) {
  const std::string text = to_config_text(RunConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(parse_config(text));
}
BENCHMARK(BM_ParseConfig);

}  // namespace

BENCHMARK_MAIN();
