#include <benchmark/benchmark.h>

#include <string>

#include "tracbf/barriers.hpp"
#include "tracbf/plants.hpp"
#include "tracbf/safety_filters.hpp"
#include "tracbf/sim_engine.hpp"

namespace {

using namespace tracbf;

std::string preset(const char* name) {
  return std::string(TRACBF_PRESET_DIR) + "/" + name;
}

VectorXd vec2(double a, double b) {
  VectorXd v(2);
  v << a, b;
  return v;
}

void BM_QpFilter(benchmark::State& state) {
  const VectorXd kd = vec2(1.0, -2.0);
  const HalfSpaceConstraint c{vec2(0.3, 0.8), 2.0};  // active at kd
  for (auto _ : state) benchmark::DoNotOptimize(qp_filter(kd, c));
}
BENCHMARK(BM_QpFilter);

void BM_SmoothFilter(benchmark::State& state) {
  const VectorXd kd = vec2(1.0, -2.0);
  const HalfSpaceConstraint c{vec2(0.3, 0.8), 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(smooth_filter(kd, c, 0.1));
}
BENCHMARK(BM_SmoothFilter);

void BM_SoftminBarrierEval(benchmark::State& state) {
  const SoftminBoxBarrier bar{0.523598775598298816, 10.0};
  const VectorXd q = vec2(0.31, -0.12);
  for (auto _ : state) benchmark::DoNotOptimize(bar.eval(q));
}
BENCHMARK(BM_SoftminBarrierEval);

void BM_LipRegressor(benchmark::State& state) {
  const VectorXd q = vec2(0.3, -0.4), qdot = vec2(1.1, 0.2),
                 r = vec2(0.9, -0.3), rdot = vec2(0.2, 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(lip_regressor(q, qdot, r, rdot));
}
BENCHMARK(BM_LipRegressor);

void BM_AffineClosedLoopStep(benchmark::State& state) {
  const ScenarioConfig cfg = load_scenario(preset("di_tracbf.cfg"));
  const AffineLoop loop(cfg);
  const VectorXd z = loop.initial_state();
  for (auto _ : state)
    benchmark::DoNotOptimize(loop.step(z, 0.0, cfg.sim.dt));
}
BENCHMARK(BM_AffineClosedLoopStep);

void BM_RobotClosedLoopStep(benchmark::State& state) {
  const ScenarioConfig cfg = load_scenario(preset("two_link_manifold.cfg"));
  const RobotLoop loop(cfg);
  const VectorXd z = loop.initial_state();
  for (auto _ : state)
    benchmark::DoNotOptimize(loop.step(z, 0.0, cfg.sim.dt));
}
BENCHMARK(BM_RobotClosedLoopStep);

}  // namespace

BENCHMARK_MAIN();
