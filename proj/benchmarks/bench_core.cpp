#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "swflood/config.hpp"
#include "swflood/fv_core.hpp"
#include "swflood/geometry.hpp"
#include "swflood/simulation.hpp"
#include "swflood/swe2d.hpp"

namespace {

using namespace swflood;

void bm_hll_flux(benchmark::State& state) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> hd(0.0, 2.0);
  std::uniform_real_distribution<double> qd(-3.0, 3.0);
  std::vector<std::pair<EdgeState, EdgeState>> pairs(1024);
  for (auto& [l, r] : pairs) {
    l = {hd(rng), qd(rng), qd(rng)};
    r = {rng() % 8 == 0 ? 0.0 : hd(rng), qd(rng), qd(rng)};
  }
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [l, r] = pairs[k++ & 1023];
    benchmark::DoNotOptimize(hll_flux(l, r, kGravity));
  }
}
BENCHMARK(bm_hll_flux);

void bm_surface_for_area(benchmark::State& state) {
  const int ny = static_cast<int>(state.range(0));
  ChannelGeometry::Input in;
  in.x_edges = {0.0, 1.0};
  in.lateral_cells = ny;
  in.dy.assign(ny, 1.0 / ny);
  in.bed.resize(ny);
  for (int j = 0; j < ny; ++j) {
    const double s = (j + 0.5) / ny - 0.5;
    in.bed[j] = 2.0 * s * s;
  }
  in.wall = {0.6};
  const auto geom = ChannelGeometry::build(std::move(in));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ad(1e-4, geom.bankfull_area(0));
  std::vector<double> areas(1024);
  for (auto& a : areas) a = ad(rng);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(geom.surface_for_area(0, areas[k++ & 1023]));
  }
}
BENCHMARK(bm_surface_for_area)->Arg(8)->Arg(64);

void bm_step_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Field2d f = Field2d::zeros(TensorGrid::uniform(0.0, 10.0, n, 0.0, 5.0, n / 2));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n / 2; ++j) f.h[f.idx(i, j)] = i < n / 2 ? 1.0 : 0.1;
  }
  Step2dOptions opt;
  opt.manning_n = 0.02;
  const double dt = 0.2 * (10.0 / n) / 5.0;
  for (auto _ : state) {
    step_2d(f, dt, opt);
  }
  state.SetItemsProcessed(state.iterations() * n * (n / 2));
}
BENCHMARK(bm_step_2d)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void bm_advance(benchmark::State& state, Method m) {
  SimulationConfig cfg = make_dam_break_floodplain_config();
  cfg.method = m;
  cfg.audit = false;
  auto sim = build_simulation(cfg);
  for (auto _ : state) {
    double dt = sim->stable_dt(cfg.cfl);
    if (!std::isfinite(dt) || dt <= 0.0) dt = cfg.fallback_dt;
    benchmark::DoNotOptimize(sim->advance(dt));
  }
}
void bm_full2d_advance(benchmark::State& s) { bm_advance(s, Method::full2d); }
void bm_vcm_advance(benchmark::State& s) { bm_advance(s, Method::vcm); }
void bm_fbm_advance(benchmark::State& s) { bm_advance(s, Method::fbm); }
BENCHMARK(bm_full2d_advance)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_vcm_advance)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_fbm_advance)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
