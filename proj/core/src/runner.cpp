#include "swflood/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "swflood/csv.hpp"

namespace swflood {

namespace {

std::vector<double> epoch_times(const SimulationConfig& cfg) {
  std::vector<double> e{0.0, cfg.t_end};
  for (double t : cfg.snapshot_times) {
    if (t > 0.0 && t < cfg.t_end) e.push_back(t);
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end(),
                      [](double a, double b) { return std::abs(a - b) < 1e-12; }),
          e.end());
  return e;
}

}  // namespace

RunReport run_simulation(Simulation& sim, const SimulationConfig& cfg,
                         const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);

  RunReport rep;
  rep.method = sim.name();
  rep.out_dir = out_dir;

  const std::vector<double> epochs = epoch_times(cfg);
  std::size_t next_epoch = 0;

  CsvWriter ledger(out_dir + "/ledger.csv");
  ledger.header({"step", "t", "dt", "channel_volume", "floodplain_volume",
                 "boundary_volume", "clipped_volume", "residual"});

  std::vector<double> raw_times;
  std::vector<std::vector<double>> raw_series(cfg.probes.size());
  auto record_probes = [&](double t) {
    raw_times.push_back(t);
    for (std::size_t p = 0; p < cfg.probes.size(); ++p) {
      raw_series[p].push_back(sim.surface_at(cfg.probes[p].x, cfg.probes[p].y));
    }
  };

  const auto wall0 = std::chrono::steady_clock::now();
  double t = 0.0;
  rep.initial_volume = sim.channel_volume() + sim.floodplain_volume();
  double vol_prev = rep.initial_volume;
  KahanSum boundary_net, clipped_net;

  record_probes(0.0);
  sim.write_snapshots(out_dir, epochs[next_epoch]);
  ++next_epoch;

  while (next_epoch < epochs.size()) {
    const double target = epochs[next_epoch];
    double dt = sim.stable_dt(cfg.cfl);
    if (!std::isfinite(dt) || dt <= 0.0) dt = cfg.fallback_dt;
    dt = std::min(dt, target - t);

    const StepResult r = sim.advance(dt);
    t += r.dt_used;
    ++rep.steps;
    boundary_net.add(r.boundary_volume);
    clipped_net.add(r.clipped_volume);

    const double ch_vol = sim.channel_volume();
    const double fp_vol = sim.floodplain_volume();
    const double vol = ch_vol + fp_vol;
    const double residual = vol - vol_prev - r.boundary_volume - r.clipped_volume;
    rep.max_ledger_residual = std::max(rep.max_ledger_residual, std::abs(residual));
    const double row[] = {static_cast<double>(rep.steps),
                          t,
                          r.dt_used,
                          ch_vol,
                          fp_vol,
                          r.boundary_volume,
                          r.clipped_volume,
                          residual};
    ledger.row(row);

    if (cfg.audit) {
      const double tol = 1e-10 * std::max({1.0, vol, vol_prev});
      if (std::abs(residual) > tol) {
        throw std::runtime_error("conservation ledger violated at step " +
                                 std::to_string(rep.steps) + ": residual " +
                                 std::to_string(residual) + " m^3");
      }
      try {
        sim.audit_invariants();
      } catch (const std::runtime_error& e) {
        throw std::runtime_error("step " + std::to_string(rep.steps) + ": " + e.what());
      }
    }
    vol_prev = vol;
    record_probes(t);

    if (t >= target - 1e-12) {
      t = target;
      raw_times.back() = target;
      sim.write_snapshots(out_dir, target);
      ++next_epoch;
    }
  }

  rep.final_time = t;
  rep.final_volume = vol_prev;
  rep.boundary_net = boundary_net.value();
  rep.clipped_net = clipped_net.value();
  rep.max_lateral_spread = sim.max_lateral_spread();
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();

  // Probe series resampled onto the uniform output grid by linear
  // interpolation of the per-step samples.
  const int nprobe_t = cfg.t_end > 0.0
                           ? static_cast<int>(std::floor(cfg.t_end / cfg.probe_dt + 1e-9)) + 1
                           : 1;
  rep.probe_times.resize(nprobe_t);
  rep.probe_series.assign(cfg.probes.size(), std::vector<double>(nprobe_t));
  std::size_t seg = 0;
  for (int k = 0; k < nprobe_t; ++k) {
    const double tk = std::min(k * cfg.probe_dt, rep.final_time);
    rep.probe_times[k] = tk;
    while (seg + 2 < raw_times.size() && raw_times[seg + 1] < tk) ++seg;
    const double t0 = raw_times[seg];
    const double t1 = raw_times[std::min(seg + 1, raw_times.size() - 1)];
    const double w = t1 > t0 ? std::clamp((tk - t0) / (t1 - t0), 0.0, 1.0) : 0.0;
    for (std::size_t p = 0; p < cfg.probes.size(); ++p) {
      const double v0 = raw_series[p][seg];
      const double v1 = raw_series[p][std::min(seg + 1, raw_times.size() - 1)];
      rep.probe_series[p][k] = v0 + w * (v1 - v0);
    }
  }

  {
    CsvWriter w(out_dir + "/probes.csv");
    std::vector<std::string> names{"t"};
    for (const ProbeSpec& p : cfg.probes) names.push_back(p.name);
    w.header(names);
    std::vector<double> row(names.size());
    for (int k = 0; k < nprobe_t; ++k) {
      row[0] = rep.probe_times[k];
      for (std::size_t p = 0; p < cfg.probes.size(); ++p) row[p + 1] = rep.probe_series[p][k];
      w.row(row);
    }
  }
  {
    CsvWriter w(out_dir + "/run.csv");
    w.header({"steps", "final_time", "initial_volume", "final_volume", "boundary_net",
              "clipped_net", "max_ledger_residual", "max_lateral_spread"});
    const double row[] = {static_cast<double>(rep.steps), rep.final_time,
                          rep.initial_volume,             rep.final_volume,
                          rep.boundary_net,               rep.clipped_net,
                          rep.max_ledger_residual,        rep.max_lateral_spread};
    w.row(row);
  }
  {
    // Wall clock lives outside the CSVs so identical runs produce identical
    // CSV bytes.
    std::FILE* f = std::fopen((out_dir + "/timing.txt").c_str(), "w");
    if (f) {
      std::fprintf(f, "method %s\nsteps %d\nwall_seconds %.6f\n", rep.method.c_str(),
                   rep.steps, rep.wall_seconds);
      std::fclose(f);
    }
  }
  return rep;
}

}  // namespace swflood
