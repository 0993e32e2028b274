#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "swflood/config.hpp"
#include "swflood/constants.hpp"
#include "swflood/geometry.hpp"
#include "swflood/vcm.hpp"

using namespace swflood;

namespace {

ChannelGeometry flat_section(double wall, int cols = 2, double dy = 0.25) {
  ChannelGeometry::Input in;
  in.x_edges = {0.0, 1.0};
  in.lateral_cells = cols;
  in.dy.assign(cols, dy);
  in.bed.assign(cols, 0.0);
  in.wall = {wall};
  return ChannelGeometry::build(std::move(in));
}

TensorGrid flat_grid(int cols = 2, double dy = 0.25) {
  return TensorGrid::uniform(0.0, 1.0, 1, 0.0, cols * dy, cols);
}

}  // namespace

TEST_CASE("distribute splits a full column") {
  const auto geom = flat_section(2.5);
  const std::vector<double> H = {2.7, 2.7};
  const std::vector<double> qx = {2.7, 2.7};  // u = 1
  const std::vector<double> qy = {0.0, 0.0};
  const ChannelSplit split = distribute_channel_state(geom, flat_grid(), H, qx, qy);

  CHECK(split.totals.area[0] == doctest::Approx(1.35).epsilon(1e-15));
  CHECK(split.totals.discharge[0] == doctest::Approx(1.35).epsilon(1e-15));
  for (int j = 0; j < 2; ++j) {
    CHECK(split.upper.h[j] == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(split.upper.qx[j] == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(split.upper.z_ref[j] == doctest::Approx(2.5).epsilon(1e-15));
  }
}

TEST_CASE("distribute leaves a non-full column empty") {
  const auto geom = flat_section(2.5);
  const std::vector<double> H = {0.3, 0.3};
  const std::vector<double> qx = {0.3, 0.3};
  const std::vector<double> qy = {0.0, 0.0};
  const ChannelSplit split = distribute_channel_state(geom, flat_grid(), H, qx, qy);

  CHECK(split.totals.area[0] == doctest::Approx(0.15).epsilon(1e-15));
  for (int j = 0; j < 2; ++j) {
    CHECK(split.upper.h[j] == 0.0);
    CHECK(split.upper.qx[j] == 0.0);
    CHECK(split.upper.qy[j] == 0.0);
  }
}

TEST_CASE("distribute over a stepped bed") {
  ChannelGeometry::Input in;
  in.x_edges = {0.0, 1.0};
  in.lateral_cells = 2;
  in.dy = {0.25, 0.25};
  in.bed = {0.0, 0.2};
  in.wall = {0.5};
  const auto geom = ChannelGeometry::build(std::move(in));

  // Flat surface at 0.8, above the wall everywhere.
  const std::vector<double> H = {0.8, 0.6};
  const std::vector<double> qx = {0.0, 0.0};
  const std::vector<double> qy = {0.0, 0.0};
  const ChannelSplit split = distribute_channel_state(geom, flat_grid(), H, qx, qy);
  CHECK(split.upper.h[0] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(split.upper.h[1] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(split.totals.area[0] == doctest::Approx(0.35).epsilon(1e-14));
}

TEST_CASE("distribute rejects negative depth") {
  const auto geom = flat_section(2.5);
  const std::vector<double> H = {-0.1, 0.3};
  const std::vector<double> z = {0.0, 0.0};
  CHECK_THROWS_AS(distribute_channel_state(geom, flat_grid(), H, z, z),
                  std::invalid_argument);
}

TEST_CASE("reconcile case 1 empties the upper layer") {
  const std::vector<double> dy = {0.25, 0.25};
  const std::vector<double> h2 = {0.1, 0.0};
  const std::vector<double> q2x = {0.05, 0.0};
  const std::vector<double> q2y = {0.02, 0.0};
  ReconcileIn in;
  in.area_new = 0.2;
  in.discharge_new = 0.4;
  in.bankfull_area = 1.25;
  in.width = 0.5;
  in.dy = dy;
  in.h2 = h2;
  in.q2x = q2x;
  in.q2y = q2y;
  in.dt = 0.1;
  const ReconcileOut out = reconcile_exchange(in);

  CHECK(out.area1 == 0.2);  // bitwise: the totals stay authoritative
  CHECK(out.discharge1 == 0.4);
  for (int j = 0; j < 2; ++j) {
    CHECK(out.h2[j] == 0.0);
    CHECK(out.q2x[j] == 0.0);
    CHECK(out.q2y[j] == 0.0);
  }
  CHECK(out.exchange_rate[0] == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("reconcile case 2a raises the upper layer uniformly") {
  const std::vector<double> dy = {0.25, 0.25};
  const std::vector<double> h2 = {0.1, 0.3};
  const std::vector<double> q2x = {0.05, 0.6};
  const std::vector<double> q2y = {0.0, 0.0};
  ReconcileIn in;
  in.area_new = 1.45;       // lower part 1.35 > bankfull 1.25
  in.discharge_new = 1.5125;  // lower discharge 1.35, so u1 = 1
  in.bankfull_area = 1.25;
  in.width = 0.5;
  in.dy = dy;
  in.h2 = h2;
  in.q2x = q2x;
  in.q2y = q2y;
  in.dt = 0.1;
  const ReconcileOut out = reconcile_exchange(in);

  CHECK(out.area1 == 1.25);  // bitwise bankfull
  CHECK(out.h2[0] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(out.h2[1] == doctest::Approx(0.5).epsilon(1e-14));
  // Entrained water arrives at the lower-layer velocity u1 = 1.
  CHECK(out.q2x[0] == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(out.q2x[1] == doctest::Approx(0.8).epsilon(1e-13));
  CHECK(out.discharge1 == doctest::Approx(1.25).epsilon(1e-13));
  CHECK(out.exchange_rate[0] == doctest::Approx(2.0).epsilon(1e-13));
  // Mass closure.
  const double a2 = out.h2[0] * 0.25 + out.h2[1] * 0.25;
  CHECK(out.area1 + a2 == doctest::Approx(in.area_new).epsilon(1e-14));
}

TEST_CASE("reconcile case 2b gap removal sweep") {
  const std::vector<double> dy = {1.0, 1.0, 1.0};
  const std::vector<double> h2 = {0.10, 0.0, 0.30};
  const std::vector<double> zero = {0.0, 0.0, 0.0};
  ReconcileIn in;
  in.area_new = 2.04;  // lower part 1.64 < bankfull 2.0, gap 0.36
  in.discharge_new = 0.0;
  in.bankfull_area = 2.0;
  in.width = 3.0;
  in.dy = dy;
  in.h2 = h2;
  in.q2x = zero;
  in.q2y = zero;
  in.dt = 0.1;
  const ReconcileOut out = reconcile_exchange(in);

  CHECK(out.area1 == 2.0);
  CHECK(out.h2[0] == 0.0);
  CHECK(out.h2[1] == 0.0);
  CHECK(out.h2[2] == doctest::Approx(0.04).epsilon(1e-10));
  for (int j = 0; j < 3; ++j) CHECK(out.h2[j] >= 0.0);
  // The sweep stops once the residual gap height is at most 1e-12, leaving up
  // to 1e-12 * width of area behind.
  const double a2 = out.h2[0] + out.h2[1] + out.h2[2];
  CHECK(std::abs(a2 - 0.04) <= 4e-12);
  CHECK(std::abs(out.area1 + a2 - in.area_new) <= 4e-12);
}

TEST_CASE("reconcile case 2b drains momentum with the water") {
  const std::vector<double> dy = {1.0};
  const std::vector<double> h2 = {0.2};
  const std::vector<double> q2x = {0.4};  // u = 2
  const std::vector<double> q2y = {0.1};
  ReconcileIn in;
  in.area_new = 1.1;  // lower part 0.9 < bankfull 1.0, gap 0.1
  in.discharge_new = 0.5;
  in.bankfull_area = 1.0;
  in.width = 1.0;
  in.dy = dy;
  in.h2 = h2;
  in.q2x = q2x;
  in.q2y = q2y;
  in.dt = 0.1;
  const ReconcileOut out = reconcile_exchange(in);

  CHECK(out.area1 == 1.0);
  CHECK(out.h2[0] == doctest::Approx(0.1).epsilon(1e-13));
  // Departing water carries its own velocity: dq = u * dh = 2 * (-0.1).
  CHECK(out.q2x[0] == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(out.q2y[0] == doctest::Approx(0.05).epsilon(1e-13));
  CHECK(out.discharge1 == doctest::Approx(0.5 - 0.2).epsilon(1e-13));
}

TEST_CASE("assemble recombines the layers") {
  const auto geom = flat_section(2.5);
  const std::vector<double> a1 = {1.25};  // bankfull: h1 = 2.5
  const std::vector<double> q1 = {2.5};   // u1 = 2
  Field2d upper = Field2d::zeros(flat_grid());
  upper.h = {0.2, 0.0};
  upper.qx = {0.3, 0.0};
  upper.qy = {0.1, 0.0};
  const AssembledChannel full = assemble_channel(geom, a1, q1, upper);

  CHECK(full.H[0] == doctest::Approx(2.7).epsilon(1e-14));
  CHECK(full.qx[0] == doctest::Approx(5.3).epsilon(1e-14));
  CHECK(full.qy[0] == doctest::Approx(2.7 * 0.5).epsilon(1e-14));
  CHECK(full.H[1] == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(full.qx[1] == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(full.qy[1] == 0.0);
}

TEST_CASE("distribute then assemble round trip") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> wd(0.5, 2.0);
  std::uniform_real_distribution<double> bd(0.0, 0.4);
  std::uniform_real_distribution<double> ed(0.01, 1.5);
  std::uniform_real_distribution<double> ud(-2.0, 2.0);

  for (int trial = 0; trial < 200; ++trial) {
    ChannelGeometry::Input in;
    in.x_edges = {0.0, 1.0};
    in.lateral_cells = 4;
    in.dy.assign(4, 0.25);
    const double wall = wd(rng);
    in.wall = {wall};
    in.bed.resize(4);
    for (auto& b : in.bed) b = bd(rng);
    const auto geom = ChannelGeometry::build(std::move(in));
    const TensorGrid grid = flat_grid(4);

    // Full state: flat surface above the wall, laterally uniform velocity.
    const double eta = wall + ed(rng);
    const double u = ud(rng), v = ud(rng);
    std::vector<double> H(4), qx(4), qy(4);
    for (int j = 0; j < 4; ++j) {
      H[j] = eta - geom.bed(0, j);
      qx[j] = H[j] * u;
      qy[j] = H[j] * v;
    }
    const ChannelSplit split = distribute_channel_state(geom, grid, H, qx, qy);
    std::vector<double> a1 = {std::min(split.totals.area[0], geom.bankfull_area(0))};
    double q2 = 0.0;
    for (int j = 0; j < 4; ++j) q2 += split.upper.qx[j] * geom.dy(0, j);
    std::vector<double> q1 = {split.totals.discharge[0] - q2};

    const AssembledChannel full = assemble_channel(geom, a1, q1, split.upper);
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(full.H[j] - H[j]) <= 1e-14 * std::max(1.0, H[j]));
      CHECK(std::abs(full.qx[j] - qx[j]) <= 1e-12 * std::max(1.0, std::abs(qx[j])));
      if (split.upper.h[j] > kDryDepth) {
        CHECK(std::abs(full.qy[j] - qy[j]) <= 1e-12 * std::max(1.0, std::abs(qy[j])));
      } else {
        CHECK(full.qy[j] == 0.0);
      }
    }
  }
}

TEST_CASE("non-full random states never touch the upper layer") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> bd(0.0, 0.4);
  std::uniform_real_distribution<double> fd(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    ChannelGeometry::Input in;
    in.x_edges = {0.0, 1.0};
    in.lateral_cells = 3;
    in.dy.assign(3, 0.2);
    in.bed.resize(3);
    for (auto& b : in.bed) b = bd(rng);
    const double wall = 0.4 + fd(rng);
    in.wall = {wall};
    const auto geom = ChannelGeometry::build(std::move(in));

    std::vector<double> H(3), qx(3), qy(3);
    for (int j = 0; j < 3; ++j) {
      // Surface strictly below the wall in every column.
      const double beta = wall - geom.bed(0, j);
      H[j] = fd(rng) * 0.999 * beta;
      qx[j] = H[j] * (fd(rng) - 0.5);
      qy[j] = H[j] * (fd(rng) - 0.5);
    }
    const ChannelSplit split =
        distribute_channel_state(geom, flat_grid(3, 0.2), H, qx, qy);
    for (int j = 0; j < 3; ++j) {
      CHECK(split.upper.h[j] == 0.0);
      CHECK(split.upper.qx[j] == 0.0);
      CHECK(split.upper.qy[j] == 0.0);
    }
  }
}

TEST_CASE("vcm lake at rest stays put") {
  SimulationConfig cfg = make_elevated_floodplain_config();
  cfg.init.clear();
  cfg.init_depth = 0.0;
  // Flat surface at 2.8: 2.8 m in the channel (bed 0), 2.3 m on the 0.5 m
  // floodplain, overtopping every wall.
  cfg.init.push_back({cfg.channel_x0, cfg.channel_x1, cfg.channel_y0, cfg.channel_y1,
                      2.8, 0.0, 0.0});
  cfg.init.push_back({cfg.fp_x0, cfg.fp_x1, cfg.fp_y0, cfg.fp_y1, 2.3, 0.0, 0.0});
  cfg.t_end = 1.0;
  VcmSimulation sim(cfg);

  const double v0 = sim.channel_volume() + sim.floodplain_volume();
  for (int k = 0; k < 50; ++k) {
    const double dt = std::min(sim.stable_dt(0.95), 0.05);
    sim.advance(dt);
    sim.audit_invariants();
  }
  CHECK(sim.channel_volume() + sim.floodplain_volume() ==
        doctest::Approx(v0).epsilon(1e-12));
  for (double x : {1.0, 9.0, 13.0, 18.0}) {
    CHECK(std::abs(sim.surface_at(x, 2.05) - 2.8) <= 1e-12);
  }
  CHECK(std::abs(sim.surface_at(13.0, 0.9) - 2.8) <= 1e-12);
  for (double q : sim.totals().discharge) CHECK(std::abs(q) <= 1e-10);
}

TEST_CASE("vcm closed dam break conserves mass and passes audits") {
  SimulationConfig cfg = make_dam_break_floodplain_config();
  cfg.channel_east = SideBc::wall;
  cfg.fp_east = SideBc::wall;
  cfg.t_end = 4.0;
  VcmSimulation sim(cfg);

  const double v0 = sim.channel_volume() + sim.floodplain_volume();
  double t = 0.0, clipped = 0.0;
  while (t < cfg.t_end) {
    double dt = std::min(sim.stable_dt(cfg.cfl), cfg.t_end - t);
    if (!std::isfinite(dt) || dt <= 0.0) dt = cfg.fallback_dt;
    const StepResult r = sim.advance(dt);
    t += r.dt_used;
    clipped += r.clipped_volume;
    CHECK(r.boundary_volume == 0.0);
    sim.audit_invariants();
  }
  const double v1 = sim.channel_volume() + sim.floodplain_volume();
  CHECK(std::abs(v1 - v0 - clipped) <= 1e-10 * v0);
  CHECK(sim.floodplain_volume() > 0.0);  // the flood really happened
  CHECK(sim.max_lateral_spread() >= 0.0);
}

TEST_CASE("no water leaves a non-full channel") {
  SimulationConfig cfg = make_elevated_floodplain_config();
  cfg.init.clear();
  cfg.init_depth = 0.0;
  // 0.4 m everywhere in the channel: below the lowest wall (0.5), floodplain
  // bone dry.  Nothing may spill, to the last bit.
  cfg.init.push_back({cfg.channel_x0, cfg.channel_x1, cfg.channel_y0, cfg.channel_y1,
                      0.4, 0.0, 0.0});
  cfg.t_end = 2.0;
  VcmSimulation sim(cfg);

  double t = 0.0;
  while (t < cfg.t_end) {
    double dt = std::min(sim.stable_dt(cfg.cfl), cfg.t_end - t);
    if (!std::isfinite(dt) || dt <= 0.0) dt = cfg.fallback_dt;
    const StepResult r = sim.advance(dt);
    t += r.dt_used;
    sim.audit_invariants();
    CHECK_FALSE(sim.any_open_bank_cell_full());
    CHECK(sim.floodplain_volume() == 0.0);
    double upper_vol = 0.0;
    for (double h : sim.upper().h) upper_vol += h;
    CHECK(upper_vol == 0.0);
  }
}

TEST_CASE("vcm advance is deterministic") {
  const SimulationConfig cfg = make_dam_break_floodplain_config();
  VcmSimulation a(cfg), b(cfg);
  for (int k = 0; k < 30; ++k) {
    const double dt = a.stable_dt(cfg.cfl);
    CHECK(dt == b.stable_dt(cfg.cfl));
    a.advance(dt);
    b.advance(dt);
  }
  CHECK(a.channel_volume() == b.channel_volume());
  CHECK(a.floodplain_volume() == b.floodplain_volume());
  for (std::size_t c = 0; c < a.upper().h.size(); ++c) {
    CHECK(a.upper().h[c] == b.upper().h[c]);
  }
  for (std::size_t i = 0; i < a.totals().area.size(); ++i) {
    CHECK(a.totals().area[i] == b.totals().area[i]);
    CHECK(a.totals().discharge[i] == b.totals().discharge[i]);
  }
}
