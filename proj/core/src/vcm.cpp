#include "swflood/vcm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "swflood/csv.hpp"
#include "field_init.hpp"

namespace swflood {

ChannelSplit distribute_channel_state(const ChannelGeometry& geom, TensorGrid grid,
                                      std::span<const double> H,
                                      std::span<const double> qx,
                                      std::span<const double> qy, double dry) {
  const int n = geom.cells();
  const int ny = geom.lateral_cells();
  if (grid.nx() != n || grid.ny() != ny) {
    throw std::invalid_argument("distribute_channel_state: grid does not match geometry");
  }
  if (H.size() != static_cast<std::size_t>(n) * ny || qx.size() != H.size() ||
      qy.size() != H.size()) {
    throw std::invalid_argument("distribute_channel_state: field size mismatch");
  }

  ChannelSplit out;
  out.upper = Field2d::zeros(std::move(grid));
  out.totals.area.assign(n, 0.0);
  out.totals.discharge.assign(n, 0.0);

  for (int i = 0; i < n; ++i) {
    double a = 0.0, q = 0.0;
    for (int j = 0; j < ny; ++j) {
      const int c = i * ny + j;
      if (H[c] < 0.0) throw std::invalid_argument("distribute_channel_state: negative depth");
      const double beta = geom.bankfull_depth(i, j);
      const double h1 = std::min(H[c], beta);
      const double h2 = H[c] - h1;
      double u = 0.0, v = 0.0;
      if (H[c] > dry) {
        u = qx[c] / H[c];
        v = qy[c] / H[c];
      }
      out.upper.z_ref[c] = geom.bed(i, j) + h1;
      out.upper.h[c] = h2;
      out.upper.qx[c] = h2 > dry ? h2 * u : 0.0;
      out.upper.qy[c] = h2 > dry ? h2 * v : 0.0;
      a += H[c] * geom.dy(i, j);
      q += qx[c] * geom.dy(i, j);
    }
    out.totals.area[i] = a;
    out.totals.discharge[i] = q;
  }
  return out;
}

ReconcileOut reconcile_exchange(const ReconcileIn& in) {
  const int ny = static_cast<int>(in.h2.size());
  ReconcileOut out;
  out.h2.assign(in.h2.begin(), in.h2.end());
  out.q2x.resize(ny);
  out.q2y.resize(ny);
  out.exchange_rate.resize(ny);
  out.iface_ux.resize(ny);
  out.iface_uy.resize(ny);

  double a2_star = 0.0, q2x_star = 0.0;
  for (int j = 0; j < ny; ++j) {
    a2_star += in.h2[j] * in.dy[j];
    q2x_star += in.q2x[j] * in.dy[j];
  }
  const double a1_star = in.area_new - a2_star;
  const double q1_star = in.discharge_new - q2x_star;

  if (in.area_new < in.bankfull_area) {
    // Case 1: the channel is not full; everything belongs to the lower layer.
    std::fill(out.h2.begin(), out.h2.end(), 0.0);
    out.area1 = in.area_new;
  } else if (a1_star >= in.bankfull_area) {
    // Case 2a: spread the lower-layer surplus uniformly over the upper layer.
    const double excess_h = (a1_star - in.bankfull_area) / in.width;
    for (int j = 0; j < ny; ++j) out.h2[j] += excess_h;
    out.area1 = in.bankfull_area;
  } else {
    // Case 2b: remove the lower-layer deficit from the upper layer, sweeping
    // with clamping at zero until the residual gap height is below tolerance.
    double a_gap = in.bankfull_area - a1_star;
    double h_gap = a_gap / in.width;
    const double tol = 1e-12;
    int pass = 0;
    while (h_gap > tol) {
      if (++pass > 10000) {
        throw std::runtime_error("reconcile_exchange: gap removal did not converge (gap " +
                                 std::to_string(h_gap) + " m)");
      }
      for (int j = 0; j < ny; ++j) {
        const double before = out.h2[j];
        out.h2[j] = std::max(0.0, out.h2[j] - h_gap);
        a_gap -= (before - out.h2[j]) * in.dy[j];
      }
      h_gap = a_gap / in.width;
    }
    out.area1 = in.bankfull_area;
  }

  const double u1_star = a1_star > in.dry * in.width ? q1_star / a1_star : 0.0;
  for (int j = 0; j < ny; ++j) {
    const double dh = out.h2[j] - in.h2[j];
    out.exchange_rate[j] = in.dt > 0.0 ? dh / in.dt : 0.0;
    double ux = 0.0, uy = 0.0;
    if (dh > 0.0) {
      ux = u1_star;
    } else if (in.h2[j] > in.dry) {
      ux = in.q2x[j] / in.h2[j];
      uy = in.q2y[j] / in.h2[j];
    }
    out.iface_ux[j] = ux;
    out.iface_uy[j] = uy;
    out.q2x[j] = in.q2x[j] + ux * dh;
    out.q2y[j] = in.q2y[j] + uy * dh;
    if (out.h2[j] <= in.dry) {
      out.q2x[j] = 0.0;
      out.q2y[j] = 0.0;
    }
  }

  double q2x_sum = 0.0;
  for (int j = 0; j < ny; ++j) q2x_sum += out.q2x[j] * in.dy[j];
  out.discharge1 = in.discharge_new - q2x_sum;
  return out;
}

AssembledChannel assemble_channel(const ChannelGeometry& geom,
                                  std::span<const double> area1,
                                  std::span<const double> discharge1,
                                  const Field2d& upper, double dry) {
  const int n = geom.cells();
  const int ny = geom.lateral_cells();
  AssembledChannel out;
  out.H.resize(static_cast<std::size_t>(n) * ny);
  out.qx.resize(out.H.size());
  out.qy.resize(out.H.size());
  std::vector<double> h1(ny);
  for (int i = 0; i < n; ++i) {
    geom.depth_profile(i, area1[i], h1);
    const double u1 = area1[i] > dry * geom.top_width(i) ? discharge1[i] / area1[i] : 0.0;
    for (int j = 0; j < ny; ++j) {
      const int c = i * ny + j;
      const double h2 = upper.h[c];
      out.H[c] = h1[j] + h2;
      out.qx[c] = h1[j] * u1 + upper.qx[c];
      const double v2 = h2 > dry ? upper.qy[c] / h2 : 0.0;
      out.qy[c] = out.H[c] * v2;
    }
  }
  return out;
}

VcmSimulation::VcmSimulation(const SimulationConfig& cfg)
    : cfg_(cfg), geom_(detail::build_channel_geometry(cfg, cfg.upper_rows, false)) {
  const int n = geom_.cells();
  const int ny = geom_.lateral_cells();

  TensorGrid cgrid = TensorGrid::uniform(cfg.channel_x0, cfg.channel_x1, n,
                                         cfg.channel_y0, cfg.channel_y1, ny);
  Field2d init = Field2d::zeros(cgrid);
  detail::fill_initial_depth(init, cfg_);
  ChannelSplit split = distribute_channel_state(geom_, std::move(cgrid), init.h, init.qx,
                                                init.qy);
  ch_ = std::move(split.totals);
  upper_ = std::move(split.upper);

  a1_.assign(n, 0.0);
  q1_.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    a1_[i] = std::min(ch_.area[i], geom_.bankfull_area(i));
    double q2x = 0.0;
    for (int j = 0; j < ny; ++j) q2x += upper_.qx[i * ny + j] * geom_.dy(i, j);
    q1_[i] = ch_.discharge[i] - q2x;
  }

  if (cfg_.has_floodplain) {
    fp_ = Field2d::zeros(TensorGrid::uniform(cfg.fp_x0, cfg.fp_x1, cfg.fp_nx, cfg.fp_y0,
                                             cfg.fp_y1, cfg.fp_ny));
    std::fill(fp_.z_ref.begin(), fp_.z_ref.end(), cfg.fp_bed);
    detail::fill_initial_depth(fp_, cfg_);
  }

  detail::map_bank_columns(cfg_, geom_, fp_col_, bank_open_);
  south_ext_.assign(n, 0);
  for (int i = 0; i < n; ++i) south_ext_[i] = bank_open_[i];
  if (cfg_.has_floodplain) {
    north_ext_.assign(cfg_.fp_nx, 0);
    for (int i = 0; i < n; ++i) {
      if (bank_open_[i]) north_ext_[fp_col_[i]] = 1;
    }
  }

  bed_1d_.resize(n);
  width_1d_.resize(n);
  dx_1d_.resize(n);
  for (int i = 0; i < n; ++i) {
    bed_1d_[i] = geom_.bed_min(i);
    width_1d_[i] = geom_.top_width(i);
    dx_1d_[i] = geom_.dx(i);
  }

  mask_.assign(static_cast<std::size_t>(n) * ny, 1);
  phi_.reset(n);
  exch_rate_.assign(static_cast<std::size_t>(n) * ny, 0.0);
  iface_ux_.assign(exch_rate_.size(), 0.0);
  iface_uy_.assign(exch_rate_.size(), 0.0);
  h1_work_.resize(ny);
  dy_row_.resize(ny);

  upper_opt_.mode = TopographyMode::apparent_topography;
  upper_opt_.west = cfg_.channel_west;
  upper_opt_.east = cfg_.channel_east;
  upper_opt_.south = SideBc::wall;
  upper_opt_.north = cfg_.channel_north;
  upper_opt_.south_external = &south_ext_;
  upper_opt_.active = &mask_;
  upper_opt_.manning_n = cfg_.manning_upper();

  fp_opt_.mode = TopographyMode::plain_bed;
  fp_opt_.west = cfg_.fp_west;
  fp_opt_.east = cfg_.fp_east;
  fp_opt_.south = cfg_.fp_south;
  fp_opt_.north = SideBc::wall;
  if (cfg_.has_floodplain) fp_opt_.north_external = &north_ext_;
  fp_opt_.manning_n = cfg_.manning_floodplain();

  ch_opt_.left = cfg_.channel_west;
  ch_opt_.right = cfg_.channel_east;
  ch_opt_.manning_n = cfg_.manning_channel();

  refresh_apparent_topography();
}

void VcmSimulation::refresh_apparent_topography() {
  const int ny = geom_.lateral_cells();
  for (int i = 0; i < geom_.cells(); ++i) {
    const double a1 = std::min(ch_.area[i], geom_.bankfull_area(i));
    geom_.depth_profile(i, a1, h1_work_);
    for (int j = 0; j < ny; ++j) {
      upper_.z_ref[i * ny + j] = geom_.bed(i, j) + h1_work_[j];
    }
  }
}

void VcmSimulation::build_activity_mask() {
  const int n = geom_.cells();
  const int ny = geom_.lateral_cells();
  std::fill(mask_.begin(), mask_.end(), 0);
  auto mark = [&](int i, int j) {
    if (i >= 0 && i < n && j >= 0 && j < ny) mask_[i * ny + j] = 1;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < ny; ++j) {
      if (upper_.h[i * ny + j] > 0.0) {
        mark(i, j);
        mark(i - 1, j);
        mark(i + 1, j);
        mark(i, j - 1);
        mark(i, j + 1);
      }
    }
    if (bank_open_[i]) mark(i, 0);
  }
}

bool VcmSimulation::attempt(double dt, StepResult& out) {
  out = {};
  const int n = geom_.cells();
  const int ny = geom_.lateral_cells();

  refresh_apparent_topography();
  build_activity_mask();

  phi_.reset(n);
  std::vector<BankTap> fp_taps;
  std::vector<BankTap> ch_taps;
  if (cfg_.has_floodplain) {
    const int fpny = fp_.grid.ny();
    for (int i = 0; i < n; ++i) {
      if (!bank_open_[i]) continue;
      const int k = fp_col_[i];
      const int fc = fp_.grid.index(k, fpny - 1);
      const BankSide fps{fp_.z_ref[fc], fp_.h[fc], fp_.qx[fc], fp_.qy[fc]};

      BankGeometry bg;
      bg.edge_len = geom_.dx(i);
      bg.fp_area = fp_.grid.area(k, fpny - 1);
      bg.fp_cell = fc;

      BankExchange ex;
      if (ch_.area[i] >= geom_.bankfull_area(i)) {
        const int cc = i * ny;  // bank-side sub-cell (i, 0)
        bg.ch_area = upper_.grid.area(i, 0);
        bg.ch_cell = cc;
        const BankSide chs{upper_.z_ref[cc], upper_.h[cc], upper_.qx[cc], upper_.qy[cc]};
        ex = bank_edge_exchange(bg, fps, chs);
        ch_taps.push_back(ex.ch_tap);
      } else {
        bg.ch_cell = -1;
        const double eta = geom_.surface_for_area(i, ch_.area[i]);
        double hg = std::max(0.0, eta - geom_.bed(i, 0));
        hg = std::min(hg, geom_.bankfull_depth(i, 0));
        const double u = ch_.area[i] > kDryDepth * geom_.top_width(i)
                             ? ch_.discharge[i] / ch_.area[i]
                             : 0.0;
        const BankSide chs{geom_.bed(i, 0), hg, hg * u, 0.0};
        ex = bank_edge_exchange(bg, fps, chs);
      }
      fp_taps.push_back(ex.fp_tap);
      phi_.mass_rate[i] += bg.edge_len * ex.flux.mass / geom_.dx(i);
      phi_.x_momentum_rate[i] += bg.edge_len * ex.flux.mom_x / geom_.dx(i);
    }
  }

  // Step 1: upper-layer sweep over the apparent topography plus the
  // floodplain, both fed by the shared bank-edge fluxes.  The upper layer's
  // own boundary and clipping volumes stay out of the ledger: its mass is
  // re-slaved to the 1D totals in Step 3, so they never change the totals.
  step_2d(upper_, dt, upper_opt_, ch_taps);
  const Step2dStats fs = cfg_.has_floodplain ? step_2d(fp_, dt, fp_opt_, fp_taps)
                                             : Step2dStats{};

  // Step 2: the 1D channel, then the lateral coupling flux.
  const Channel1dView view{bed_1d_, width_1d_, dx_1d_};
  const Step1dStats cs = step_1d(ch_, view, dt, ch_opt_);
  if (!apply_coupling_flux(ch_, phi_, dt)) return false;

  // Step 3: per-cell reconciliation of the vertical split.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < ny; ++j) dy_row_[j] = geom_.dy(i, j);
    ReconcileIn rin;
    rin.area_new = ch_.area[i];
    rin.discharge_new = ch_.discharge[i];
    rin.bankfull_area = geom_.bankfull_area(i);
    rin.width = geom_.top_width(i);
    rin.dy = dy_row_;
    rin.h2 = std::span<const double>(&upper_.h[i * ny], ny);
    rin.q2x = std::span<const double>(&upper_.qx[i * ny], ny);
    rin.q2y = std::span<const double>(&upper_.qy[i * ny], ny);
    rin.dt = dt;
    ReconcileOut ro = reconcile_exchange(rin);
    std::copy(ro.h2.begin(), ro.h2.end(), upper_.h.begin() + i * ny);
    std::copy(ro.q2x.begin(), ro.q2x.end(), upper_.qx.begin() + i * ny);
    std::copy(ro.q2y.begin(), ro.q2y.end(), upper_.qy.begin() + i * ny);
    std::copy(ro.exchange_rate.begin(), ro.exchange_rate.end(),
              exch_rate_.begin() + i * ny);
    std::copy(ro.iface_ux.begin(), ro.iface_ux.end(), iface_ux_.begin() + i * ny);
    std::copy(ro.iface_uy.begin(), ro.iface_uy.end(), iface_uy_.begin() + i * ny);
    a1_[i] = ro.area1;
    q1_[i] = ro.discharge1;
  }

  for (int i = 0; i < n; ++i) {
    if (!bank_open_[i] || ch_.area[i] < geom_.bankfull_area(i)) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int j = 0; j < ny; ++j) {
      lo = std::min(lo, upper_.h[i * ny + j]);
      hi = std::max(hi, upper_.h[i * ny + j]);
    }
    max_spread_ = std::max(max_spread_, hi - lo);
  }

  out.dt_used = dt;
  out.boundary_volume = (fs.boundary_inflow_rate + cs.boundary_inflow_rate) * dt;
  out.clipped_volume = fs.clipped_volume + cs.clipped_volume;
  return true;
}

StepResult VcmSimulation::advance(double dt) {
  const ChannelState1d ch0 = ch_;
  const std::vector<double> a10 = a1_, q10 = q1_;
  const std::vector<double> uh = upper_.h, uqx = upper_.qx, uqy = upper_.qy;
  const std::vector<double> fh = fp_.h, fqx = fp_.qx, fqy = fp_.qy;

  double trial = dt;
  for (int k = 0; k < 6; ++k) {
    StepResult r;
    if (attempt(trial, r)) return r;
    ch_ = ch0;
    a1_ = a10;
    q1_ = q10;
    upper_.h = uh;
    upper_.qx = uqx;
    upper_.qy = uqy;
    fp_.h = fh;
    fp_.qx = fqx;
    fp_.qy = fqy;
    trial *= 0.5;
  }
  throw std::runtime_error(
      "vcm: coupling flux kept driving the channel area negative after 5 halvings");
}

double VcmSimulation::stable_dt(double cfl) const {
  const Channel1dView view{bed_1d_, width_1d_, dx_1d_};
  double dt = stable_dt_1d(ch_, view, cfl);
  dt = std::min(dt, stable_dt_2d(upper_, cfl, &mask_));
  if (cfg_.has_floodplain) dt = std::min(dt, stable_dt_2d(fp_, cfl));
  return dt;
}

double VcmSimulation::channel_volume() const {
  KahanSum s;
  for (int i = 0; i < geom_.cells(); ++i) s.add(ch_.area[i] * geom_.dx(i));
  return s.value();
}

double VcmSimulation::floodplain_volume() const {
  KahanSum s;
  const TensorGrid& g = fp_.grid;
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) s.add(fp_.h[g.index(i, j)] * g.area(i, j));
  }
  return s.value();
}

double VcmSimulation::surface_at(double x, double y) const {
  if (upper_.grid.contains(x, y)) {
    const int i = upper_.grid.locate_x(x);
    const int j = upper_.grid.locate_y(y);
    std::vector<double> h1(geom_.lateral_cells());
    geom_.depth_profile(i, a1_[i], h1);
    const double H = h1[j] + upper_.h[i * geom_.lateral_cells() + j];
    return geom_.bed(i, j) + (H > kDryDepth ? H : 0.0);
  }
  if (cfg_.has_floodplain && fp_.grid.contains(x, y)) {
    const int c = fp_.grid.index(fp_.grid.locate_x(x), fp_.grid.locate_y(y));
    return fp_.z_ref[c] + (fp_.h[c] > kDryDepth ? fp_.h[c] : 0.0);
  }
  throw std::invalid_argument("surface_at: point outside the domain");
}

AssembledChannel VcmSimulation::assembled() const {
  return assemble_channel(geom_, a1_, q1_, upper_);
}

bool VcmSimulation::any_open_bank_cell_full() const {
  for (int i = 0; i < geom_.cells(); ++i) {
    if (bank_open_[i] && ch_.area[i] >= geom_.bankfull_area(i)) return true;
  }
  return false;
}

void VcmSimulation::write_snapshots(const std::string& dir, double t) const {
  const std::string tag = format_time(t);
  {
    CsvWriter w(dir + "/channel_profile_" + tag + ".csv");
    w.header({"x", "bed", "area", "discharge", "surface"});
    for (int i = 0; i < geom_.cells(); ++i) {
      const double row[] = {geom_.x_center(i), geom_.bed_min(i), ch_.area[i],
                            ch_.discharge[i], geom_.surface_for_area(i, ch_.area[i])};
      w.row(row);
    }
  }
  {
    const AssembledChannel full = assembled();
    const int ny = geom_.lateral_cells();
    CsvWriter w(dir + "/channel_field_" + tag + ".csv");
    w.header({"x", "y", "bed", "h", "qx", "qy", "surface"});
    for (int i = 0; i < geom_.cells(); ++i) {
      for (int j = 0; j < ny; ++j) {
        const int c = i * ny + j;
        const double row[] = {upper_.grid.x_center(i), upper_.grid.y_center(j),
                              geom_.bed(i, j),         full.H[c],
                              full.qx[c],              full.qy[c],
                              geom_.bed(i, j) + full.H[c]};
        w.row(row);
      }
    }
  }
  {
    const int ny = geom_.lateral_cells();
    CsvWriter w(dir + "/upper_layer_" + tag + ".csv");
    w.header({"x", "y", "z_ref", "h2", "q2x", "q2y"});
    for (int i = 0; i < geom_.cells(); ++i) {
      for (int j = 0; j < ny; ++j) {
        const int c = i * ny + j;
        const double row[] = {upper_.grid.x_center(i), upper_.grid.y_center(j),
                              upper_.z_ref[c], upper_.h[c], upper_.qx[c], upper_.qy[c]};
        w.row(row);
      }
    }
  }
  {
    const int ny = geom_.lateral_cells();
    CsvWriter w(dir + "/exchange_" + tag + ".csv");
    w.header({"x", "y", "rate", "iface_ux", "iface_uy"});
    for (int i = 0; i < geom_.cells(); ++i) {
      for (int j = 0; j < ny; ++j) {
        const int c = i * ny + j;
        const double row[] = {upper_.grid.x_center(i), upper_.grid.y_center(j),
                              exch_rate_[c], iface_ux_[c], iface_uy_[c]};
        w.row(row);
      }
    }
  }
  if (cfg_.has_floodplain) {
    const TensorGrid& g = fp_.grid;
    CsvWriter w(dir + "/floodplain_" + tag + ".csv");
    w.header({"x", "y", "bed", "h", "qx", "qy", "surface"});
    for (int i = 0; i < g.nx(); ++i) {
      for (int j = 0; j < g.ny(); ++j) {
        const int c = g.index(i, j);
        const double row[] = {g.x_center(i), g.y_center(j), fp_.z_ref[c], fp_.h[c],
                              fp_.qx[c],     fp_.qy[c],     fp_.z_ref[c] + fp_.h[c]};
        w.row(row);
      }
    }
  }
}

void VcmSimulation::audit_invariants() const {
  const int n = geom_.cells();
  const int ny = geom_.lateral_cells();
  auto fail = [](int i, int j, const std::string& what) {
    throw std::runtime_error("vcm invariant violated at cell (" + std::to_string(i) +
                             ", " + std::to_string(j) + "): " + what);
  };

  const AssembledChannel full = assembled();
  std::vector<double> h1(ny);
  for (int i = 0; i < n; ++i) {
    const double a1_expect = std::min(ch_.area[i], geom_.bankfull_area(i));
    if (a1_[i] != a1_expect) fail(i, -1, "lower-layer area is not min(A, bankfull)");

    double a2 = 0.0, q2x = 0.0;
    for (int j = 0; j < ny; ++j) {
      a2 += upper_.h[i * ny + j] * geom_.dy(i, j);
      q2x += upper_.qx[i * ny + j] * geom_.dy(i, j);
    }
    // The gap-removal stopping rule leaves up to tol * width of area behind,
    // so the relative check carries that absolute floor.
    const double mass_tol = 1e-12 * std::max(ch_.area[i], geom_.top_width(i));
    if (std::abs(ch_.area[i] - (a1_[i] + a2)) > mass_tol) {
      fail(i, -1, "layer areas do not add up to the total");
    }
    const double mom_tol = 1e-12 * std::max(1.0, std::abs(ch_.discharge[i]));
    if (std::abs(ch_.discharge[i] - (q1_[i] + q2x)) > mom_tol) {
      fail(i, -1, "layer discharges do not add up to the total");
    }

    geom_.depth_profile(i, a1_[i], h1);
    const double u1 = a1_[i] > 0.0 ? q1_[i] / a1_[i] : 0.0;
    const double etaw = geom_.wall_elevation(i);
    double eta_lo = std::numeric_limits<double>::infinity();
    double eta_hi = -eta_lo;
    bool below_wall = false;
    for (int j = 0; j < ny; ++j) {
      const int c = i * ny + j;
      const double h2 = upper_.h[c];
      if (h2 < 0.0) fail(i, j, "negative upper-layer depth");
      const double slack = geom_.bankfull_depth(i, j) - h1[j];
      if (std::abs(slack * h2) > 1e-12 * std::max(1.0, h2)) {
        fail(i, j, "upper layer present over a lower layer that is not full");
      }
      if (h2 <= kDryDepth) {
        if (upper_.qx[c] != 0.0 || upper_.qy[c] != 0.0) {
          fail(i, j, "discharge on a dry upper-layer cell");
        }
        if (full.H[c] > kDryDepth) {
          const double ufull = full.qx[c] / full.H[c];
          if (std::abs(ufull - u1) > 1e-12 * std::max(1.0, std::abs(u1))) {
            fail(i, j, "velocity differs from the lower layer where the upper is dry");
          }
        }
      }
      if (full.H[c] > kDryDepth) {
        const double eta = geom_.bed(i, j) + full.H[c];
        if (eta < etaw - 1e-12) below_wall = true;
        eta_lo = std::min(eta_lo, eta);
        eta_hi = std::max(eta_hi, eta);
      }
    }
    if (below_wall && eta_hi - eta_lo > 1e-12) {
      fail(i, -1, "laterally varying surface in a cell below the wall elevation");
    }
  }

  if (cfg_.has_floodplain) {
    for (double h : fp_.h) {
      if (h < 0.0 || !std::isfinite(h)) {
        throw std::runtime_error("vcm invariant violated: bad floodplain depth");
      }
    }
  }
}

}  // namespace swflood
