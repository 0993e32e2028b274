#include "swflood/swe1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "swflood/fv_core.hpp"

namespace swflood {

Step1dStats step_1d(ChannelState1d& s, const Channel1dView& geom, double dt,
                    const Step1dOptions& opt) {
  const int n = static_cast<int>(s.area.size());
  if (s.discharge.size() != s.area.size() || geom.bed.size() != s.area.size() ||
      geom.width.size() != s.area.size() || geom.dx.size() != s.area.size()) {
    throw std::invalid_argument("step_1d: state/geometry size mismatch");
  }
  const double grav = opt.gravity;
  const double dry = opt.dry_depth;

  // Per-unit-width depths and discharges.
  std::vector<double> h(n), q(n);
  for (int i = 0; i < n; ++i) {
    h[i] = s.area[i] / geom.width[i];
    q[i] = s.discharge[i] / geom.width[i];
  }

  // One flux per interface, including the two boundary ghosts.
  std::vector<double> fmass(n + 1), fmom(n + 1), hl_rec(n + 1), hr_rec(n + 1),
      wl(n + 1), hcl(n + 1), hcr(n + 1);
  Step1dStats stats;
  for (int e = 0; e <= n; ++e) {
    double zl, hl, ql, zr, hr, qr, we;
    if (e == 0) {
      zr = geom.bed[0]; hr = h[0]; qr = q[0];
      zl = zr; hl = hr;
      ql = opt.left == SideBc::wall ? -qr : qr;
      we = geom.width[0];
    } else if (e == n) {
      zl = geom.bed[n - 1]; hl = h[n - 1]; ql = q[n - 1];
      zr = zl; hr = hl;
      qr = opt.right == SideBc::wall ? -ql : ql;
      we = geom.width[n - 1];
    } else {
      zl = geom.bed[e - 1]; hl = h[e - 1]; ql = q[e - 1];
      zr = geom.bed[e]; hr = h[e]; qr = q[e];
      we = std::min(geom.width[e - 1], geom.width[e]);
    }
    const HydrostaticPair hp = hydrostatic_pair(zl, hl, zr, hr);
    const EdgeState sl = scale_to_depth({hl, ql, 0.0}, hp.h_left);
    const EdgeState sr = scale_to_depth({hr, qr, 0.0}, hp.h_right);
    const FluxVec fv = hll_flux(sl, sr, grav, dry);
    fmass[e] = fv.mass;
    fmom[e] = fv.mom_n;
    hl_rec[e] = hp.h_left;
    hr_rec[e] = hp.h_right;
    wl[e] = we;
    hcl[e] = hl;
    hcr[e] = hr;
  }
  if (opt.left == SideBc::open) stats.boundary_inflow_rate += fmass[0] * wl[0];
  if (opt.right == SideBc::open) stats.boundary_inflow_rate -= fmass[n] * wl[n];

  for (int i = 0; i < n; ++i) {
    const double inv = 1.0 / geom.dx[i];
    // Area updated directly so the width-weighted interface terms telescope
    // exactly across cells.
    double an = s.area[i] - dt * inv * (wl[i + 1] * fmass[i + 1] - wl[i] * fmass[i]);
    const double src_r = interface_source(hcl[i + 1], hl_rec[i + 1], grav);
    const double src_l = interface_source(hcr[i], hr_rec[i], grav);
    double qn = q[i] - dt * inv * ((fmom[i + 1] + src_r) - (fmom[i] + src_l));

    if (an < 0.0) {
      stats.clipped_volume += -an * geom.dx[i];
      an = 0.0;
      qn = 0.0;
    }
    const double hn = an / geom.width[i];
    if (hn <= dry) {
      qn = 0.0;
    } else {
      double dummy = 0.0;
      apply_manning(qn, dummy, hn, opt.manning_n, grav, dt, dry);
    }
    s.area[i] = an;
    s.discharge[i] = qn * geom.width[i];
    if (!std::isfinite(s.area[i]) || !std::isfinite(s.discharge[i])) {
      throw std::runtime_error("step_1d: non-finite state at cell " + std::to_string(i));
    }
  }
  return stats;
}

bool apply_coupling_flux(ChannelState1d& s, const CouplingFlux& phi, double dt) {
  const std::size_t n = s.area.size();
  if (phi.mass_rate.size() != n || phi.x_momentum_rate.size() != n) {
    throw std::invalid_argument("apply_coupling_flux: size mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (s.area[i] + dt * phi.mass_rate[i] < 0.0) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    s.area[i] += dt * phi.mass_rate[i];
    s.discharge[i] += dt * phi.x_momentum_rate[i];
  }
  return true;
}

double stable_dt_1d(const ChannelState1d& s, const Channel1dView& geom, double cfl,
                    double gravity, double dry_depth) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.area.size(); ++i) {
    const double h = s.area[i] / geom.width[i];
    if (h <= dry_depth) continue;
    const double speed = std::abs(s.discharge[i] / s.area[i]) + std::sqrt(gravity * h);
    if (speed > 0.0) best = std::min(best, geom.dx[i] / speed);
  }
  return cfl * best;
}

}  // namespace swflood
