#pragma once

#include <string>

namespace swflood {

struct StepResult {
  double dt_used = 0.0;
  double boundary_volume = 0.0;  // m^3 through open sides this step, inflow positive
  double clipped_volume = 0.0;   // m^3 added by negativity clipping this step
};

// A time-steppable flood model over one channel/floodplain case.
class Simulation {
 public:
  virtual ~Simulation() = default;

  virtual const char* name() const = 0;

  // cfl-scaled stable step; +inf when everything is dry.
  virtual double stable_dt(double cfl) const = 0;

  // Advances by at most dt (a coupled model may retry internally with a
  // smaller step); returns what was actually done.
  virtual StepResult advance(double dt) = 0;

  virtual double channel_volume() const = 0;
  virtual double floodplain_volume() const = 0;

  // Free-surface elevation at a point inside the domain; bed elevation when dry.
  virtual double surface_at(double x, double y) const = 0;

  // Writes the per-epoch CSV files for time t into dir.
  virtual void write_snapshots(const std::string& dir, double t) const = 0;

  // Model-specific runtime checks; throws std::runtime_error on violation.
  virtual void audit_invariants() const {}

  // Largest lateral free-surface spread seen so far across open-bank full
  // channel cells; 0 for models without a lateral channel resolution.
  virtual double max_lateral_spread() const { return 0.0; }
};

}  // namespace swflood
