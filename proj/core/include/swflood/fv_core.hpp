#pragma once

#include "swflood/constants.hpp"

namespace swflood {

// State on one side of an edge, expressed in the edge frame:
// qn is the discharge along the edge normal, qt along the tangent.
struct EdgeState {
  double h = 0.0;
  double qn = 0.0;
  double qt = 0.0;
};

// Flux in the edge frame (mass, normal momentum, tangential momentum).
struct FluxVec {
  double mass = 0.0;
  double mom_n = 0.0;
  double mom_t = 0.0;
};

// Flux in the global frame (mass, x momentum, y momentum).
struct FluxXY {
  double mass = 0.0;
  double mom_x = 0.0;
  double mom_y = 0.0;
};

// Depth pair after hydrostatic reconstruction against z* = max(z_left, z_right).
struct HydrostaticPair {
  double h_left = 0.0;
  double h_right = 0.0;
  double z_star = 0.0;
};

// Rotate a state into the frame of an edge with unit normal (nx, ny).
// Throws std::invalid_argument if the normal is not unit length within 1e-12.
EdgeState rotate_to_edge(double h, double qx, double qy, double nx, double ny);

// Rotate an edge-frame flux back to the global frame.
FluxXY rotate_back(const FluxVec& f, double nx, double ny);

// Physical shallow-water flux F(h, qn, qt) in the edge frame.
FluxVec physical_flux(const EdgeState& s, double g, double dry = kDryDepth);

// HLL approximate Riemann flux with two-expansion dry-side wave speeds.
FluxVec hll_flux(const EdgeState& left, const EdgeState& right, double g,
                 double dry = kDryDepth);

// Depths seen by the Riemann problem across an elevation jump.
HydrostaticPair hydrostatic_pair(double z_left, double h_left, double z_right,
                                 double h_right);

// Rescale discharges to a reconstructed depth h_tilde <= h; dry states map to zero.
// Throws std::invalid_argument if h_tilde exceeds h beyond roundoff.
EdgeState scale_to_depth(const EdgeState& s, double h_tilde);

// Momentum correction g/2 (h^2 - h_tilde^2), acting along the edge normal.
// Balances the pressure flux so that still water stays still across elevation jumps.
double interface_source(double h, double h_tilde, double g);

// |u| + sqrt(g h) for a wet cell, 0 for a dry one.
double wave_speed_bound(double h, double q, double g, double dry = kDryDepth);

}  // namespace swflood
