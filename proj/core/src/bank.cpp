#include "swflood/bank.hpp"

namespace swflood {

BankExchange bank_edge_exchange(const BankGeometry& geom, const BankSide& fp,
                                const BankSide& ch, double gravity, double dry) {
  // Normal (0, 1), from the floodplain into the channel.
  const HydrostaticPair hp = hydrostatic_pair(fp.z, fp.h, ch.z, ch.h);
  const EdgeState s_fp = scale_to_depth(rotate_to_edge(fp.h, fp.qx, fp.qy, 0.0, 1.0),
                                        hp.h_left);
  const EdgeState s_ch = scale_to_depth(rotate_to_edge(ch.h, ch.qx, ch.qy, 0.0, 1.0),
                                        hp.h_right);
  const FluxVec f = hll_flux(s_fp, s_ch, gravity, dry);
  const FluxXY g = rotate_back(f, 0.0, 1.0);

  BankExchange ex;
  ex.flux = g;
  const double fac_fp = geom.edge_len / geom.fp_area;
  ex.fp_tap = {geom.fp_cell, -fac_fp * g.mass, -fac_fp * g.mom_x,
               -fac_fp * (g.mom_y + interface_source(fp.h, hp.h_left, gravity))};
  if (geom.ch_cell >= 0) {
    const double fac_ch = geom.edge_len / geom.ch_area;
    ex.ch_tap = {geom.ch_cell, fac_ch * g.mass, fac_ch * g.mom_x,
                 fac_ch * (g.mom_y + interface_source(ch.h, hp.h_right, gravity))};
  }
  return ex;
}

}  // namespace swflood
