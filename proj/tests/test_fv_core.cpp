#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "swflood/constants.hpp"
#include "swflood/fv_core.hpp"

using namespace swflood;

TEST_CASE("edge frame rotation") {
  const EdgeState e = rotate_to_edge(1.0, 2.0, 3.0, 0.0, 1.0);
  CHECK(e.h == 1.0);
  CHECK(e.qn == 3.0);
  CHECK(e.qt == -2.0);

  const EdgeState ex = rotate_to_edge(1.0, 2.0, 3.0, 1.0, 0.0);
  CHECK(ex.qn == 2.0);
  CHECK(ex.qt == 3.0);

  const FluxXY f = rotate_back(FluxVec{1.0, 2.0, 3.0}, 0.0, 1.0);
  CHECK(f.mass == 1.0);
  CHECK(f.mom_x == -3.0);
  CHECK(f.mom_y == 2.0);

  CHECK_THROWS_AS(rotate_to_edge(1.0, 0.0, 0.0, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("rotation round trip") {
  const double nx = 0.0, ny = -1.0;
  const EdgeState e = rotate_to_edge(2.0, 0.7, -1.1, nx, ny);
  const FluxVec pf = physical_flux(e, kGravity);
  const FluxXY f = rotate_back(pf, nx, ny);
  // Mass flux in global frame equals qn projected back.
  CHECK(f.mass == doctest::Approx(pf.mass).epsilon(1e-15));
}

TEST_CASE("still water flux") {
  const EdgeState still{1.0, 0.0, 0.0};
  const FluxVec pf = physical_flux(still, 9.81);
  CHECK(pf.mass == 0.0);
  CHECK(pf.mom_n == doctest::Approx(4.905).epsilon(1e-15));
  CHECK(pf.mom_t == 0.0);

  const FluxVec hf = hll_flux(still, still, 9.81);
  CHECK(hf.mass == 0.0);
  CHECK(hf.mom_n == doctest::Approx(4.905).epsilon(1e-15));
  CHECK(hf.mom_t == 0.0);
}

TEST_CASE("hll dry right state") {
  const FluxVec f = hll_flux(EdgeState{1.0, 0.0, 0.0}, EdgeState{0.0, 0.0, 0.0}, 9.81);
  CHECK(f.mass > 0.0);

  const FluxVec none = hll_flux(EdgeState{}, EdgeState{}, 9.81);
  CHECK(none.mass == 0.0);
  CHECK(none.mom_n == 0.0);
}

TEST_CASE("hll upwinds supercritical flow") {
  // Flow far faster than the wave speed: flux must be the left physical flux.
  const EdgeState l{1.0, 10.0, 2.0};
  const EdgeState r{1.0, 10.0, -1.0};
  const FluxVec f = hll_flux(l, r, 9.81);
  const FluxVec fl = physical_flux(l, 9.81);
  CHECK(f.mass == doctest::Approx(fl.mass).epsilon(1e-14));
  CHECK(f.mom_n == doctest::Approx(fl.mom_n).epsilon(1e-14));
  CHECK(f.mom_t == doctest::Approx(fl.mom_t).epsilon(1e-14));
}

TEST_CASE("hydrostatic reconstruction") {
  const HydrostaticPair p = hydrostatic_pair(2.0, 1.0, 2.5, 0.5);
  CHECK(p.z_star == 2.5);
  CHECK(p.h_left == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.h_right == doctest::Approx(0.5).epsilon(1e-15));

  // Water below the jump: the high side sees a dry edge.
  const HydrostaticPair q = hydrostatic_pair(0.0, 0.3, 1.0, 0.0);
  CHECK(q.h_left == 0.0);
  CHECK(q.h_right == 0.0);
}

TEST_CASE("interface momentum correction") {
  CHECK(interface_source(1.0, 0.5, 9.81) == doctest::Approx(3.67875).epsilon(1e-15));
  CHECK(interface_source(1.0, 1.0, 9.81) == 0.0);
}

TEST_CASE("scale to reconstructed depth") {
  const EdgeState s = scale_to_depth(EdgeState{1.0, 2.0, 3.0}, 0.5);
  CHECK(s.h == 0.5);
  CHECK(s.qn == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.qt == doctest::Approx(1.5).epsilon(1e-15));

  const EdgeState dry = scale_to_depth(EdgeState{1.0, 2.0, 3.0}, 0.0);
  CHECK(dry.qn == 0.0);
  CHECK(dry.qt == 0.0);

  CHECK_THROWS_AS(scale_to_depth(EdgeState{0.5, 1.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("wave speed bound") {
  CHECK(wave_speed_bound(1.0, 1.0, 9.81) ==
        doctest::Approx(1.0 + std::sqrt(9.81)).epsilon(1e-15));
  CHECK(wave_speed_bound(0.0, 0.0, 9.81) == 0.0);
  CHECK(wave_speed_bound(1e-9, 5.0, 9.81) == 0.0);
}
