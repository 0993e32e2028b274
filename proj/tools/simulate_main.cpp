#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "swflood/config.hpp"
#include "swflood/runner.hpp"
#include "swflood/simulation.hpp"

int main(int argc, char** argv) {
  CLI::App app{"channel/floodplain shallow water solver"};
  std::string config_path;
  std::string method;
  std::string out_dir = "out";
  double t_end = -1.0;
  double cfl = -1.0;
  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--method", method, "full2d, vcm or fbm (overrides the config)");
  app.add_option("--t-end", t_end, "end time override [s]");
  app.add_option("--cfl", cfl, "CFL number override");
  app.add_option("--out", out_dir, "output directory");
  CLI11_PARSE(app, argc, argv);

  try {
    swflood::SimulationConfig cfg = swflood::load_config(config_path);
    if (!method.empty()) cfg.method = swflood::method_from_name(method);
    if (t_end >= 0.0) cfg.t_end = t_end;
    if (cfl > 0.0) cfg.cfl = cfl;
    swflood::validate_config(cfg);
    auto sim = swflood::build_simulation(cfg);
    const swflood::RunReport rep = swflood::run_simulation(*sim, cfg, out_dir);
    std::printf("method            %s\n", rep.method.c_str());
    std::printf("steps             %d\n", rep.steps);
    std::printf("final time        %.6f s\n", rep.final_time);
    std::printf("initial volume    %.12e m^3\n", rep.initial_volume);
    std::printf("final volume      %.12e m^3\n", rep.final_volume);
    std::printf("boundary net      %.12e m^3\n", rep.boundary_net);
    std::printf("clipped net       %.12e m^3\n", rep.clipped_net);
    std::printf("max residual      %.3e m^3\n", rep.max_ledger_residual);
    std::printf("wall seconds      %.3f\n", rep.wall_seconds);
    std::printf("outputs in        %s\n", rep.out_dir.c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "simulate: %s\n", e.what());
    return 1;
  }
  return 0;
}
