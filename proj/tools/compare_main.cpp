#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "swflood/compare.hpp"

int main(int argc, char** argv) {
  CLI::App app{"compare two solver run directories"};
  std::string ref_dir, cand_dir, probes_path;
  app.add_option("--ref", ref_dir, "reference run directory")->required();
  app.add_option("--cand", cand_dir, "candidate run directory")->required();
  app.add_option("--probes", probes_path, "probe list, 'name x y' per line")->required();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto probes = swflood::load_probes(probes_path);
    const swflood::CompareResult res =
        swflood::compare_runs(ref_dir, cand_dir, probes);
    for (std::size_t i = 0; i < res.probe_names.size(); ++i) {
      std::printf("probe %-12s l2 %.9e\n", res.probe_names[i].c_str(), res.probe_l2[i]);
    }
    std::printf("field l2 %.9e over %d shared points\n", res.field_l2, res.shared_points);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "compare: %s\n", e.what());
    return 1;
  }
  return 0;
}
