#include "swflood/compare.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "swflood/csv.hpp"

namespace swflood {

namespace {

namespace fs = std::filesystem;

// Snapshot files named <prefix><time>.csv; returns the latest time present in
// both directories, or a quiet NaN when there is none.
double latest_common_tag(const std::string& ref_dir, const std::string& cand_dir,
                         const std::string& prefix) {
  double best = std::nan("");
  for (const auto& entry : fs::directory_iterator(ref_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind(prefix, 0) != 0 || name.size() < prefix.size() + 4) continue;
    if (name.substr(name.size() - 4) != ".csv") continue;
    const std::string tag = name.substr(prefix.size(), name.size() - prefix.size() - 4);
    double t = 0.0;
    try {
      t = std::stod(tag);
    } catch (const std::exception&) {
      continue;
    }
    if (!fs::exists(cand_dir + "/" + name)) continue;
    if (std::isnan(best) || t > best) best = t;
  }
  return best;
}

std::pair<long long, long long> point_key(double x, double y) {
  return {std::llround(x * 1e6), std::llround(y * 1e6)};
}

void accumulate_field(const std::string& ref_path, const std::string& cand_path,
                      double& sum_sq, int& count) {
  const CsvTable ref = read_csv(ref_path);
  const CsvTable cand = read_csv(cand_path);
  const int rx = ref.column("x"), ry = ref.column("y"), rs = ref.column("surface");
  const int cx = cand.column("x"), cy = cand.column("y"), cs = cand.column("surface");
  if (rx < 0 || ry < 0 || rs < 0 || cx < 0 || cy < 0 || cs < 0) {
    throw std::invalid_argument("snapshot is missing x/y/surface columns");
  }
  std::map<std::pair<long long, long long>, double> ref_surface;
  for (const auto& row : ref.rows) ref_surface[point_key(row[rx], row[ry])] = row[rs];
  for (const auto& row : cand.rows) {
    const auto it = ref_surface.find(point_key(row[cx], row[cy]));
    if (it == ref_surface.end()) continue;
    const double d = row[cs] - it->second;
    sum_sq += d * d;
    ++count;
  }
}

}  // namespace

std::vector<ProbeSpec> load_probes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open probes file: " + path);
  std::vector<ProbeSpec> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::stringstream ss(line);
    ProbeSpec p;
    if (!(ss >> p.name)) continue;
    if (!(ss >> p.x >> p.y)) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected 'name x y'");
    }
    out.push_back(p);
  }
  return out;
}

CompareResult compare_runs(const std::string& ref_dir, const std::string& cand_dir,
                           const std::vector<ProbeSpec>& probes) {
  CompareResult res;

  const CsvTable rp = read_csv(ref_dir + "/probes.csv");
  const CsvTable cp = read_csv(cand_dir + "/probes.csv");
  const int rt = rp.column("t");
  const int ct = cp.column("t");
  if (rt < 0 || ct < 0) throw std::invalid_argument("probes.csv is missing the t column");
  const std::size_t n = std::min(rp.rows.size(), cp.rows.size());

  for (const ProbeSpec& probe : probes) {
    const int rc = rp.column(probe.name);
    const int cc = cp.column(probe.name);
    if (rc < 0 || cc < 0) {
      throw std::invalid_argument("probe " + probe.name + " is not present in both runs");
    }
    double sum = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      const double dt = rp.rows[k][rt] - rp.rows[k - 1][rt];
      const double d0 = cp.rows[k - 1][cc] - rp.rows[k - 1][rc];
      const double d1 = cp.rows[k][cc] - rp.rows[k][rc];
      sum += 0.5 * (d0 * d0 + d1 * d1) * dt;
    }
    res.probe_names.push_back(probe.name);
    res.probe_l2.push_back(std::sqrt(sum));
  }

  double sum_sq = 0.0;
  int count = 0;
  for (const std::string prefix : {"floodplain_", "channel_field_"}) {
    const double tag = latest_common_tag(ref_dir, cand_dir, prefix);
    if (std::isnan(tag)) continue;
    const std::string name = prefix + format_time(tag) + ".csv";
    accumulate_field(ref_dir + "/" + name, cand_dir + "/" + name, sum_sq, count);
  }
  res.shared_points = count;
  res.field_l2 = count > 0 ? std::sqrt(sum_sq / count) : 0.0;
  return res;
}

}  // namespace swflood
