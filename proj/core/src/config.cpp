#include "swflood/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "swflood/fbm.hpp"
#include "swflood/full2d.hpp"
#include "swflood/simulation.hpp"
#include "swflood/vcm.hpp"

namespace swflood {

const char* method_name(Method m) {
  switch (m) {
    case Method::full2d: return "full2d";
    case Method::vcm: return "vcm";
    case Method::fbm: return "fbm";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "full2d") return Method::full2d;
  if (name == "vcm") return Method::vcm;
  if (name == "fbm") return Method::fbm;
  throw std::invalid_argument("unknown method: " + name);
}

SimulationConfig make_dam_break_floodplain_config() {
  SimulationConfig c;
  c.channel_x0 = 0.0;
  c.channel_x1 = 19.3;
  c.channel_y0 = 1.8;
  c.channel_y1 = 2.3;
  c.channel_cells = 193;
  c.upper_rows = 8;
  c.full2d_rows = 25;
  c.channel_bed = 0.0;
  c.wall_elevation = [](double x) { return x < 14.0 ? std::tanh(10.0 - x) + 1.0 : 0.0; };

  c.has_floodplain = true;
  c.fp_x0 = 12.5;
  c.fp_x1 = 19.3;
  c.fp_y0 = 0.0;
  c.fp_y1 = 1.8;
  c.fp_nx = 68;
  c.fp_ny = 90;
  c.fp_bed = 0.0;
  c.bank_x0 = 12.5;
  c.bank_x1 = 19.3;

  c.channel_east = SideBc::open;
  c.fp_east = SideBc::open;

  c.init_depth = 0.003;
  c.init.push_back({0.0, 6.10, 1.8, 2.3, 0.504, 0.0, 0.0});

  c.manning_n = 0.009;
  c.cfl = 0.95;
  c.t_end = 10.0;

  c.probes = {
      {"p1", 4.0, 2.05},  {"p2", 10.0, 2.05}, {"p3", 13.0, 2.05},
      {"p4", 16.0, 2.05}, {"p5", 14.0, 1.2},  {"p6", 17.0, 0.5},
  };
  return c;
}

SimulationConfig make_elevated_floodplain_config() {
  SimulationConfig c;
  c.channel_x0 = 0.0;
  c.channel_x1 = 19.3;
  c.channel_y0 = 1.8;
  c.channel_y1 = 2.3;
  c.channel_cells = 193;
  c.upper_rows = 8;
  c.full2d_rows = 25;
  c.channel_bed = 0.0;
  c.wall_elevation = [](double x) {
    if (x < 10.0) return std::tanh(0.5 * (4.5 - x)) + 1.5;
    if (x <= 16.5) return 0.5;
    return std::tanh(x - 19.2) + 1.5;
  };

  c.has_floodplain = true;
  c.fp_x0 = 10.5;
  c.fp_x1 = 16.0;
  c.fp_y0 = 0.0;
  c.fp_y1 = 1.8;
  c.fp_nx = 55;
  c.fp_ny = 90;
  c.fp_bed = 0.5;
  c.bank_x0 = 10.5;
  c.bank_x1 = 16.0;

  c.channel_east = SideBc::open;
  c.fp_south = SideBc::open;

  c.init_depth = 0.0;
  c.init.push_back({0.0, 8.5, 1.8, 2.3, 1.5, 0.0, 0.0});
  c.init.push_back({8.5, 19.3, 1.8, 2.3, 0.7, 0.0, 0.0});
  c.init.push_back({10.5, 16.0, 0.0, 1.8, 0.2, 0.0, 0.0});

  c.manning_n = 0.009;
  c.cfl = 0.95;
  c.t_end = 10.0;

  c.probes = {
      {"p1", 4.0, 2.05},   {"p2", 9.0, 2.05},  {"p3", 11.5, 2.05},
      {"p4", 13.25, 2.05}, {"p5", 15.5, 2.05}, {"p6", 18.5, 2.05},
      {"p7", 11.5, 1.2},   {"p8", 13.25, 0.9}, {"p9", 15.5, 0.5},
  };
  return c;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for " + key + ": " + v);
  }
}

int to_int(const std::string& key, const std::string& v) {
  double x = to_double(key, v);
  int i = static_cast<int>(std::lround(x));
  if (static_cast<double>(i) != x) throw std::invalid_argument("bad value for " + key + ": " + v);
  return i;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw std::invalid_argument("bad value for " + key + ": " + v);
}

SideBc to_bc(const std::string& key, const std::string& v) {
  if (v == "wall") return SideBc::wall;
  if (v == "open") return SideBc::open;
  throw std::invalid_argument("bad value for " + key + ": " + v);
}

std::function<double(double)> piecewise_linear(std::vector<double> xs, std::vector<double> vs) {
  return [xs = std::move(xs), vs = std::move(vs)](double x) {
    if (x <= xs.front()) return vs.front();
    if (x >= xs.back()) return vs.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t k = static_cast<std::size_t>(it - xs.begin());
    double w = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    return vs[k - 1] + w * (vs[k] - vs[k - 1]);
  };
}

}  // namespace

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);

  SimulationConfig c;
  bool seeded = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    }

    try {
      if (key == "case") {
        if (val == "dam_break_floodplain") {
          c = make_dam_break_floodplain_config();
        } else if (val == "elevated_floodplain") {
          c = make_elevated_floodplain_config();
        } else if (val == "custom") {
          c = SimulationConfig{};
        } else {
          throw std::invalid_argument("unknown case: " + val);
        }
        seeded = true;
      } else if (key == "method") {
        c.method = method_from_name(val);
      } else if (key == "channel_x0") {
        c.channel_x0 = to_double(key, val);
      } else if (key == "channel_x1") {
        c.channel_x1 = to_double(key, val);
      } else if (key == "channel_y0") {
        c.channel_y0 = to_double(key, val);
      } else if (key == "channel_y1") {
        c.channel_y1 = to_double(key, val);
      } else if (key == "channel_cells") {
        c.channel_cells = to_int(key, val);
      } else if (key == "upper_rows") {
        c.upper_rows = to_int(key, val);
      } else if (key == "full2d_rows") {
        c.full2d_rows = to_int(key, val);
      } else if (key == "channel_bed") {
        c.channel_bed = to_double(key, val);
      } else if (key == "wall") {
        auto tk = tokens(val);
        if (tk.size() == 2 && tk[0] == "constant") {
          double v = to_double(key, tk[1]);
          c.wall_elevation = [v](double) { return v; };
        } else if (tk.size() >= 5 && tk[0] == "table" && tk.size() % 2 == 1) {
          std::vector<double> xs, vs;
          for (std::size_t k = 1; k < tk.size(); k += 2) {
            xs.push_back(to_double(key, tk[k]));
            vs.push_back(to_double(key, tk[k + 1]));
          }
          if (!std::is_sorted(xs.begin(), xs.end())) {
            throw std::invalid_argument("wall table x values must increase");
          }
          c.wall_elevation = piecewise_linear(std::move(xs), std::move(vs));
        } else {
          throw std::invalid_argument("wall expects 'constant <elev>' or 'table x v x v ...'");
        }
      } else if (key == "floodplain") {
        c.has_floodplain = to_bool(key, val);
      } else if (key == "fp_x0") {
        c.fp_x0 = to_double(key, val);
      } else if (key == "fp_x1") {
        c.fp_x1 = to_double(key, val);
      } else if (key == "fp_y0") {
        c.fp_y0 = to_double(key, val);
      } else if (key == "fp_y1") {
        c.fp_y1 = to_double(key, val);
      } else if (key == "fp_nx") {
        c.fp_nx = to_int(key, val);
      } else if (key == "fp_ny") {
        c.fp_ny = to_int(key, val);
      } else if (key == "fp_bed") {
        c.fp_bed = to_double(key, val);
      } else if (key == "bank_x0") {
        c.bank_x0 = to_double(key, val);
      } else if (key == "bank_x1") {
        c.bank_x1 = to_double(key, val);
      } else if (key == "channel_west") {
        c.channel_west = to_bc(key, val);
      } else if (key == "channel_east") {
        c.channel_east = to_bc(key, val);
      } else if (key == "channel_north") {
        c.channel_north = to_bc(key, val);
      } else if (key == "fp_west") {
        c.fp_west = to_bc(key, val);
      } else if (key == "fp_east") {
        c.fp_east = to_bc(key, val);
      } else if (key == "fp_south") {
        c.fp_south = to_bc(key, val);
      } else if (key == "init_depth") {
        c.init_depth = to_double(key, val);
      } else if (key == "patch") {
        auto tk = tokens(val);
        if (tk.size() != 5 && tk.size() != 7) {
          throw std::invalid_argument("patch expects 'x0 x1 y0 y1 depth [u v]'");
        }
        InitPatch p;
        p.x0 = to_double(key, tk[0]);
        p.x1 = to_double(key, tk[1]);
        p.y0 = to_double(key, tk[2]);
        p.y1 = to_double(key, tk[3]);
        p.depth = to_double(key, tk[4]);
        if (tk.size() == 7) {
          p.u = to_double(key, tk[5]);
          p.v = to_double(key, tk[6]);
        }
        c.init.push_back(p);
      } else if (key == "cfl") {
        c.cfl = to_double(key, val);
      } else if (key == "t_end") {
        c.t_end = to_double(key, val);
      } else if (key == "fallback_dt") {
        c.fallback_dt = to_double(key, val);
      } else if (key == "manning_n") {
        c.manning_n = to_double(key, val);
      } else if (key == "manning_n_channel") {
        c.manning_n_channel = to_double(key, val);
      } else if (key == "manning_n_upper") {
        c.manning_n_upper = to_double(key, val);
      } else if (key == "manning_n_floodplain") {
        c.manning_n_floodplain = to_double(key, val);
      } else if (key == "audit") {
        c.audit = to_bool(key, val);
      } else if (key == "probe_dt") {
        c.probe_dt = to_double(key, val);
      } else if (key == "probes") {
        if (val != "none") throw std::invalid_argument("probes only accepts 'none'");
        c.probes.clear();
      } else if (key == "probe") {
        auto tk = tokens(val);
        if (tk.size() != 3) throw std::invalid_argument("probe expects 'name x y'");
        c.probes.push_back({tk[0], to_double(key, tk[1]), to_double(key, tk[2])});
      } else if (key == "snapshot_times") {
        if (val != "none") throw std::invalid_argument("snapshot_times only accepts 'none'");
        c.snapshot_times.clear();
      } else if (key == "snapshot_time") {
        c.snapshot_times.push_back(to_double(key, val));
      } else {
        throw std::invalid_argument("unknown key: " + key);
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  (void)seeded;
  return c;
}

void validate_config(const SimulationConfig& c) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };

  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) fail("cfl must be in (0, 1]");
  if (c.t_end < 0.0) fail("t_end must be >= 0");
  if (c.fallback_dt <= 0.0) fail("fallback_dt must be positive");
  if (c.probe_dt <= 0.0) fail("probe_dt must be positive");
  if (c.manning_n < 0.0) fail("manning_n must be >= 0");

  if (!(c.channel_x1 > c.channel_x0)) fail("channel x extent must be increasing");
  if (!(c.channel_y1 > c.channel_y0)) fail("channel y extent must be increasing");
  if (c.channel_cells < 1) fail("channel_cells must be >= 1");
  if (c.upper_rows < 1) fail("upper_rows must be >= 1");
  if (c.full2d_rows < 1) fail("full2d_rows must be >= 1");
  if (c.method == Method::vcm && !c.wall_elevation) fail("vcm needs a wall elevation profile");

  if (c.init_depth < 0.0) fail("init_depth must be >= 0");
  for (const auto& p : c.init) {
    if (p.depth < 0.0) fail("patch depth must be >= 0");
    if (!(p.x1 > p.x0) || !(p.y1 > p.y0)) fail("patch extent must be increasing");
  }

  if (c.has_floodplain) {
    if (!(c.fp_x1 > c.fp_x0)) fail("floodplain x extent must be increasing");
    if (!(c.fp_y1 > c.fp_y0)) fail("floodplain y extent must be increasing");
    if (c.fp_nx < 1 || c.fp_ny < 1) fail("floodplain grid must be >= 1x1");
    const double tol = 1e-9;
    if (std::abs(c.fp_y1 - c.channel_y0) > tol) {
      fail("floodplain must adjoin the channel south side (fp_y1 == channel_y0)");
    }
    if (c.fp_x0 < c.channel_x0 - tol || c.fp_x1 > c.channel_x1 + tol) {
      fail("floodplain x extent must lie within the channel x extent");
    }
    double dxc = (c.channel_x1 - c.channel_x0) / c.channel_cells;
    double dxf = (c.fp_x1 - c.fp_x0) / c.fp_nx;
    if (std::abs(dxc - dxf) > tol) fail("channel and floodplain dx must conform at the bank");
    auto on_edge = [&](double x) {
      double s = (x - c.channel_x0) / dxc;
      return std::abs(s - std::round(s)) < 1e-6;
    };
    if (!on_edge(c.fp_x0) || !on_edge(c.fp_x1)) {
      fail("floodplain x extent must align with channel cell edges");
    }
    if (!(c.bank_x1 > c.bank_x0)) fail("bank window must be increasing");
    if (c.bank_x0 < c.fp_x0 - tol || c.bank_x1 > c.fp_x1 + tol) {
      fail("bank window must lie within the floodplain x extent");
    }
    if (!on_edge(c.bank_x0) || !on_edge(c.bank_x1)) {
      fail("bank window must align with channel cell edges");
    }
  } else if (c.bank_x1 > c.bank_x0) {
    fail("bank window given without a floodplain");
  }

  for (const auto& p : c.probes) {
    bool in_channel = p.x >= c.channel_x0 && p.x <= c.channel_x1 && p.y >= c.channel_y0 &&
                      p.y <= c.channel_y1;
    bool in_fp = c.has_floodplain && p.x >= c.fp_x0 && p.x <= c.fp_x1 && p.y >= c.fp_y0 &&
                 p.y <= c.fp_y1;
    if (!in_channel && !in_fp) fail("probe " + p.name + " lies outside the domain");
  }
}

std::unique_ptr<Simulation> build_simulation(const SimulationConfig& c) {
  validate_config(c);
  switch (c.method) {
    case Method::full2d: return std::make_unique<Full2dSimulation>(c);
    case Method::vcm: return std::make_unique<VcmSimulation>(c);
    case Method::fbm: return std::make_unique<FbmSimulation>(c);
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace swflood
