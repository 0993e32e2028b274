#include "swflood/csv.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swflood {

CsvWriter::CsvWriter(const std::string& path) {
  f_ = std::fopen(path.c_str(), "w");
  if (!f_) {
    throw std::runtime_error("cannot open " + path + ": " + std::strerror(errno));
  }
}

CsvWriter::~CsvWriter() {
  if (f_) std::fclose(f_);
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (std::size_t k = 0; k < names.size(); ++k) {
    std::fprintf(f_, k == 0 ? "%s" : ",%s", names[k].c_str());
  }
  std::fprintf(f_, "\n");
}

void CsvWriter::row(std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    std::fprintf(f_, k == 0 ? "%.17g" : ",%.17g", values[k]);
  }
  std::fprintf(f_, "\n");
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] == name) return static_cast<int>(k);
  }
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> r;
    r.reserve(t.columns.size());
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) r.push_back(std::stod(cell));
    if (r.size() != t.columns.size()) {
      throw std::runtime_error("ragged row in " + path);
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

std::string format_time(double t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", t);
  return buf;
}

}  // namespace swflood
