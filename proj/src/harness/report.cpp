#include "mvsim/harness/report.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "mvsim/common.hpp"

namespace mvsim {

namespace {

auto order_key(const MetricRow& r) {
  return std::tie(r.experiment, r.engine, r.metric, r.bandwidth_mib_s, r.gc_mode);
}

}  // namespace

void ExperimentReport::normalize() {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const MetricRow& a, const MetricRow& b) { return order_key(a) < order_key(b); });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].value >= 0)) throw InvariantViolation("metric " + rows[i].metric + " is negative or NaN");
    if (i > 0 && order_key(rows[i - 1]) == order_key(rows[i])) {
      throw InvariantViolation("duplicate report row for " + rows[i].engine + " " + rows[i].metric);
    }
  }
}

const MetricRow* ExperimentReport::find(std::string_view experiment, std::string_view engine,
                                        std::string_view gc_mode, std::string_view metric,
                                        std::int64_t bandwidth) const {
  for (const auto& r : rows) {
    if (r.experiment == experiment && r.engine == engine && r.gc_mode == gc_mode && r.metric == metric &&
        (bandwidth < 0 || r.bandwidth_mib_s == bandwidth)) {
      return &r;
    }
  }
  return nullptr;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string to_csv(const ExperimentReport& report) {
  std::string out;
  for (const auto& line : report.manifest) out += "# " + line + "\n";
  out += kCsvHeader;
  out += "\n";
  for (const auto& r : report.rows) {
    out += r.experiment + "," + r.engine + "," + r.gc_mode + "," + std::to_string(r.bandwidth_mib_s) + "," +
           r.metric + "," + format_value(r.value) + "\n";
  }
  return out;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + ": " + std::strerror(errno));
  out << to_csv(report);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

ExperimentReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  ExperimentReport report;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!header && line.starts_with("#")) {
      report.manifest.push_back(line.size() > 2 ? line.substr(2) : "");
      continue;
    }
    if (!header) {
      if (line != kCsvHeader) throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": bad header");
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 6) throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 6 fields");
    try {
      report.rows.push_back({f[0], f[1], f[2], std::stoll(f[3]), f[4], std::stod(f[5])});
    } catch (const std::logic_error&) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": bad number");
    }
  }
  if (!header) throw ConfigError(path.string() + ": missing header");
  return report;
}

}  // namespace mvsim
