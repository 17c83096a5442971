#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mvsim {

struct MetricRow {
  std::string experiment;
  std::string engine;
  std::string gc_mode;
  std::int64_t bandwidth_mib_s = 0;
  std::string metric;
  double value = 0;
};

struct ExperimentReport {
  std::vector<std::string> manifest;  // "key = value" lines
  std::vector<MetricRow> rows;

  // Orders rows by (experiment, engine, metric, bandwidth, gc_mode) and
  // rejects duplicate rows or negative values.
  void normalize();
  const MetricRow* find(std::string_view experiment, std::string_view engine, std::string_view gc_mode,
                        std::string_view metric, std::int64_t bandwidth = -1) const;
};

inline constexpr const char* kCsvHeader = "experiment,engine,gc_mode,bandwidth_mib_s,metric,value";

std::string format_value(double v);
std::string to_csv(const ExperimentReport& report);
// Throws std::runtime_error naming the path on failure.
void write_report(const ExperimentReport& report, const std::filesystem::path& path);
// Parses a report written by write_report. Throws ConfigError with the line number.
ExperimentReport read_report(const std::filesystem::path& path);

}  // namespace mvsim
