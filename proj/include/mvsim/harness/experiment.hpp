#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvsim/harness/report.hpp"
#include "mvsim/harness/workload.hpp"
#include "mvsim/mvcc/engine_config.hpp"

namespace mvsim {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind : std::uint8_t { E1, E2, Sweep };

const char* to_string(ExperimentKind k);

struct ExperimentConfig {
  WorkloadConfig workload;
  // Stacks to run; both by default.
  bool run_append_only = true;
  bool run_delta = true;
  EngineConfig append_only = EngineConfig::append_only_stack();
  EngineConfig delta = EngineConfig::delta_stack();
  std::vector<std::int64_t> bandwidths{125, 250, 375, 500, 660};

  // Checks every engine config the procedure will build.
  void validate(ExperimentKind kind) const;
  // "key = value" lines; without a kind, only the stack and workload settings.
  std::vector<std::string> manifest(std::optional<ExperimentKind> kind = std::nullopt) const;
};

// e1: append-only with GC off runs update_only then select_only (row
//     gc_mode vacuum_off), is vacuumed by hand and runs select_only again
//     (vacuum_manual); the delta stack runs update_only then select_only.
// e2: update_only on append-only with autovacuum (vacuum_auto) and without
//     (vacuum_off), and on the delta stack (purge).
// sweep: oltp_mixed on both stacks at each bandwidth.
ExperimentReport run_experiment(ExperimentKind kind, const ExperimentConfig& config);

}  // namespace mvsim
