#include "mvsim/harness/experiment.hpp"

#include <algorithm>
#include <string>

#include "mvsim/mvcc/engine.hpp"

namespace mvsim {

namespace {

std::string gc_label(GcMode g, bool vacuumed_by_hand = false) {
  switch (g) {
    case GcMode::VacuumAuto: return "vacuum_auto";
    case GcMode::VacuumManualOnly: return vacuumed_by_hand ? "vacuum_manual" : "vacuum_off";
    case GcMode::Purge: return "purge";
  }
  return "?";
}

struct Emitter {
  ExperimentReport& report;
  std::string experiment;

  void operator()(const EngineConfig& ec, const std::string& gc_mode, const std::string& metric, double v) const {
    report.rows.push_back({experiment, ec.label(), gc_mode, ec.device.target_bandwidth_mib_s, metric, v});
  }
};

WorkloadConfig with_mix(WorkloadConfig w, Mix m) {
  w.mix = m;
  return w;
}

void shape_rows(const Emitter& emit, const EngineConfig& ec, const std::string& gc, const Engine& engine,
                const std::vector<TableId>& tables) {
  emit(ec, gc, "chain_length_mean", chain_length_mean(engine, tables));
  emit(ec, gc, "table_pages", static_cast<double>(table_pages(engine, tables)));
}

void run_e1(const ExperimentConfig& cfg, ExperimentReport& report) {
  const Emitter emit{report, "e1"};
  if (cfg.run_append_only) {
    EngineConfig ec = cfg.append_only;
    ec.gc = GcMode::VacuumManualOnly;
    Engine engine(ec);
    const auto tables = populate(engine, cfg.workload);
    run_mix(engine, tables, with_mix(cfg.workload, Mix::UpdateOnly));
    const RunStats before = run_mix(engine, tables, with_mix(cfg.workload, Mix::SelectOnly));
    emit(ec, gc_label(ec.gc), "pages_per_select", before.pages_per_select());
    shape_rows(emit, ec, gc_label(ec.gc), engine, tables);
    for (TableId t : tables) engine.vacuum(t);
    engine.pool().flush_all();
    const RunStats after = run_mix(engine, tables, with_mix(cfg.workload, Mix::SelectOnly));
    emit(ec, gc_label(ec.gc, true), "pages_per_select", after.pages_per_select());
    shape_rows(emit, ec, gc_label(ec.gc, true), engine, tables);
  }
  if (cfg.run_delta) {
    const EngineConfig& ec = cfg.delta;
    Engine engine(ec);
    const auto tables = populate(engine, cfg.workload);
    run_mix(engine, tables, with_mix(cfg.workload, Mix::UpdateOnly));
    const RunStats st = run_mix(engine, tables, with_mix(cfg.workload, Mix::SelectOnly));
    emit(ec, gc_label(ec.gc), "pages_per_select", st.pages_per_select());
    shape_rows(emit, ec, gc_label(ec.gc), engine, tables);
  }
}

void run_e2(const ExperimentConfig& cfg, ExperimentReport& report) {
  const Emitter emit{report, "e2"};
  auto one = [&](EngineConfig ec) {
    Engine engine(ec);
    const auto tables = populate(engine, cfg.workload);
    const RunStats st = run_mix(engine, tables, with_mix(cfg.workload, Mix::UpdateOnly));
    emit(ec, gc_label(ec.gc), "pages_per_update", st.pages_per_update());
    emit(ec, gc_label(ec.gc), "tps", st.tps());
    shape_rows(emit, ec, gc_label(ec.gc), engine, tables);
  };
  if (cfg.run_append_only) {
    EngineConfig on = cfg.append_only;
    on.gc = GcMode::VacuumAuto;
    one(on);
    EngineConfig off = cfg.append_only;
    off.gc = GcMode::VacuumManualOnly;
    one(off);
  }
  if (cfg.run_delta) one(cfg.delta);
}

void run_sweep(const ExperimentConfig& cfg, ExperimentReport& report) {
  const Emitter emit{report, "sweep"};
  std::vector<std::int64_t> bws = cfg.bandwidths;
  std::sort(bws.begin(), bws.end());
  bws.erase(std::unique(bws.begin(), bws.end()), bws.end());
  for (std::int64_t bw : bws) {
    std::vector<EngineConfig> stacks;
    if (cfg.run_append_only) stacks.push_back(cfg.append_only);
    if (cfg.run_delta) stacks.push_back(cfg.delta);
    for (EngineConfig ec : stacks) {
      ec.device.target_bandwidth_mib_s = bw;
      Engine engine(ec);
      const auto tables = populate(engine, cfg.workload);
      const RunStats st = run_mix(engine, tables, with_mix(cfg.workload, Mix::OltpMixed));
      emit(ec, gc_label(ec.gc), "tps", st.tps());
      emit(ec, gc_label(ec.gc), "pages_per_select", st.pages_per_select());
      emit(ec, gc_label(ec.gc), "pages_per_update", st.pages_per_update());
    }
  }
}

}  // namespace

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::E1: return "e1";
    case ExperimentKind::E2: return "e2";
    case ExperimentKind::Sweep: return "sweep";
  }
  return "?";
}

void ExperimentConfig::validate(ExperimentKind kind) const {
  workload.validate();
  if (!run_append_only && !run_delta) throw ConfigError("engine: no engine selected");
  if (run_append_only) {
    if (append_only.storage != VersionStorage::AppendOnly) throw ConfigError("engine: expected append-only stack");
    append_only.validate();
  }
  if (run_delta) {
    if (delta.storage != VersionStorage::Delta) throw ConfigError("engine: expected delta stack");
    delta.validate();
  }
  if (kind == ExperimentKind::Sweep) {
    if (bandwidths.empty()) throw ConfigError("bandwidths: empty list");
    for (auto bw : bandwidths) {
      DeviceConfig d = append_only.device;
      d.target_bandwidth_mib_s = bw;
      d.validate();
    }
  }
}

std::vector<std::string> ExperimentConfig::manifest(std::optional<ExperimentKind> kind) const {
  std::vector<std::string> m;
  auto add = [&](const std::string& k, const std::string& v) { m.push_back(k + " = " + v); };
  if (kind) add("experiment", to_string(*kind));
  add("mvsim_version", kVersion);
  add("seed", std::to_string(workload.seed));
  add("tables", std::to_string(workload.tables));
  add("rows", std::to_string(workload.rows_per_table));
  add("ops", std::to_string(workload.operations));
  add("clients", std::to_string(workload.clients));
  add("key_distribution", "uniform");
  add("secondary_indexes", std::to_string(workload.secondary_indexes));
  add("gc_interval", std::to_string(workload.gc_interval));
  add("cpu_us_per_op", std::to_string(workload.cpu_us_per_op));
  add("select_percent", std::to_string(workload.mixed_select_percent));
  auto engine = [&](const std::string& prefix, const EngineConfig& ec) {
    add(prefix + ".label", ec.label());
    add(prefix + ".index_pointers", to_string(ec.pointers));
    if (ec.storage == VersionStorage::AppendOnly && kind == ExperimentKind::E1) {
      add(prefix + ".gc", "vacuum_manual_only");
    } else if (ec.storage == VersionStorage::AppendOnly && kind == ExperimentKind::E2) {
      add(prefix + ".gc", "vacuum_auto,vacuum_manual_only");
    } else {
      add(prefix + ".gc", to_string(ec.gc));
    }
    add(prefix + ".pool_pages", std::to_string(ec.pool_pages));
    add(prefix + ".bandwidth_mib_s", std::to_string(ec.device.target_bandwidth_mib_s));
    add(prefix + ".window_ms", std::to_string(ec.device.window_ms));
    add(prefix + ".autovacuum", format_value(ec.autovacuum.threshold_fraction) + "*live+" +
                                    std::to_string(ec.autovacuum.threshold_base));
    add(prefix + ".vacuum_ring_pages", std::to_string(ec.vacuum_ring_pages));
    add(prefix + ".prune_threshold", std::to_string(ec.prune_threshold));
  };
  if (run_append_only) engine("appendonly", append_only);
  if (run_delta) engine("delta", delta);
  if (kind == ExperimentKind::Sweep) {
    std::string list;
    for (auto bw : bandwidths) list += (list.empty() ? "" : ",") + std::to_string(bw);
    add("bandwidths", list);
  }
  return m;
}

ExperimentReport run_experiment(ExperimentKind kind, const ExperimentConfig& config) {
  config.validate(kind);
  ExperimentReport report;
  report.manifest = config.manifest(kind);
  switch (kind) {
    case ExperimentKind::E1: run_e1(config, report); break;
    case ExperimentKind::E2: run_e2(config, report); break;
    case ExperimentKind::Sweep: run_sweep(config, report); break;
  }
  report.normalize();
  return report;
}

}  // namespace mvsim
