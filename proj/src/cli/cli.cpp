#include "mvsim/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "mvsim/common.hpp"
#include "mvsim/harness/experiment.hpp"
#include "mvsim/harness/report.hpp"
#include "mvsim/harness/workload.hpp"

namespace mvsim {

namespace {

const std::vector<std::string> kKeys = {
    "engine", "index-pointers", "gc",   "pool-pages", "bandwidth", "bandwidths",        "tables",
    "rows",   "ops",            "clients", "mix",     "seed",      "out",               "window-ms",
    "secondary-indexes",        "gc-interval",        "cpu-us-per-op",
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::int64_t to_int(const std::map<std::string, std::string>& s, const std::string& key, std::int64_t lo) {
  const std::string& v = s.at(key);
  std::size_t used = 0;
  std::int64_t n = 0;
  try {
    n = std::stoll(v, &used);
  } catch (const std::logic_error&) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
  if (used != v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  if (n < lo) throw ConfigError(key + ": must be at least " + std::to_string(lo) + ", got " + v);
  return n;
}

struct Settings {
  std::map<std::string, std::string> values;

  bool has(const std::string& k) const { return values.contains(k); }
  std::int64_t integer(const std::string& k, std::int64_t fallback, std::int64_t lo = 1) const {
    return has(k) ? to_int(values, k, lo) : fallback;
  }
};

WorkloadConfig workload_from(const Settings& s) {
  WorkloadConfig w;
  w.tables = static_cast<std::size_t>(s.integer("tables", static_cast<std::int64_t>(w.tables)));
  w.rows_per_table = static_cast<std::size_t>(s.integer("rows", static_cast<std::int64_t>(w.rows_per_table)));
  w.operations = static_cast<std::uint64_t>(s.integer("ops", static_cast<std::int64_t>(w.operations)));
  w.clients = static_cast<std::size_t>(s.integer("clients", static_cast<std::int64_t>(w.clients)));
  w.seed = static_cast<std::uint64_t>(s.integer("seed", static_cast<std::int64_t>(w.seed), 0));
  w.secondary_indexes =
      static_cast<std::size_t>(s.integer("secondary-indexes", static_cast<std::int64_t>(w.secondary_indexes), 0));
  w.gc_interval = static_cast<std::uint64_t>(s.integer("gc-interval", static_cast<std::int64_t>(w.gc_interval)));
  w.cpu_us_per_op = s.integer("cpu-us-per-op", w.cpu_us_per_op, 0);
  if (s.has("mix")) w.mix = parse_mix(s.values.at("mix"));
  if (w.secondary_indexes > kMaxSecondaryIndexes) throw ConfigError("secondary-indexes: at most 4");
  return w;
}

std::optional<VersionStorage> engine_from(const Settings& s) {
  if (!s.has("engine")) return std::nullopt;
  const std::string& e = s.values.at("engine");
  if (e == EngineConfig::append_only_stack().label()) return VersionStorage::AppendOnly;
  if (e == EngineConfig::delta_stack().label()) return VersionStorage::Delta;
  return parse_version_storage(e);
}

void apply_common(const Settings& s, EngineConfig& ec) {
  ec.pool_pages = static_cast<std::size_t>(s.integer("pool-pages", static_cast<std::int64_t>(ec.pool_pages)));
  ec.device.target_bandwidth_mib_s = s.integer("bandwidth", ec.device.target_bandwidth_mib_s);
  ec.device.window_ms = s.integer("window-ms", ec.device.window_ms);
  if (s.has("index-pointers")) ec.pointers = parse_pointer_mode(s.values.at("index-pointers"));
}

// The stack(s) a command runs, with --gc checked against each.
ExperimentConfig experiment_from(const Settings& s) {
  ExperimentConfig c;
  c.workload = workload_from(s);
  if (auto e = engine_from(s)) {
    c.run_append_only = *e == VersionStorage::AppendOnly;
    c.run_delta = *e == VersionStorage::Delta;
  }
  apply_common(s, c.append_only);
  apply_common(s, c.delta);
  if (s.has("gc")) {
    const GcMode g = parse_gc_mode(s.values.at("gc"));
    if (g == GcMode::Purge) {
      if (c.run_append_only) throw ConfigError("gc: purge does not pair with append-only storage");
      c.delta.gc = g;
    } else {
      if (c.run_delta) throw ConfigError("gc: " + s.values.at("gc") + " does not pair with delta storage");
      c.append_only.gc = g;
    }
  }
  if (s.has("bandwidths")) {
    c.bandwidths.clear();
    std::stringstream ss(s.values.at("bandwidths"));
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::map<std::string, std::string> one{{"bandwidths", trim(item)}};
      c.bandwidths.push_back(to_int(one, "bandwidths", 1));
    }
  }
  return c;
}

EngineConfig single_engine(const ExperimentConfig& c) {
  if (c.run_append_only && c.run_delta) return c.append_only;
  return c.run_append_only ? c.append_only : c.delta;
}

void emit(const ExperimentReport& report, const Settings& s, std::ostream& out) {
  if (s.has("out")) {
    write_report(report, s.values.at("out"));
    out << "wrote " << s.values.at("out") << "\n";
    return;
  }
  ExperimentReport body = report;
  body.manifest.clear();
  out << to_csv(body);
}

void print_manifest(const std::vector<std::string>& manifest, std::ostream& out) {
  for (const auto& line : manifest) out << "# " << line << "\n";
  out.flush();
}

std::vector<std::string> single_manifest(const std::string& command, const EngineConfig& ec,
                                         const WorkloadConfig& w) {
  ExperimentConfig c;
  c.workload = w;
  c.run_append_only = ec.storage == VersionStorage::AppendOnly;
  c.run_delta = !c.run_append_only;
  (c.run_append_only ? c.append_only : c.delta) = ec;
  auto m = c.manifest();
  m.insert(m.begin(), "command = " + command);
  m.push_back("mix = " + std::string(to_string(w.mix)));
  return m;
}

const char* gc_row_label(GcMode g) {
  switch (g) {
    case GcMode::VacuumAuto: return "vacuum_auto";
    case GcMode::VacuumManualOnly: return "vacuum_off";
    case GcMode::Purge: return "purge";
  }
  return "?";
}

int cmd_populate_or_run(const Settings& s, bool run, std::ostream& out) {
  const ExperimentConfig c = experiment_from(s);
  const EngineConfig ec = single_engine(c);
  ec.validate();
  WorkloadConfig w = c.workload;
  w.validate();
  print_manifest(single_manifest(run ? "run" : "populate", ec, w), out);

  Engine engine(ec);
  const auto tables = populate(engine, w);
  ExperimentReport report;
  report.manifest = single_manifest(run ? "run" : "populate", ec, w);
  const std::string exp = run ? "run" : "populate";
  auto row = [&](const std::string& metric, double v) {
    report.rows.push_back({exp, ec.label(), gc_row_label(ec.gc), ec.device.target_bandwidth_mib_s, metric, v});
  };
  if (run) {
    const RunStats st = run_mix(engine, tables, w);
    if (st.selects > 0) row("pages_per_select", st.pages_per_select());
    if (st.updates > 0) row("pages_per_update", st.pages_per_update());
    row("tps", st.tps());
  }
  row("chain_length_mean", chain_length_mean(engine, tables));
  row("table_pages", static_cast<double>(table_pages(engine, tables)));
  report.normalize();
  emit(report, s, out);
  return kExitOk;
}

int cmd_experiment(const Settings& s, ExperimentKind kind, std::ostream& out) {
  const ExperimentConfig c = experiment_from(s);
  c.validate(kind);
  print_manifest(c.manifest(kind), out);
  const ExperimentReport report = run_experiment(kind, c);
  emit(report, s, out);
  return kExitOk;
}

int cmd_report(const std::string& path, std::ostream& out) {
  const ExperimentReport r = read_report(path);
  print_manifest(r.manifest, out);
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-28s %-14s %9s %-18s %s\n", "experiment", "engine", "gc_mode",
                "bandwidth", "metric", "value");
  out << line;
  for (const auto& m : r.rows) {
    std::snprintf(line, sizeof line, "%-10s %-28s %-14s %9lld %-18s %s\n", m.experiment.c_str(), m.engine.c_str(),
                  m.gc_mode.c_str(), static_cast<long long>(m.bandwidth_mib_s), m.metric.c_str(),
                  format_value(m.value).c_str());
    out << line;
  }
  return kExitOk;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text, const std::vector<std::string>& known) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(key + ": unknown configuration key");
    }
    if (value.empty()) throw ConfigError(key + ": empty value");
    out[key] = value;
  }
  return out;
}

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-version storage engine simulator"};
  app.require_subcommand(1);
  std::map<std::string, std::string> flags;
  std::string config_path;
  std::string experiment_kind;
  std::string report_path;

  auto add_flags = [&](CLI::App* sub) {
    for (const auto& key : kKeys) {
      sub->add_option_function<std::string>("--" + key, [&flags, key](const std::string& v) { flags[key] = v; });
    }
    sub->add_option("--config", config_path, "key = value configuration file");
  };
  auto* populate_cmd = app.add_subcommand("populate", "load tables and report their shape");
  auto* run_cmd = app.add_subcommand("run", "populate, then run one workload mix");
  auto* exp_cmd = app.add_subcommand("experiment", "run experiment e1 or e2");
  exp_cmd->add_option("kind", experiment_kind, "e1 or e2")->required()->check(CLI::IsMember({"e1", "e2"}));
  auto* sweep_cmd = app.add_subcommand("sweep", "oltp_mixed tps across bandwidths");
  auto* report_cmd = app.add_subcommand("report", "print a CSV report as a table");
  report_cmd->add_option("csv", report_path, "report file")->required();
  for (auto* sub : {populate_cmd, run_cmd, exp_cmd, sweep_cmd}) add_flags(sub);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (report_cmd->parsed()) return cmd_report(report_path, out);
    Settings s;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("config: cannot read " + config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      s.values = parse_config_text(buf.str(), kKeys);
    }
    for (const auto& [k, v] : flags) s.values[k] = v;
    if (populate_cmd->parsed()) return cmd_populate_or_run(s, false, out);
    if (run_cmd->parsed()) return cmd_populate_or_run(s, true, out);
    if (exp_cmd->parsed()) {
      return cmd_experiment(s, experiment_kind == "e1" ? ExperimentKind::E1 : ExperimentKind::E2, out);
    }
    if (sweep_cmd->parsed()) return cmd_experiment(s, ExperimentKind::Sweep, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StorageFault& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mvsim
