#include "mvsim/mvcc/engine_config.hpp"

#include "mvsim/common.hpp"

namespace mvsim {

void EngineConfig::validate() const {
  const bool vacuum = gc == GcMode::VacuumAuto || gc == GcMode::VacuumManualOnly;
  if (storage == VersionStorage::AppendOnly && !vacuum) {
    throw ConfigError("gc: append-only storage requires vacuum_auto or vacuum_manual_only, got " +
                      std::string(to_string(gc)));
  }
  if (storage == VersionStorage::Delta && gc != GcMode::Purge) {
    throw ConfigError("gc: delta storage requires purge, got " + std::string(to_string(gc)));
  }
  if (pool_pages == 0) throw ConfigError("pool-pages: must be positive");
  if (vacuum_ring_pages == 0) throw ConfigError("vacuum_ring_pages: must be positive");
  if (autovacuum.threshold_fraction < 0) throw ConfigError("autovacuum fraction: must be non-negative");
  device.validate();
}

std::string EngineConfig::label() const {
  std::string gc_part = gc == GcMode::Purge ? "purge" : "vacuum";
  return std::string(to_string(storage)) + "-" + to_string(pointers) + "-" + gc_part;
}

EngineConfig EngineConfig::append_only_stack() { return EngineConfig{}; }

EngineConfig EngineConfig::delta_stack() {
  EngineConfig c;
  c.storage = VersionStorage::Delta;
  c.pointers = PointerMode::Logical;
  c.gc = GcMode::Purge;
  return c;
}

const char* to_string(VersionStorage v) { return v == VersionStorage::AppendOnly ? "appendonly" : "delta"; }

const char* to_string(PointerMode p) { return p == PointerMode::Physical ? "physical" : "logical"; }

const char* to_string(GcMode g) {
  switch (g) {
    case GcMode::VacuumAuto: return "vacuum_auto";
    case GcMode::VacuumManualOnly: return "vacuum_manual_only";
    case GcMode::Purge: return "purge";
  }
  return "?";
}

VersionStorage parse_version_storage(std::string_view s) {
  if (s == "appendonly" || s == "append_only" || s == "append_only_o2n") return VersionStorage::AppendOnly;
  if (s == "delta") return VersionStorage::Delta;
  throw ConfigError("engine: unknown version storage '" + std::string(s) + "'");
}

PointerMode parse_pointer_mode(std::string_view s) {
  if (s == "physical") return PointerMode::Physical;
  if (s == "logical") return PointerMode::Logical;
  throw ConfigError("index-pointers: unknown pointer mode '" + std::string(s) + "'");
}

GcMode parse_gc_mode(std::string_view s) {
  if (s == "vacuum_auto") return GcMode::VacuumAuto;
  if (s == "vacuum_manual_only") return GcMode::VacuumManualOnly;
  if (s == "purge") return GcMode::Purge;
  throw ConfigError("gc: unknown gc mode '" + std::string(s) + "'");
}

}  // namespace mvsim
