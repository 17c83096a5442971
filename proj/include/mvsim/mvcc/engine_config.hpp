#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "mvsim/gc/gc.hpp"
#include "mvsim/index/maintenance.hpp"
#include "mvsim/storage/device.hpp"

namespace mvsim {

enum class VersionStorage : std::uint8_t { AppendOnly, Delta };
enum class GcMode : std::uint8_t { VacuumAuto, VacuumManualOnly, Purge };

// About a quarter of the populated default table set, so that scans and
// version-chain walks reach the device.
inline constexpr std::size_t kDefaultPoolPages = 256;

struct EngineConfig {
  VersionStorage storage = VersionStorage::AppendOnly;
  PointerMode pointers = PointerMode::Physical;
  GcMode gc = GcMode::VacuumAuto;
  std::size_t pool_pages = kDefaultPoolPages;
  DeviceConfig device;
  AutovacuumPolicy autovacuum;
  std::size_t vacuum_ring_pages = 32;
  // Heap-only versions superseded on one page before a visit prunes it.
  std::uint16_t prune_threshold = 8;

  // Delta storage goes with purge, append-only with a vacuum mode.
  void validate() const;

  // "appendonly-physical-vacuum", "delta-logical-purge", ...
  std::string label() const;

  static EngineConfig append_only_stack();
  static EngineConfig delta_stack();
};

const char* to_string(VersionStorage v);
const char* to_string(PointerMode p);
const char* to_string(GcMode g);

// Throw ConfigError naming the rejected text.
VersionStorage parse_version_storage(std::string_view s);
PointerMode parse_pointer_mode(std::string_view s);
GcMode parse_gc_mode(std::string_view s);

}  // namespace mvsim
