#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvsim/storage/io_counters.hpp"

namespace mvsim {

struct DeviceConfig {
  std::int64_t target_bandwidth_mib_s = 660;
  std::int64_t window_ms = 10;

  // floor(bandwidth * 1 MiB / 4 KiB * window seconds)
  std::uint64_t pages_per_window() const;
  void validate() const;
};

enum class IoKind : std::uint8_t { Read, Write };

// Virtual block device with zero latency and a token-bucket bandwidth cap.
//
// Simulated time only moves forward when a caller charges compute time via
// advance() or when a transfer finds the current window's budget spent, in
// which case the clock jumps to the start of the next window. Tokens do not
// accumulate across windows: the burst is exactly one window budget.
class Device {
 public:
  struct WindowRecord {
    std::int64_t index;
    std::uint64_t served;
    std::uint64_t budget;
  };

  explicit Device(DeviceConfig config);

  // Takes effect at the next window boundary.
  void set_target_bandwidth(const DeviceConfig& config);

  void transfer(OpClass cls, IoKind kind);
  void advance(std::int64_t micros);
  // Idles until a window with its full budget begins.
  void align_to_window();

  std::int64_t now_us() const { return now_us_; }
  std::int64_t window_us() const { return active_.window_ms * 1000; }
  const DeviceConfig& config() const { return active_; }
  IoCounters io_report() const { return counters_; }

  // Windows that served at least one page, oldest first. The window still
  // open is included with its running count.
  std::vector<WindowRecord> window_log() const;

 private:
  void sync_window();

  DeviceConfig active_;
  std::optional<DeviceConfig> pending_;
  std::uint64_t budget_;
  std::int64_t now_us_ = 0;
  std::int64_t window_index_ = 0;
  std::uint64_t served_ = 0;
  std::vector<WindowRecord> closed_;
  IoCounters counters_;
};

}  // namespace mvsim
