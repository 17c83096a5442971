#include "mvsim/storage/device.hpp"

#include <string>

#include "mvsim/storage/page.hpp"

namespace mvsim {

std::uint64_t DeviceConfig::pages_per_window() const {
  // Exact integer form of bw * 1048576 / 4096 * window_ms / 1000.
  const auto per_second = static_cast<std::uint64_t>(target_bandwidth_mib_s) * (1048576 / kPageSize);
  return per_second * static_cast<std::uint64_t>(window_ms) / 1000;
}

void DeviceConfig::validate() const {
  if (target_bandwidth_mib_s <= 0) {
    throw ConfigError("bandwidth: target bandwidth must be positive, got " +
                      std::to_string(target_bandwidth_mib_s));
  }
  if (window_ms <= 0) {
    throw ConfigError("window_ms: throttle window must be positive, got " + std::to_string(window_ms));
  }
  if (pages_per_window() == 0) {
    throw ConfigError("bandwidth: budget rounds to zero pages per window");
  }
}

Device::Device(DeviceConfig config) : active_(config) {
  active_.validate();
  budget_ = active_.pages_per_window();
}

void Device::set_target_bandwidth(const DeviceConfig& config) {
  config.validate();
  pending_ = config;
}

void Device::sync_window() {
  const std::int64_t idx = now_us_ / window_us();
  if (idx == window_index_) return;
  if (served_ > 0) closed_.push_back({window_index_, served_, budget_});
  served_ = 0;
  if (pending_) {
    // Window length may change; re-anchor the index on the new grid.
    active_ = *pending_;
    pending_.reset();
    budget_ = active_.pages_per_window();
  }
  window_index_ = now_us_ / window_us();
}

void Device::transfer(OpClass cls, IoKind kind) {
  sync_window();
  if (served_ >= budget_) {
    now_us_ = (window_index_ + 1) * window_us();
    sync_window();
  }
  ++served_;
  auto& arr = kind == IoKind::Read ? counters_.reads : counters_.writes;
  ++arr[static_cast<std::size_t>(cls)];
}

void Device::advance(std::int64_t micros) {
  if (micros < 0) throw UsageError("time cannot move backwards");
  now_us_ += micros;
  sync_window();
}

void Device::align_to_window() {
  sync_window();
  if (served_ == 0 && now_us_ % window_us() == 0) return;
  now_us_ = (window_index_ + 1) * window_us();
  sync_window();
}

std::vector<Device::WindowRecord> Device::window_log() const {
  auto log = closed_;
  if (served_ > 0) log.push_back({window_index_, served_, budget_});
  return log;
}

}  // namespace mvsim
