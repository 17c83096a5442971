#pragma once

#include <array>
#include <cstdint>

#include "mvsim/common.hpp"

namespace mvsim {

// Device page transfers split by the class of work that caused them.
struct IoCounters {
  std::array<std::uint64_t, kOpClassCount> reads{};
  std::array<std::uint64_t, kOpClassCount> writes{};

  std::uint64_t pages_read() const;
  std::uint64_t pages_written() const;
  std::uint64_t total() const { return pages_read() + pages_written(); }

  std::uint64_t read(OpClass c) const { return reads[static_cast<std::size_t>(c)]; }
  std::uint64_t written(OpClass c) const { return writes[static_cast<std::size_t>(c)]; }
  std::uint64_t pages(OpClass c) const { return read(c) + written(c); }

  // Component-wise difference; `earlier` must be a prior snapshot of the same device.
  IoCounters since(const IoCounters& earlier) const;

  friend bool operator==(const IoCounters&, const IoCounters&) = default;
};

}  // namespace mvsim
