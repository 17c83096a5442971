#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace mvsim {

using PageId = std::uint32_t;
using SlotId = std::uint16_t;
using TxnId = std::uint64_t;
using Key = std::uint64_t;
using TableId = std::uint32_t;

inline constexpr TxnId kNoTxn = 0;
inline constexpr PageId kNoPage = 0xFFFFFFFFu;

// Physical location of a tuple or undo record: page plus stable slot number.
struct Tid {
  PageId page = kNoPage;
  SlotId slot = 0;

  constexpr bool valid() const { return page != kNoPage; }
  constexpr std::uint64_t pack() const {
    return (static_cast<std::uint64_t>(page) << 16) | slot;
  }
  static constexpr Tid unpack(std::uint64_t v) {
    return Tid{static_cast<PageId>(v >> 16), static_cast<SlotId>(v & 0xFFFFu)};
  }
  friend constexpr bool operator==(const Tid&, const Tid&) = default;
  friend constexpr auto operator<=>(const Tid&, const Tid&) = default;
};

inline constexpr Tid kNoTid{};

struct TidHash {
  std::size_t operator()(const Tid& t) const noexcept {
    return std::hash<std::uint64_t>{}(t.pack());
  }
};

// Page traffic is attributed to the kind of work that caused it.
enum class OpClass : std::uint8_t { Select, Update, Vacuum, Purge, Populate };
inline constexpr std::size_t kOpClassCount = 5;

const char* to_string(OpClass c);

// Engine bug: a page or record the engine believes exists does not.
class StorageFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Internal consistency check failed.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid configuration (bad bandwidth, invalid storage/GC pairing, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// API misuse by the caller (finishing a transaction twice, repopulating, ...).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Requested history step lies beyond the available chain.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace mvsim
