#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvsim/common.hpp"

namespace mvsim {

// Fixed sysbench-like row: (key, counter, filler1 char(120), filler2 char(60)).
enum class Column : std::uint8_t { Key = 0, Counter = 1, Filler1 = 2, Filler2 = 3 };
inline constexpr std::size_t kColumnCount = 4;

std::size_t column_width(Column c);
const char* to_string(Column c);

inline constexpr std::size_t kFiller1Width = 120;
inline constexpr std::size_t kFiller2Width = 60;
inline constexpr std::size_t kRowSize = 8 + 8 + kFiller1Width + kFiller2Width;  // 196

// Secondary index i is keyed on bytes [8i, 8i+8) of filler2.
inline constexpr std::size_t kMaxSecondaryIndexes = 4;

// New value for one column, stored as the column's raw bytes.
struct ColumnChange {
  Column column;
  std::string value;

  static ColumnChange counter(std::int64_t v);
  static ColumnChange filler1(std::string_view s);
  static ColumnChange filler2(std::string_view s);

  friend bool operator==(const ColumnChange&, const ColumnChange&) = default;
};

struct Row {
  Key key = 0;
  std::int64_t counter = 0;
  std::array<char, kFiller1Width> filler1{};
  std::array<char, kFiller2Width> filler2{};

  std::string get(Column c) const;
  void set(Column c, std::string_view raw);
  void apply(const ColumnChange& change) { set(change.column, change.value); }

  // Big-endian prefix of filler2 so ordering matches byte order.
  std::uint64_t secondary_key(std::size_t index) const;

  void encode(std::span<std::byte> out) const;
  static Row decode(std::span<const std::byte> in);

  friend bool operator==(const Row&, const Row&) = default;
};

// Pads or truncates to the column width.
std::string fixed_width(std::string_view s, std::size_t width);

}  // namespace mvsim
