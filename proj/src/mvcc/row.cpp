#include "mvsim/mvcc/row.hpp"

#include <cstring>

#include "mvsim/storage/page.hpp"

namespace mvsim {

std::size_t column_width(Column c) {
  switch (c) {
    case Column::Key:
    case Column::Counter: return 8;
    case Column::Filler1: return kFiller1Width;
    case Column::Filler2: return kFiller2Width;
  }
  throw UsageError("unknown column");
}

const char* to_string(Column c) {
  switch (c) {
    case Column::Key: return "key";
    case Column::Counter: return "counter";
    case Column::Filler1: return "filler1";
    case Column::Filler2: return "filler2";
  }
  return "?";
}

std::string fixed_width(std::string_view s, std::size_t width) {
  std::string out(s.substr(0, width));
  out.resize(width, ' ');
  return out;
}

ColumnChange ColumnChange::counter(std::int64_t v) {
  std::string raw(8, '\0');
  std::memcpy(raw.data(), &v, 8);
  return {Column::Counter, std::move(raw)};
}

ColumnChange ColumnChange::filler1(std::string_view s) {
  return {Column::Filler1, fixed_width(s, kFiller1Width)};
}

ColumnChange ColumnChange::filler2(std::string_view s) {
  return {Column::Filler2, fixed_width(s, kFiller2Width)};
}

std::string Row::get(Column c) const {
  switch (c) {
    case Column::Key: {
      std::string raw(8, '\0');
      std::memcpy(raw.data(), &key, 8);
      return raw;
    }
    case Column::Counter: {
      std::string raw(8, '\0');
      std::memcpy(raw.data(), &counter, 8);
      return raw;
    }
    case Column::Filler1: return std::string(filler1.data(), filler1.size());
    case Column::Filler2: return std::string(filler2.data(), filler2.size());
  }
  throw UsageError("unknown column");
}

void Row::set(Column c, std::string_view raw) {
  if (raw.size() != column_width(c)) {
    throw UsageError(std::string("value width mismatch for column ") + to_string(c));
  }
  switch (c) {
    case Column::Key: std::memcpy(&key, raw.data(), 8); break;
    case Column::Counter: std::memcpy(&counter, raw.data(), 8); break;
    case Column::Filler1: std::memcpy(filler1.data(), raw.data(), kFiller1Width); break;
    case Column::Filler2: std::memcpy(filler2.data(), raw.data(), kFiller2Width); break;
  }
}

std::uint64_t Row::secondary_key(std::size_t index) const {
  if (index >= kMaxSecondaryIndexes) throw UsageError("secondary index number out of range");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    v = (v << 8) | static_cast<unsigned char>(filler2[8 * index + i]);
  }
  return v;
}

void Row::encode(std::span<std::byte> out) const {
  if (out.size() < kRowSize) throw StorageFault("row buffer too small");
  store<Key>(out, 0, key);
  store<std::int64_t>(out, 8, counter);
  std::memcpy(out.data() + 16, filler1.data(), kFiller1Width);
  std::memcpy(out.data() + 16 + kFiller1Width, filler2.data(), kFiller2Width);
}

Row Row::decode(std::span<const std::byte> in) {
  if (in.size() < kRowSize) throw StorageFault("row buffer too small");
  Row r;
  r.key = load<Key>(in, 0);
  r.counter = load<std::int64_t>(in, 8);
  std::memcpy(r.filler1.data(), in.data() + 16, kFiller1Width);
  std::memcpy(r.filler2.data(), in.data() + 16 + kFiller1Width, kFiller2Width);
  return r;
}

}  // namespace mvsim
