#pragma once

#include <cstdint>
#include <span>

#include "mvsim/mvcc/row.hpp"

namespace mvsim {

// Per-version header stored in front of every heap tuple.
//
// Append-only storage: creator/deleter play the xmin/xmax roles and `link`
// points at the next newer version, or at the tuple itself when it is the
// newest. Delta storage: creator is the last writer of the master row and
// `link` is the roll pointer into the undo log.
struct TupleHeader {
  TxnId creator = kNoTxn;
  TxnId deleter = kNoTxn;
  Tid link = kNoTid;
  std::uint16_t flags = 0;

  static constexpr std::uint16_t kHotUpdated = 1;  // successor is heap-only
  static constexpr std::uint16_t kHeapOnly = 2;    // no index entry of its own

  bool hot_updated() const { return flags & kHotUpdated; }
  bool heap_only() const { return flags & kHeapOnly; }
};

inline constexpr std::size_t kTupleHeaderSize = 24;
inline constexpr std::size_t kHeapTupleSize = kTupleHeaderSize + kRowSize;  // 220

struct HeapTuple {
  TupleHeader header;
  Row row;

  void encode(std::span<std::byte> out) const;
  static HeapTuple decode(std::span<const std::byte> in);
  static TupleHeader decode_header(std::span<const std::byte> in);
  static void encode_header(std::span<std::byte> out, const TupleHeader& h);
};

}  // namespace mvsim
