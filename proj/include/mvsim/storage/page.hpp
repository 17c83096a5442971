#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>

#include "mvsim/common.hpp"

namespace mvsim {

inline constexpr std::size_t kPageSize = 4096;

// Little-endian fixed-width field access into a byte buffer.
template <typename T>
inline T load(std::span<const std::byte> buf, std::size_t off) {
  T v;
  std::memcpy(&v, buf.data() + off, sizeof(T));
  return v;
}

template <typename T>
inline void store(std::span<std::byte> buf, std::size_t off, T v) {
  std::memcpy(buf.data() + off, &v, sizeof(T));
}

enum class SlotState : std::uint8_t {
  Unused = 0,    // free for reuse
  Normal = 1,    // holds a tuple
  Redirect = 2,  // forwards to another slot on the same page, no storage
  Dead = 3,      // storage released, slot still referenced from an index
};

// Slotted 4 KiB page.
//
//   [0, 16)           header: page id, slot count, tuple-area start, prune hint
//   [16, 16 + 4n)     slot directory, one (offset, state|length) pair per slot
//   [upper, 4096)     tuple bytes, allocated from the end of the page downward
//
// Slot numbers never change while the slot is in use; compaction moves tuple
// bytes but rewrites the directory in place.
class Page {
 public:
  static constexpr std::size_t kHeaderSize = 16;
  static constexpr std::size_t kSlotSize = 4;
  static constexpr std::size_t kMaxTuple = kPageSize - kHeaderSize - kSlotSize;

  Page() { data_.fill(std::byte{0}); }

  void init(PageId id);

  PageId id() const { return load<PageId>(bytes(), 0); }
  SlotId slot_count() const { return load<std::uint16_t>(bytes(), 4); }

  // Bytes available for new tuples including those reclaimable by compaction.
  std::size_t free_space() const;
  bool fits(std::size_t len) const;

  // Places a tuple, reusing the lowest unused slot. Returns nullopt when full.
  std::optional<SlotId> insert(std::span<const std::byte> tuple);

  SlotState state(SlotId s) const;
  std::size_t length(SlotId s) const;
  std::span<std::byte> tuple(SlotId s);
  std::span<const std::byte> tuple(SlotId s) const;
  SlotId redirect_target(SlotId s) const;

  // Releases the tuple bytes of a slot and changes its state.
  void release(SlotId s);
  void set_redirect(SlotId s, SlotId target);
  void set_dead(SlotId s);

  std::size_t live_count() const;

  // Counts versions superseded on this page since the last prune/vacuum.
  std::uint16_t prune_hint() const { return load<std::uint16_t>(bytes(), 8); }
  void set_prune_hint(std::uint16_t v) { store<std::uint16_t>(data_, 8, v); }

  // Structural check: directory and tuple area do not overlap, live tuples
  // lie inside the page and do not overlap each other.
  bool well_formed() const;

  std::span<const std::byte> bytes() const { return data_; }

 private:
  std::uint16_t upper() const { return load<std::uint16_t>(bytes(), 6); }
  void set_upper(std::uint16_t v) { store<std::uint16_t>(data_, 6, v); }
  std::uint16_t live_bytes() const { return load<std::uint16_t>(bytes(), 10); }
  void set_live_bytes(std::uint16_t v) { store<std::uint16_t>(data_, 10, v); }
  void set_slot_count(std::uint16_t n) { store<std::uint16_t>(data_, 4, n); }

  std::size_t slot_offset(SlotId s) const { return kHeaderSize + kSlotSize * s; }
  std::uint16_t raw_offset(SlotId s) const;
  std::uint16_t raw_word(SlotId s) const;
  void set_slot(SlotId s, std::uint16_t offset, SlotState st, std::uint16_t len);
  std::size_t directory_end() const { return slot_offset(slot_count()); }
  void compact();
  void check_slot(SlotId s) const;

  alignas(64) std::array<std::byte, kPageSize> data_;
};

}  // namespace mvsim
