#pragma once

#include <cstdint>
#include <vector>

#include "mvsim/index/paged_index.hpp"

namespace mvsim {

// What a secondary-index entry stores: a version's location, or the primary
// key resolved later through the indirection table.
enum class PointerMode : std::uint8_t { Physical, Logical };

enum class HotReason : std::uint8_t { IndexedColumnChanged, PageFull, Ok };

struct HotDecision {
  bool eligible = false;
  HotReason reason = HotReason::PageFull;
};

// Heap-only update: allowed when no indexed column changes and the old
// version's page can take the new copy.
HotDecision decide_hot(bool indexed_column_changed, bool page_has_space);

struct UpdateDescription {
  Key key = 0;
  std::vector<std::uint64_t> old_skeys;  // one per secondary index
  std::vector<std::uint64_t> new_skeys;
  Tid old_location;
  Tid new_location;
  bool heap_only = false;  // HOT: new version reachable through the old one's chain
};

struct IndexMutation {
  std::size_t index = 0;  // secondary index number
  IndexEntry entry;
  friend bool operator==(const IndexMutation&, const IndexMutation&) = default;
};

// Secondary-index insertions required by one update.
//
// Physical pointers: a version at a new location (non-HOT) gets an entry in
// every secondary index; a HOT update gets none; an in-place update only needs
// entries for changed keys. Logical pointers: only changed keys produce entries.
// Stale entries are left for garbage collection to remove.
std::vector<IndexMutation> maintain_on_update(const UpdateDescription& upd, PointerMode mode);

}  // namespace mvsim
