#include "mvsim/index/maintenance.hpp"

namespace mvsim {

HotDecision decide_hot(bool indexed_column_changed, bool page_has_space) {
  if (indexed_column_changed) return {false, HotReason::IndexedColumnChanged};
  if (!page_has_space) return {false, HotReason::PageFull};
  return {true, HotReason::Ok};
}

std::vector<IndexMutation> maintain_on_update(const UpdateDescription& upd, PointerMode mode) {
  if (upd.old_skeys.size() != upd.new_skeys.size()) {
    throw UsageError("maintain_on_update: key vectors differ in length");
  }
  std::vector<IndexMutation> out;
  if (upd.heap_only && upd.old_skeys != upd.new_skeys) {
    throw UsageError("maintain_on_update: heap-only update changed an indexed column");
  }
  const bool moved = !upd.heap_only && upd.new_location != upd.old_location;
  for (std::size_t i = 0; i < upd.new_skeys.size(); ++i) {
    const bool changed = upd.new_skeys[i] != upd.old_skeys[i];
    if (mode == PointerMode::Physical) {
      if (moved || changed) out.push_back({i, {upd.new_skeys[i], upd.new_location.pack()}});
    } else if (changed) {
      out.push_back({i, {upd.new_skeys[i], upd.key}});
    }
  }
  return out;
}

}  // namespace mvsim
