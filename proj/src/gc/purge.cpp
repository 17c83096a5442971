#include <set>

#include "mvsim/mvcc/engine.hpp"

namespace mvsim {

PurgeStats Engine::purge() {
  if (config_.storage != VersionStorage::Delta) throw ConfigError("gc: purge requires delta storage");
  ClassScope scope(*this, OpClass::Purge);
  const GcHorizon horizon = compute_horizon(txns_);
  PurgeStats st;
  // History is in commit order, and the horizon only admits a prefix of it.
  while (!history_.empty() && horizon.all_visible(history_.front().txn, txns_)) {
    for (const Tid at : history_.front().undo) {
      ++st.records_removed;
      st.pages_freed += purge_record(at);
    }
    history_.pop_front();
  }
  return st;
}

bool Engine::purge_record(Tid at) {
  const DeltaRecord rec = undo_.read(at, cls_);
  Table& t = table(rec.table);
  const ColumnChange* filler2 = nullptr;
  for (const auto& c : rec.changed_columns) {
    if (c.column == Column::Filler2) filler2 = &c;
  }
  if (filler2 && t.n_secondary > 0) {
    // The state this record restores disappears; drop its secondary keys
    // unless a newer state of the row still carries them.
    Row before;
    before.set(Column::Filler2, filler2->value);
    auto entry = primary_entry(t, rec.owner_key);
    if (!entry) throw InvariantViolation("undo record for a row with no master");
    HeapTuple master = read_tuple(*entry);
    std::vector<std::set<std::uint64_t>> alive(t.n_secondary);
    Row state = master.row;
    TxnId creator = master.header.creator;
    Tid ptr = master.header.link;
    for (;;) {
      for (std::size_t i = 0; i < t.n_secondary; ++i) alive[i].insert(state.secondary_key(i));
      if (ptr == at || !ptr.valid()) break;
      auto newer = undo_.read_if_current(ptr, t.id, rec.owner_key, creator, cls_);
      if (!newer) throw InvariantViolation("undo chain broken ahead of purge");
      newer->undo(state);
      creator = newer->prior_creator;
      ptr = newer->prev_delta;
    }
    const std::uint64_t value = config_.pointers == PointerMode::Logical ? rec.owner_key : entry->pack();
    for (std::size_t i = 0; i < t.n_secondary; ++i) {
      const std::uint64_t sk = before.secondary_key(i);
      if (!alive[i].contains(sk)) t.secondary[i]->erase({sk, value}, cls_);
    }
  }
  return undo_.remove(at, cls_);
}

}  // namespace mvsim
