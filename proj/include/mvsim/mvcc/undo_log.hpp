#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "mvsim/mvcc/row.hpp"
#include "mvsim/storage/buffer_pool.hpp"

namespace mvsim {

// Undo-log entry for one in-place update of a master row. It holds the
// original values of exactly the columns that update modified.
struct DeltaRecord {
  TableId table = 0;
  Key owner_key = 0;
  TxnId undo_stamp = kNoTxn;     // transaction whose update produced this record
  TxnId prior_creator = kNoTxn;  // creator of the row state the record restores
  Tid prev_delta = kNoTid;       // next-older record of the same row
  std::vector<ColumnChange> changed_columns;

  std::size_t encoded_size() const;
  void encode(std::span<std::byte> out) const;
  static DeltaRecord decode(std::span<const std::byte> in);

  // Rolls `row` back across this record.
  void undo(Row& row) const;

  friend bool operator==(const DeltaRecord&, const DeltaRecord&) = default;
};

// Row as it was `steps` updates before `master`, given the row's delta chain
// ordered newest first. Throws RangeError when steps exceeds the chain.
Row reconstruct(const Row& master, std::span<const DeltaRecord> chain, std::size_t steps);

// Undo records in their own page space. Records are appended to a tail page;
// a page whose records have all been removed returns to a free list and is
// reused lowest-id first.
class UndoLog {
 public:
  explicit UndoLog(BufferPool& pool) : pool_(pool) {}

  Tid append(const DeltaRecord& rec, OpClass cls);
  DeltaRecord read(Tid at, OpClass cls);
  // Reads a record only if `at` still holds the record written for
  // (table, key) by `stamp`; a purged or recycled location yields nullopt.
  std::optional<DeltaRecord> read_if_current(Tid at, TableId table, Key key, TxnId stamp, OpClass cls);
  // Same check without touching the pool.
  std::optional<DeltaRecord> peek_if_current(Tid at, TableId table, Key key, TxnId stamp) const;
  // Returns true when the page became empty and was released.
  bool remove(Tid at, OpClass cls);

  std::size_t live_records() const { return live_total_; }
  std::size_t page_count() const { return live_.size(); }
  std::size_t free_page_count() const { return free_.size(); }

 private:
  PageId fresh_page(OpClass cls);

  BufferPool& pool_;
  PageId tail_ = kNoPage;
  std::map<PageId, std::size_t> live_;  // every undo page -> live record count
  std::set<PageId> free_;
  std::size_t live_total_ = 0;
};

}  // namespace mvsim
