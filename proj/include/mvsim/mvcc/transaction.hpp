#pragma once

#include <map>
#include <vector>

#include "mvsim/common.hpp"

namespace mvsim {

enum class TxnStatus : std::uint8_t { Active, Committed, Aborted };

// Visibility horizon captured at begin().
struct Snapshot {
  TxnId owner = kNoTxn;
  TxnId next_unassigned = 1;
  std::vector<TxnId> in_flight;  // sorted, excludes owner

  // True when `t` had finished before this snapshot was taken (committed or
  // aborted; the status table decides which).
  bool precedes(TxnId t) const;
};

struct Transaction {
  TxnId id = kNoTxn;
  Snapshot snapshot;
};

// In-memory transaction status table. Ids start at 1 and are never reused.
class TxnManager {
 public:
  Transaction begin();
  void commit(TxnId id);
  void abort(TxnId id);

  TxnStatus status(TxnId id) const;
  bool is_active(TxnId id) const;
  const Snapshot& snapshot(TxnId id) const;
  const std::map<TxnId, Snapshot>& active() const { return active_; }
  TxnId next_unassigned() const { return next_; }

 private:
  void finish(TxnId id, TxnStatus outcome);

  TxnId next_ = 1;
  std::vector<TxnStatus> status_{TxnStatus::Aborted};  // slot 0 unused
  std::map<TxnId, Snapshot> active_;
};

struct VersionStamps {
  TxnId creator = kNoTxn;
  TxnId deleter = kNoTxn;
};

// A transaction's effects are in the snapshot when it committed before the
// snapshot was taken. The snapshot owner always sees its own writes.
bool snapshot_includes(TxnId t, const Snapshot& s, const TxnManager& txns);

// Version visibility: creator in the snapshot and deleter (if any) not.
bool visible(const VersionStamps& v, const Snapshot& s, const TxnManager& txns);

}  // namespace mvsim
