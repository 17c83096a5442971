#include "mvsim/mvcc/transaction.hpp"

#include <algorithm>
#include <string>

namespace mvsim {

bool Snapshot::precedes(TxnId t) const {
  return t != kNoTxn && t < next_unassigned &&
         !std::binary_search(in_flight.begin(), in_flight.end(), t);
}

Transaction TxnManager::begin() {
  Transaction txn;
  txn.id = next_++;
  txn.snapshot.owner = txn.id;
  txn.snapshot.next_unassigned = next_;
  txn.snapshot.in_flight.reserve(active_.size());
  for (const auto& [id, snap] : active_) txn.snapshot.in_flight.push_back(id);
  status_.push_back(TxnStatus::Active);
  active_.emplace(txn.id, txn.snapshot);
  return txn;
}

void TxnManager::finish(TxnId id, TxnStatus outcome) {
  if (!is_active(id)) {
    throw UsageError("transaction " + std::to_string(id) + " is not active");
  }
  status_[id] = outcome;
  active_.erase(id);
}

void TxnManager::commit(TxnId id) { finish(id, TxnStatus::Committed); }
void TxnManager::abort(TxnId id) { finish(id, TxnStatus::Aborted); }

TxnStatus TxnManager::status(TxnId id) const {
  if (id == kNoTxn || id >= status_.size()) {
    throw UsageError("unknown transaction " + std::to_string(id));
  }
  return status_[id];
}

bool TxnManager::is_active(TxnId id) const {
  return id != kNoTxn && id < status_.size() && status_[id] == TxnStatus::Active;
}

const Snapshot& TxnManager::snapshot(TxnId id) const {
  auto it = active_.find(id);
  if (it == active_.end()) throw UsageError("transaction " + std::to_string(id) + " is not active");
  return it->second;
}

bool snapshot_includes(TxnId t, const Snapshot& s, const TxnManager& txns) {
  if (t == kNoTxn) return false;
  if (t == s.owner) return true;
  return s.precedes(t) && txns.status(t) == TxnStatus::Committed;
}

bool visible(const VersionStamps& v, const Snapshot& s, const TxnManager& txns) {
  if (!snapshot_includes(v.creator, s, txns)) return false;
  return v.deleter == kNoTxn || !snapshot_includes(v.deleter, s, txns);
}

}  // namespace mvsim
