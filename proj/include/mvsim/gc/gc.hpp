#pragma once

#include <cstdint>
#include <optional>
#include <set>

#include "mvsim/mvcc/transaction.hpp"

namespace mvsim {

// Oldest point in transaction history any active snapshot may still need.
struct GcHorizon {
  std::optional<Snapshot> oldest_active_snapshot;
  // Every committed transaction below the cutoff is in all active snapshots,
  // and in every snapshot taken from now on.
  TxnId cutoff = 1;

  bool all_visible(TxnId t, const TxnManager& txns) const {
    return t != kNoTxn && t < cutoff && txns.status(t) == TxnStatus::Committed;
  }
};

GcHorizon compute_horizon(const TxnManager& txns);

struct VacuumStats {
  std::uint64_t pages_scanned = 0;
  std::uint64_t versions_examined = 0;
  std::uint64_t versions_reclaimed = 0;
  std::uint64_t index_entries_unlinked = 0;
  std::uint64_t pages_with_freed_space = 0;
};

struct PurgeStats {
  std::uint64_t records_removed = 0;
  std::uint64_t pages_freed = 0;
};

struct TableActivity {
  std::uint64_t dead_version_estimate = 0;
  std::uint64_t live_row_estimate = 0;
  // Heap pages changed since the last vacuum, plus pages that vacuum had to
  // leave holding superseded versions still needed by some snapshot.
  std::set<PageId> modified_pages;
};

struct AutovacuumPolicy {
  double threshold_fraction = 0.2;
  std::uint64_t threshold_base = 50;
};

// dead > fraction * live + base
bool autovacuum_check(const TableActivity& activity, const AutovacuumPolicy& policy);

}  // namespace mvsim
