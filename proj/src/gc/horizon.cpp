#include <algorithm>

#include "mvsim/gc/gc.hpp"

namespace mvsim {

GcHorizon compute_horizon(const TxnManager& txns) {
  GcHorizon h;
  h.cutoff = txns.next_unassigned();
  for (const auto& [id, snap] : txns.active()) {
    TxnId need = snap.next_unassigned;
    if (!snap.in_flight.empty()) need = std::min(need, snap.in_flight.front());
    if (!h.oldest_active_snapshot) h.oldest_active_snapshot = snap;
    h.cutoff = std::min(h.cutoff, need);
  }
  return h;
}

bool autovacuum_check(const TableActivity& activity, const AutovacuumPolicy& policy) {
  const long double threshold =
      static_cast<long double>(policy.threshold_fraction) * activity.live_row_estimate + policy.threshold_base;
  return static_cast<long double>(activity.dead_version_estimate) > threshold;
}

}  // namespace mvsim
