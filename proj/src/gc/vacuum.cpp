#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "mvsim/mvcc/engine.hpp"

namespace mvsim {

namespace {

struct VersionInfo {
  TupleHeader header;
  Key key = 0;
  std::vector<std::uint64_t> skeys;
  bool dead = false;
};

// Slot fate during reclaim: nullopt frees the slot, a value turns it into a
// redirect to that slot.
using Fate = std::optional<SlotId>;

}  // namespace

VacuumStats Engine::vacuum(TableId id) {
  if (config_.storage != VersionStorage::AppendOnly) throw ConfigError("gc: vacuum requires append-only storage");
  Table& t = table(id);
  ClassScope scope(*this, OpClass::Vacuum);
  BufferPool::RingScope ring(pool_, config_.vacuum_ring_pages);
  const GcHorizon horizon = compute_horizon(txns_);
  VacuumStats st;

  auto expired = [&](const TupleHeader& h) {
    return txns_.status(h.creator) == TxnStatus::Aborted || horizon.all_visible(h.deleter, txns_);
  };

  // Detect.
  const std::vector<PageId> pages(t.activity.modified_pages.begin(), t.activity.modified_pages.end());
  std::map<Tid, VersionInfo> versions;
  std::map<Tid, SlotId> redirects;
  for (PageId p : pages) {
    const Page& page = heap_read(p);
    ++st.pages_scanned;
    for (SlotId s = 0; s < page.slot_count(); ++s) {
      if (page.state(s) == SlotState::Redirect) {
        redirects[{p, s}] = page.redirect_target(s);
      } else if (page.state(s) == SlotState::Normal) {
        HeapTuple tup = HeapTuple::decode(page.tuple(s));
        ++st.versions_examined;
        versions[{p, s}] = {tup.header, tup.row.key, skeys(t, tup.row), expired(tup.header)};
      }
    }
  }

  auto is_dead = [&](Tid x) {
    auto it = versions.find(x);
    return it != versions.end() && it->second.dead;
  };
  auto follow = [&](Tid x) {
    if (auto r = redirects.find(x); r != redirects.end()) return Tid{x.page, r->second};
    if (versions.contains(x)) return x;
    return resolve(x);
  };
  auto header_of = [&](Tid x) {
    if (auto it = versions.find(x); it != versions.end()) return it->second.header;
    return read_tuple(x).header;
  };

  std::map<Tid, Fate> plan;
  std::map<Tid, Tid> replacement;  // freed entry point -> new entry point
  for (const auto& [at, v] : versions) {
    if (v.dead && v.header.heap_only()) plan[at] = std::nullopt;
  }

  // Every index entry targets a root: a version that is not heap-only, or a
  // redirect. A root whose versions all expired is freed and its entries move
  // to the first survivor, or it becomes a redirect when the survivor is in
  // the same HOT run.
  auto unlink_root = [&](Tid root, Tid start) {
    if (!is_dead(start)) return;
    Tid cur = start;
    Tid run_root = root;
    for (;;) {
      const TupleHeader& h = versions.at(cur).header;
      if (txns_.status(h.creator) == TxnStatus::Aborted || !h.link.valid() || h.link == cur) {
        plan[root] = std::nullopt;
        return;
      }
      const Tid next = follow(h.link);
      // A redirect or a version that is not heap-only starts a new HOT run,
      // possibly on another page.
      if (next != h.link) {
        run_root = h.link;
      } else if (!header_of(next).heap_only()) {
        run_root = next;
      }
      if (is_dead(next)) {
        cur = next;
        continue;
      }
      if (run_root == root) {
        plan[root] = next.slot;
      } else {
        plan[root] = std::nullopt;
        replacement[root] = run_root;
      }
      return;
    }
  };
  for (const auto& [at, v] : versions) {
    if (!v.header.heap_only()) unlink_root(at, at);
  }
  for (const auto& [at, target] : redirects) unlink_root(at, Tid{at.page, target});

  auto freed = [&](std::uint64_t packed) {
    auto it = plan.find(Tid::unpack(packed));
    return it != plan.end() && !it->second;
  };

  // Logical entries go when no surviving version of the row carries the key.
  if (config_.pointers == PointerMode::Logical && t.n_secondary > 0) {
    std::map<Key, std::vector<const VersionInfo*>> dead_by_key;
    for (const auto& [at, v] : versions) {
      if (v.dead) dead_by_key[v.key].push_back(&v);
    }
    for (const auto& [key, dead] : dead_by_key) {
      std::vector<std::set<std::uint64_t>> alive(t.n_secondary);
      if (auto entry = primary_entry(t, key)) {
        Tid cur = resolve(*entry);
        for (;;) {
          HeapTuple tup = read_tuple(cur);
          if (!is_dead(cur)) {
            for (std::size_t i = 0; i < t.n_secondary; ++i) alive[i].insert(tup.row.secondary_key(i));
          }
          if (!tup.header.link.valid() || tup.header.link == cur) break;
          cur = resolve(tup.header.link);
        }
      }
      for (std::size_t i = 0; i < t.n_secondary; ++i) {
        std::set<std::uint64_t> gone;
        for (const VersionInfo* v : dead) {
          if (!alive[i].contains(v->skeys[i])) gone.insert(v->skeys[i]);
        }
        for (std::uint64_t sk : gone) st.index_entries_unlinked += t.secondary[i]->erase({sk, key}, cls_);
      }
    }
  }

  // Unlink from indexes.
  auto repoint = [&](PagedIndex& idx) {
    std::vector<IndexEntry> moved;
    const std::size_t n = idx.scan_all(
        [&](const IndexEntry& e) {
          if (!freed(e.value)) return PagedIndex::Action::Keep;
          auto r = replacement.find(Tid::unpack(e.value));
          if (r == replacement.end()) throw InvariantViolation("chain entry point reclaimed with no survivor");
          moved.push_back({e.key, r->second.pack()});
          return PagedIndex::Action::Erase;
        },
        cls_);
    for (const auto& e : moved) idx.insert(e, cls_);
    return n;
  };
  if (!plan.empty()) {
    st.index_entries_unlinked += repoint(*t.primary);
    if (t.indirection) st.index_entries_unlinked += repoint(*t.indirection);
    if (config_.pointers == PointerMode::Physical) {
      for (auto& idx : t.secondary) {
        st.index_entries_unlinked += idx->scan_all(
            [&](const IndexEntry& e) { return freed(e.value) ? PagedIndex::Action::Erase : PagedIndex::Action::Keep; },
            cls_);
      }
    }
  }

  // Reclaim.
  std::map<PageId, std::vector<std::pair<SlotId, Fate>>> by_page;
  for (const auto& [at, fate] : plan) by_page[at.page].emplace_back(at.slot, fate);
  for (const auto& [p, fates] : by_page) {
    Page& page = heap_write(t, p);
    for (const auto& [slot, fate] : fates) {
      if (page.state(slot) == SlotState::Normal) ++st.versions_reclaimed;
      if (fate) {
        page.set_redirect(slot, *fate);
      } else {
        page.release(slot);
      }
    }
    page.set_prune_hint(0);
    refresh_free_space(t, p);
    ++st.pages_with_freed_space;
  }

  // Pages still holding superseded versions stay on the list for next time.
  std::set<PageId> keep;
  std::uint64_t remaining = 0;
  for (const auto& [at, v] : versions) {
    if (plan.contains(at)) continue;
    if (v.header.deleter != kNoTxn || txns_.status(v.header.creator) == TxnStatus::Aborted) {
      keep.insert(at.page);
      ++remaining;
    }
  }
  t.activity.modified_pages = std::move(keep);
  t.activity.dead_version_estimate = remaining;
  t.activity.live_row_estimate = t.primary->entry_count();
  return st;
}

std::size_t Engine::prune_page(Table& t, PageId p) {
  const GcHorizon horizon = compute_horizon(txns_);
  const Page& page = heap_read(p);
  const SlotId n = page.slot_count();

  struct Slot {
    bool normal = false;
    TupleHeader header;
    bool dead = false;
  };
  std::vector<Slot> slots(n);
  for (SlotId s = 0; s < n; ++s) {
    if (page.state(s) != SlotState::Normal) continue;
    const TupleHeader h = HeapTuple::decode_header(page.tuple(s));
    const bool aborted = txns_.status(h.creator) == TxnStatus::Aborted;
    slots[s] = {true, h, aborted || horizon.all_visible(h.deleter, txns_)};
  }

  std::map<SlotId, Fate> plan;
  for (SlotId s = 0; s < n; ++s) {
    const Slot& v = slots[s];
    if (v.normal && v.dead && v.header.heap_only() && txns_.status(v.header.creator) == TxnStatus::Aborted) {
      plan[s] = std::nullopt;
    }
  }
  for (SlotId s = 0; s < n; ++s) {
    SlotId start = s;
    if (page.state(s) == SlotState::Redirect) {
      start = page.redirect_target(s);
    } else if (!slots[s].normal || slots[s].header.heap_only()) {
      continue;
    }
    std::vector<SlotId> passed;
    SlotId cur = start;
    while (slots[cur].normal && slots[cur].dead && slots[cur].header.hot_updated() &&
           slots[cur].header.link.page == p) {
      if (slots[cur].header.heap_only()) passed.push_back(cur);
      cur = slots[cur].header.link.slot;
    }
    if (cur == start || !slots[cur].normal || slots[cur].dead) continue;
    plan[s] = cur;
    for (SlotId x : passed) plan[x] = std::nullopt;
  }
  if (plan.empty()) return 0;

  Page& w = heap_write(t, p);
  std::size_t reclaimed = 0;
  for (const auto& [slot, fate] : plan) {
    if (w.state(slot) == SlotState::Normal) ++reclaimed;
    if (fate) {
      w.set_redirect(slot, *fate);
    } else {
      w.release(slot);
    }
  }
  w.set_prune_hint(0);
  refresh_free_space(t, p);
  t.activity.dead_version_estimate -= std::min<std::uint64_t>(t.activity.dead_version_estimate, reclaimed);
  return reclaimed;
}

}  // namespace mvsim
