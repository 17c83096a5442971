#include "mvsim/mvcc/engine.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace mvsim {

namespace {

const EngineConfig& validated(const EngineConfig& c) {
  c.validate();
  return c;
}

void check_changes(std::span<const ColumnChange> changes) {
  for (const auto& c : changes) {
    if (c.column == Column::Key) throw UsageError("the key column cannot be updated");
  }
}

}  // namespace

const char* to_string(OpStatus s) {
  switch (s) {
    case OpStatus::Ok: return "ok";
    case OpStatus::NotFound: return "not_found";
    case OpStatus::Duplicate: return "duplicate";
    case OpStatus::Conflict: return "conflict";
  }
  return "?";
}

Engine::Engine(EngineConfig config)
    : config_(validated(config)),
      device_(config_.device),
      pool_(store_, device_, config_.pool_pages),
      undo_(pool_) {}

TableId Engine::create_table(TableSpec spec) {
  if (spec.secondary_indexes > kMaxSecondaryIndexes) {
    throw ConfigError("secondary_indexes: at most " + std::to_string(kMaxSecondaryIndexes));
  }
  auto t = std::make_unique<Table>();
  t->id = static_cast<TableId>(tables_.size());
  t->n_secondary = spec.secondary_indexes;
  t->primary = std::make_unique<PagedIndex>(pool_, PageSpace::Index);
  if (config_.pointers == PointerMode::Logical) {
    t->indirection = std::make_unique<PagedIndex>(pool_, PageSpace::Indirection);
  }
  for (std::size_t i = 0; i < spec.secondary_indexes; ++i) {
    t->secondary.push_back(std::make_unique<PagedIndex>(pool_, PageSpace::Index));
  }
  tables_.push_back(std::move(t));
  return tables_.back()->id;
}

Engine::Table& Engine::table(TableId id) {
  if (id >= tables_.size()) throw UsageError("unknown table " + std::to_string(id));
  return *tables_[id];
}

const Engine::Table& Engine::table(TableId id) const {
  if (id >= tables_.size()) throw UsageError("unknown table " + std::to_string(id));
  return *tables_[id];
}

const Snapshot& Engine::active_snapshot(TxnId txn) const {
  if (!txns_.is_active(txn)) throw UsageError("transaction " + std::to_string(txn) + " is not active");
  return txns_.snapshot(txn);
}

std::vector<std::uint64_t> Engine::skeys(const Table& t, const Row& row) const {
  std::vector<std::uint64_t> out(t.n_secondary);
  for (std::size_t i = 0; i < t.n_secondary; ++i) out[i] = row.secondary_key(i);
  return out;
}

Transaction Engine::begin() {
  Transaction t = txns_.begin();
  work_[t.id];
  return t;
}

void Engine::finish(TxnId txn, Outcome outcome) {
  if (!txns_.is_active(txn)) throw UsageError("transaction " + std::to_string(txn) + " is not active");
  auto it = work_.find(txn);
  TxnWork work = it == work_.end() ? TxnWork{} : std::move(it->second);
  if (it != work_.end()) work_.erase(it);

  if (outcome == Outcome::Commit) {
    txns_.commit(txn);
    if (config_.storage == VersionStorage::Delta) {
      HistoryEntry h{txn, {}};
      for (const auto& w : work.writes) {
        if (!w.is_insert) h.undo.push_back(w.new_location);
      }
      if (!h.undo.empty()) history_.push_back(std::move(h));
    }
    return;
  }

  txns_.abort(txn);
  ClassScope scope(*this, OpClass::Update);
  for (auto w = work.writes.rbegin(); w != work.writes.rend(); ++w) {
    if (config_.storage == VersionStorage::AppendOnly) {
      rollback_append_only(*w);
    } else {
      rollback_delta(*w);
    }
  }
}

OpStatus Engine::conflict(TxnId txn) {
  finish(txn, Outcome::Abort);
  return OpStatus::Conflict;
}

// ---- heap access -----------------------------------------------------------

Page& Engine::heap_write(Table& t, PageId p) {
  Page& page = pool_.write_page(p, cls_);
  if (config_.storage == VersionStorage::AppendOnly) t.activity.modified_pages.insert(p);
  return page;
}

HeapTuple Engine::read_tuple(Tid at) {
  const Page& page = heap_read(at.page);
  if (at.slot >= page.slot_count() || page.state(at.slot) != SlotState::Normal) {
    throw InvariantViolation("no version at " + std::to_string(at.page) + ":" + std::to_string(at.slot));
  }
  return HeapTuple::decode(page.tuple(at.slot));
}

Tid Engine::resolve(Tid at) {
  const Page& page = heap_read(at.page);
  if (at.slot >= page.slot_count()) throw InvariantViolation("slot out of range");
  if (page.state(at.slot) == SlotState::Redirect) return Tid{at.page, page.redirect_target(at.slot)};
  return at;
}

void Engine::refresh_free_space(Table& t, PageId p) {
  if (store_.raw(p).fits(kHeapTupleSize)) {
    t.free_space.insert(p);
  } else {
    t.free_space.erase(p);
  }
}

Tid Engine::place_tuple(Table& t, HeapTuple tuple, std::optional<PageId> same_page) {
  PageId target = kNoPage;
  if (same_page) {
    target = *same_page;
  } else if (!t.free_space.empty()) {
    target = *t.free_space.begin();
  } else {
    target = store_.allocate(PageSpace::Heap);
    pool_.adopt_new_page(target, cls_);
    t.pages.push_back(target);
  }
  Page& page = heap_write(t, target);
  std::array<std::byte, kHeapTupleSize> buf{};
  tuple.header.link = kNoTid;
  tuple.encode(buf);
  auto slot = page.insert(buf);
  if (!slot) throw InvariantViolation("page " + std::to_string(target) + " has no room for a version");
  const Tid at{target, *slot};
  if (config_.storage == VersionStorage::AppendOnly) {
    tuple.header.link = at;
    HeapTuple::encode_header(page.tuple(*slot), tuple.header);
  }
  refresh_free_space(t, target);
  return at;
}

void Engine::stamp_header(Table& t, Tid at, const TupleHeader& h) {
  Page& page = heap_write(t, at.page);
  HeapTuple::encode_header(page.tuple(at.slot), h);
}

std::optional<Tid> Engine::primary_entry(Table& t, Key key) {
  auto v = t.primary->lookup(key, cls_);
  if (v.empty()) return std::nullopt;
  if (v.size() > 1) throw InvariantViolation("primary index holds two entries for one key");
  return Tid::unpack(v.front());
}

void Engine::add_entries(Table& t, WriteRecord& w, std::span<const IndexMutation> muts) {
  for (const auto& m : muts) {
    if (t.secondary.at(m.index)->insert(m.entry, cls_)) w.added.push_back(m);
  }
}

void Engine::remove_entries(Table& t, std::span<const IndexMutation> muts) {
  for (const auto& m : muts) t.secondary.at(m.index)->erase(m.entry, cls_);
}

// ---- public operations -----------------------------------------------------

InsertResult Engine::insert(TxnId txn, TableId tid, const Row& row, OpClass cls) {
  active_snapshot(txn);
  ClassScope scope(*this, cls);
  Table& t = table(tid);
  InsertResult r = config_.storage == VersionStorage::AppendOnly ? insert_append_only(t, txn, row)
                                                                  : insert_delta(t, txn, row);
  t.activity.live_row_estimate = t.primary->entry_count();
  return r;
}

OpStatus Engine::update(TxnId txn, TableId tid, Key key, std::span<const ColumnChange> changes) {
  active_snapshot(txn);
  check_changes(changes);
  ClassScope scope(*this, OpClass::Update);
  Table& t = table(tid);
  return config_.storage == VersionStorage::AppendOnly ? update_append_only(t, txn, key, changes)
                                                        : update_delta(t, txn, key, changes);
}

ReadResult Engine::read(TxnId txn, TableId tid, Key key) {
  const Snapshot& s = active_snapshot(txn);
  ClassScope scope(*this, OpClass::Select);
  Table& t = table(tid);
  ReadResult r;
  auto entry = primary_entry(t, key);
  if (!entry) return r;
  if (config_.storage == VersionStorage::AppendOnly) {
    maybe_prune(t, entry->page);
    auto pos = walk_chain(*entry, s);
    r.versions_examined = pos.examined;
    if (pos.visible) r.row = pos.visible->second.row;
  } else {
    HeapTuple master = read_tuple(*entry);
    r.row = visible_state(t.id, key, master, s, &r.versions_examined);
  }
  return r;
}

std::optional<Tid> Engine::lookup_primary(TableId tid, Key key) {
  ClassScope scope(*this, OpClass::Select);
  return primary_entry(table(tid), key);
}

LookupResult Engine::lookup_secondary(TxnId txn, TableId tid, std::size_t index, std::uint64_t skey) {
  const Snapshot& s = active_snapshot(txn);
  ClassScope scope(*this, OpClass::Select);
  Table& t = table(tid);
  if (index >= t.n_secondary) throw UsageError("table has no secondary index " + std::to_string(index));
  LookupResult out;
  const auto values = t.secondary[index]->lookup(skey, cls_);
  out.entries_scanned = values.size();
  std::map<Key, Row> found;
  auto accept = [&](const Row& row) {
    if (row.secondary_key(index) == skey) found.emplace(row.key, row);
  };

  if (config_.pointers == PointerMode::Physical) {
    std::set<Tid> seen;
    for (std::uint64_t v : values) {
      const Tid x = Tid::unpack(v);
      const Page& page = heap_read(x.page);
      if (x.slot >= page.slot_count()) continue;
      const SlotState st = page.state(x.slot);
      if (st != SlotState::Normal && st != SlotState::Redirect) continue;
      Tid cur = resolve(x);
      if (config_.storage == VersionStorage::Delta) {
        if (!seen.insert(cur).second) continue;
        HeapTuple master = read_tuple(cur);
        std::size_t examined = 0;
        if (auto row = visible_state(t.id, master.row.key, master, s, &examined)) accept(*row);
        continue;
      }
      // Entries reach the versions of one HOT run on one page.
      for (;;) {
        HeapTuple tup = read_tuple(cur);
        if (seen.insert(cur).second && visible({tup.header.creator, tup.header.deleter}, s, txns_)) {
          accept(tup.row);
        }
        if (!tup.header.hot_updated()) break;
        cur = resolve(tup.header.link);
      }
    }
  } else {
    std::set<Key> pks(values.begin(), values.end());
    for (Key pk : pks) {
      auto loc = t.indirection->lookup(pk, cls_);
      if (loc.empty()) continue;
      const Tid at = Tid::unpack(loc.front());
      if (config_.storage == VersionStorage::AppendOnly) {
        auto pos = walk_chain(at, s);
        if (pos.visible) accept(pos.visible->second.row);
      } else {
        HeapTuple master = read_tuple(at);
        std::size_t examined = 0;
        if (auto row = visible_state(t.id, pk, master, s, &examined)) accept(*row);
      }
    }
  }
  for (auto& [k, row] : found) out.rows.push_back(row);
  return out;
}

// ---- append-only storage ---------------------------------------------------

Engine::ChainPosition Engine::walk_chain(Tid entry, const Snapshot& s) {
  ChainPosition pos;
  Tid cur = resolve(entry);
  for (;;) {
    HeapTuple tup = read_tuple(cur);
    ++pos.examined;
    if (visible({tup.header.creator, tup.header.deleter}, s, txns_)) {
      if (pos.visible) throw InvariantViolation("two versions visible to one snapshot");
      pos.visible.emplace(cur, tup);
    }
    if (!tup.header.link.valid() || tup.header.link == cur) {
      pos.tail = {cur, std::move(tup)};
      return pos;
    }
    cur = resolve(tup.header.link);
    if (pos.examined > store_.size() * 64) break;
  }
  throw InvariantViolation("version chain does not terminate");
}

InsertResult Engine::insert_append_only(Table& t, TxnId txn, const Row& row) {
  const Snapshot& s = txns_.snapshot(txn);
  if (auto entry = primary_entry(t, row.key)) {
    auto pos = walk_chain(*entry, s);
    const TxnId owner = pos.tail.second.header.creator;
    if (owner != txn && txns_.is_active(owner)) return {conflict(txn), kNoTid};
    return {OpStatus::Duplicate, kNoTid};
  }
  const Tid at = place_tuple(t, HeapTuple{{txn, kNoTxn, kNoTid, 0}, row}, std::nullopt);
  t.primary->insert({row.key, at.pack()}, cls_);
  if (t.indirection) t.indirection->insert({row.key, at.pack()}, cls_);
  WriteRecord w{true, t.id, row.key, kNoTid, at, {}};
  std::vector<IndexMutation> muts;
  for (std::size_t i = 0; i < t.n_secondary; ++i) {
    const std::uint64_t value = config_.pointers == PointerMode::Physical ? at.pack() : row.key;
    muts.push_back({i, {row.secondary_key(i), value}});
  }
  TxnWork& work = work_[txn];
  add_entries(t, w, muts);
  work.writes.push_back(std::move(w));
  return {OpStatus::Ok, at};
}

OpStatus Engine::update_append_only(Table& t, TxnId txn, Key key, std::span<const ColumnChange> changes) {
  const Snapshot& s = txns_.snapshot(txn);
  auto entry = primary_entry(t, key);
  if (!entry) return OpStatus::NotFound;
  maybe_prune(t, entry->page);
  auto pos = walk_chain(*entry, s);
  if (!pos.visible) return OpStatus::NotFound;
  const auto& [tail_at, tail] = pos.tail;
  if (tail.header.creator != txn && txns_.is_active(tail.header.creator)) return conflict(txn);
  if (pos.visible->first != tail_at) return conflict(txn);

  Row next = tail.row;
  for (const auto& c : changes) next.apply(c);
  const auto old_sk = skeys(t, tail.row);
  const auto new_sk = skeys(t, next);

  if (tail.header.creator == txn) {
    // Our own uncommitted version: overwrite it, one version per transaction.
    auto& writes = work_[txn].writes;
    auto own = std::find_if(writes.rbegin(), writes.rend(),
                            [&](const WriteRecord& w) { return w.table == t.id && w.key == key; });
    if (own == writes.rend()) throw InvariantViolation("own version without a write record");
    HeapTuple mine = tail;
    mine.row = next;
    Tid prev = tail_at;
    if (config_.pointers == PointerMode::Physical && tail.header.heap_only() && old_sk != new_sk) {
      // Physical entries must target run roots: the version leaves its HOT run.
      mine.header.flags &= static_cast<std::uint16_t>(~TupleHeader::kHeapOnly);
      TupleHeader pred = read_tuple(own->old_location).header;
      pred.flags &= static_cast<std::uint16_t>(~TupleHeader::kHotUpdated);
      stamp_header(t, own->old_location, pred);
      prev = own->old_location;
    }
    mine.encode(heap_write(t, tail_at.page).tuple(tail_at.slot));
    const auto muts = maintain_on_update({key, old_sk, new_sk, prev, tail_at, false}, config_.pointers);
    add_entries(t, *own, muts);
    return OpStatus::Ok;
  }

  maybe_prune(t, tail_at.page);
  const bool room = heap_read(tail_at.page).fits(kHeapTupleSize);
  const bool hot = decide_hot(old_sk != new_sk, room).eligible;

  const std::uint16_t flags = hot ? TupleHeader::kHeapOnly : 0;
  const Tid at = place_tuple(t, HeapTuple{{txn, kNoTxn, kNoTid, flags}, next},
                             hot ? std::optional<PageId>(tail_at.page) : std::nullopt);
  TupleHeader old = tail.header;
  old.deleter = txn;
  old.link = at;
  if (hot) old.flags |= TupleHeader::kHotUpdated;
  stamp_header(t, tail_at, old);
  Page& old_page = heap_write(t, tail_at.page);
  old_page.set_prune_hint(static_cast<std::uint16_t>(old_page.prune_hint() + 1));
  ++t.activity.dead_version_estimate;

  WriteRecord w{false, t.id, key, tail_at, at, {}};
  const auto muts = maintain_on_update({key, old_sk, new_sk, tail_at, at, hot}, config_.pointers);
  TxnWork& work = work_[txn];
  add_entries(t, w, muts);
  work.writes.push_back(std::move(w));
  return OpStatus::Ok;
}

void Engine::rollback_append_only(const WriteRecord& w) {
  Table& t = table(w.table);
  t.activity.modified_pages.insert(w.new_location.page);
  if (w.is_insert) {
    t.primary->erase({w.key, w.new_location.pack()}, cls_);
    if (t.indirection) t.indirection->erase({w.key, w.new_location.pack()}, cls_);
    if (config_.pointers == PointerMode::Logical) remove_entries(t, w.added);
    ++t.activity.dead_version_estimate;
    t.activity.live_row_estimate = t.primary->entry_count();
    return;
  }
  HeapTuple old = read_tuple(w.old_location);
  TupleHeader h = old.header;
  h.deleter = kNoTxn;
  h.link = w.old_location;
  h.flags &= static_cast<std::uint16_t>(~TupleHeader::kHotUpdated);
  stamp_header(t, w.old_location, h);
  if (config_.pointers == PointerMode::Logical) remove_entries(t, w.added);
}

void Engine::maybe_prune(Table& t, PageId p) {
  if (config_.gc != GcMode::VacuumAuto) return;
  if (heap_read(p).prune_hint() > config_.prune_threshold) prune_page(t, p);
}

// ---- delta storage ---------------------------------------------------------

std::optional<Row> Engine::visible_state(TableId table, Key key, const HeapTuple& master, const Snapshot& s,
                                         std::size_t* examined) {
  Row state = master.row;
  TxnId creator = master.header.creator;
  Tid ptr = master.header.link;
  ++*examined;
  for (;;) {
    if (snapshot_includes(creator, s, txns_)) return state;
    if (!ptr.valid()) return std::nullopt;
    auto rec = undo_.read_if_current(ptr, table, key, creator, cls_);
    if (!rec) throw InvariantViolation("undo record still needed by a snapshot is gone");
    rec->undo(state);
    creator = rec->prior_creator;
    ptr = rec->prev_delta;
    ++*examined;
  }
}

InsertResult Engine::insert_delta(Table& t, TxnId txn, const Row& row) {
  if (auto entry = primary_entry(t, row.key)) {
    const TxnId owner = read_tuple(*entry).header.creator;
    if (owner != txn && txns_.is_active(owner)) return {conflict(txn), kNoTid};
    return {OpStatus::Duplicate, kNoTid};
  }
  const Tid at = place_tuple(t, HeapTuple{{txn, kNoTxn, kNoTid, 0}, row}, std::nullopt);
  t.primary->insert({row.key, at.pack()}, cls_);
  if (t.indirection) t.indirection->insert({row.key, at.pack()}, cls_);
  WriteRecord w{true, t.id, row.key, kNoTid, at, {}};
  std::vector<IndexMutation> muts;
  for (std::size_t i = 0; i < t.n_secondary; ++i) {
    const std::uint64_t value = config_.pointers == PointerMode::Physical ? at.pack() : row.key;
    muts.push_back({i, {row.secondary_key(i), value}});
  }
  TxnWork& work = work_[txn];
  add_entries(t, w, muts);
  work.writes.push_back(std::move(w));
  return {OpStatus::Ok, at};
}

OpStatus Engine::update_delta(Table& t, TxnId txn, Key key, std::span<const ColumnChange> changes) {
  const Snapshot& s = txns_.snapshot(txn);
  auto entry = primary_entry(t, key);
  if (!entry) return OpStatus::NotFound;
  HeapTuple master = read_tuple(*entry);
  std::size_t examined = 0;
  if (!visible_state(t.id, key, master, s, &examined)) return OpStatus::NotFound;
  const TxnId writer = master.header.creator;
  if (writer != txn && txns_.is_active(writer)) return conflict(txn);
  if (!snapshot_includes(writer, s, txns_)) return conflict(txn);

  DeltaRecord rec{t.id, key, txn, writer, master.header.link, {}};
  Row next = master.row;
  for (const auto& c : changes) {
    const bool logged = std::any_of(rec.changed_columns.begin(), rec.changed_columns.end(),
                                    [&](const ColumnChange& o) { return o.column == c.column; });
    if (!logged) rec.changed_columns.push_back({c.column, master.row.get(c.column)});
    next.apply(c);
  }
  const Tid u = undo_.append(rec, cls_);
  HeapTuple updated{{txn, kNoTxn, u, 0}, next};
  Page& page = heap_write(t, entry->page);
  updated.encode(page.tuple(entry->slot));

  WriteRecord w{false, t.id, key, *entry, u, {}};
  const auto muts =
      maintain_on_update({key, skeys(t, master.row), skeys(t, next), *entry, *entry, false}, config_.pointers);
  TxnWork& work = work_[txn];
  add_entries(t, w, muts);
  work.writes.push_back(std::move(w));
  return OpStatus::Ok;
}

void Engine::rollback_delta(const WriteRecord& w) {
  Table& t = table(w.table);
  remove_entries(t, w.added);
  if (w.is_insert) {
    t.primary->erase({w.key, w.new_location.pack()}, cls_);
    if (t.indirection) t.indirection->erase({w.key, w.new_location.pack()}, cls_);
    Page& page = heap_write(t, w.new_location.page);
    page.release(w.new_location.slot);
    refresh_free_space(t, w.new_location.page);
    t.activity.live_row_estimate = t.primary->entry_count();
    return;
  }
  const DeltaRecord rec = undo_.read(w.new_location, cls_);
  HeapTuple master = read_tuple(w.old_location);
  rec.undo(master.row);
  master.header.creator = rec.prior_creator;
  master.header.link = rec.prev_delta;
  Page& page = heap_write(t, w.old_location.page);
  master.encode(page.tuple(w.old_location.slot));
  undo_.remove(w.new_location, cls_);
}

// ---- inspection ------------------------------------------------------------

bool Engine::autovacuum_due(TableId id) const {
  if (config_.gc != GcMode::VacuumAuto) return false;
  return autovacuum_check(table(id).activity, config_.autovacuum);
}

const TableActivity& Engine::activity(TableId id) const { return table(id).activity; }

std::vector<Key> Engine::keys(TableId id) const {
  std::vector<Key> out;
  for (const auto& e : table(id).primary->peek_all()) out.push_back(e.key);
  return out;
}

std::vector<VersionView> Engine::peek_chain(TableId id, Key key) const {
  const Table& t = table(id);
  std::vector<VersionView> out;
  auto v = t.primary->peek(key);
  if (v.empty()) return out;
  Tid cur = Tid::unpack(v.front());
  auto raw_resolve = [&](Tid x) {
    const Page& p = store_.raw(x.page);
    if (p.state(x.slot) == SlotState::Redirect) return Tid{x.page, p.redirect_target(x.slot)};
    return x;
  };
  if (config_.storage == VersionStorage::AppendOnly) {
    cur = raw_resolve(cur);
    for (;;) {
      const Page& p = store_.raw(cur.page);
      if (p.state(cur.slot) != SlotState::Normal) throw InvariantViolation("chain reaches a free slot");
      HeapTuple tup = HeapTuple::decode(p.tuple(cur.slot));
      out.push_back({cur, tup.header, tup.row});
      if (!tup.header.link.valid() || tup.header.link == cur) break;
      cur = raw_resolve(tup.header.link);
      if (out.size() > store_.size() * 64) throw InvariantViolation("version chain does not terminate");
    }
    return out;
  }
  HeapTuple master = HeapTuple::decode(store_.raw(cur.page).tuple(cur.slot));
  out.push_back({cur, master.header, master.row});
  Row state = master.row;
  TxnId creator = master.header.creator;
  Tid ptr = master.header.link;
  while (ptr.valid()) {
    auto rec = undo_.peek_if_current(ptr, id, key, creator);
    if (!rec) break;
    rec->undo(state);
    out.push_back({ptr, {rec->prior_creator, rec->undo_stamp, rec->prev_delta, 0}, state});
    creator = rec->prior_creator;
    ptr = rec->prev_delta;
  }
  return out;
}

std::size_t Engine::heap_pages(TableId id) const { return table(id).pages.size(); }

std::vector<PageId> Engine::heap_page_ids(TableId id) const { return table(id).pages; }

std::size_t Engine::secondary_entry_count(TableId id) const {
  std::size_t n = 0;
  for (const auto& idx : table(id).secondary) n += idx->entry_count();
  return n;
}

std::vector<IndexEntry> Engine::peek_secondary(TableId id, std::size_t index) const {
  return table(id).secondary.at(index)->peek_all();
}

std::size_t Engine::dangling_pointers(TableId id) const {
  const Table& t = table(id);
  auto live = [&](Tid x) {
    if (!store_.contains(x.page) || store_.space(x.page) != PageSpace::Heap) return false;
    const Page& p = store_.raw(x.page);
    if (x.slot >= p.slot_count()) return false;
    SlotState st = p.state(x.slot);
    if (st == SlotState::Redirect) {
      const SlotId target = p.redirect_target(x.slot);
      return target < p.slot_count() && p.state(target) == SlotState::Normal;
    }
    return st == SlotState::Normal;
  };
  std::size_t bad = 0;
  for (const auto& e : t.primary->peek_all()) bad += !live(Tid::unpack(e.value));
  if (t.indirection) {
    for (const auto& e : t.indirection->peek_all()) bad += !live(Tid::unpack(e.value));
  }
  if (config_.pointers == PointerMode::Physical) {
    for (const auto& idx : t.secondary) {
      for (const auto& e : idx->peek_all()) bad += !live(Tid::unpack(e.value));
    }
  }
  return bad;
}

}  // namespace mvsim
