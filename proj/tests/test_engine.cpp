#include <gtest/gtest.h>

#include <cstring>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mvsim;
using fixture::bump;
using fixture::row;
using fixture::set_counter;

namespace {

const std::vector<std::pair<const char*, EngineConfig>> kStacks = {
    {"appendonly", fixture::append_only()},
    {"delta", fixture::delta()},
};

std::size_t tuples_per_page() {
  return (kPageSize - Page::kHeaderSize) / (kHeapTupleSize + Page::kSlotSize);
}

}  // namespace

TEST(Engine, RejectsInvalidPairings) {
  EXPECT_THROW(Engine(fixture::config(VersionStorage::Delta, PointerMode::Logical, GcMode::VacuumAuto)),
               ConfigError);
  EXPECT_THROW(Engine(fixture::config(VersionStorage::AppendOnly, PointerMode::Physical, GcMode::Purge)),
               ConfigError);
}

TEST(Engine, InsertIntoEmptyTableGivesChainOfOne) {
  for (const auto& [name, cfg] : kStacks) {
    Engine e(cfg);
    const TableId t = e.create_table();
    const auto tx = e.begin().id;
    EXPECT_EQ(e.insert(tx, t, row(1)).status, OpStatus::Ok) << name;
    EXPECT_EQ(e.chain_length(t, 1), 1u) << name;
    EXPECT_EQ(e.insert(tx, t, row(1)).status, OpStatus::Duplicate) << name;
    e.commit(tx);
  }
}

TEST(Engine, HundredRowsFillSixPages) {
  EXPECT_EQ(tuples_per_page(), 18u);
  const std::size_t expect = (100 + tuples_per_page() - 1) / tuples_per_page();
  for (const auto& [name, cfg] : kStacks) {
    Engine e(cfg);
    const TableId t = e.create_table();
    fixture::load(e, t, 1, 100);
    EXPECT_EQ(e.heap_pages(t), expect) << name;
  }
}

TEST(Engine, AbortedInsertIsInvisible) {
  for (const auto& [name, cfg] : kStacks) {
    Engine e(cfg);
    const TableId t = e.create_table();
    auto tx = e.begin().id;
    e.insert(tx, t, row(3));
    e.abort(tx);
    tx = e.begin().id;
    EXPECT_FALSE(e.read(tx, t, 3).row.has_value()) << name;
    EXPECT_TRUE(e.lookup_secondary(tx, t, 0, row(3).secondary_key(0)).rows.empty()) << name;
    // The key can be inserted again.
    EXPECT_EQ(e.insert(tx, t, row(3)).status, OpStatus::Ok) << name;
    e.commit(tx);
  }
}

TEST(Engine, CommittedUpdateIsSeenByLaterSnapshots) {
  for (const auto& [name, cfg] : kStacks) {
    Engine e(cfg);
    const TableId t = e.create_table();
    fixture::load(e, t, 1, 10);
    const auto old_reader = e.begin().id;
    bump(e, t, 5, 77);
    const auto reader = e.begin().id;
    EXPECT_EQ(e.read(reader, t, 5).row->counter, 77) << name;
    EXPECT_EQ(e.read(old_reader, t, 5).row->counter, 0) << name;
    EXPECT_THROW(e.commit(99), UsageError);
  }
}

TEST(Engine, DeltaAbortRestoresMasterBytes) {
  Engine e(fixture::delta());
  const TableId t = e.create_table();
  fixture::load(e, t, 1, 10);
  const Tid at = *e.lookup_primary(t, 4);
  const auto bytes = [&] {
    auto span = e.pool().store().raw(at.page).tuple(at.slot);
    return std::vector<std::byte>(span.begin(), span.end());
  };
  const auto before = bytes();
  const auto tx = e.begin().id;
  set_counter(e, tx, t, 4, 1);
  const ColumnChange f = ColumnChange::filler1("changed");
  e.update(tx, t, 4, std::span(&f, 1));
  EXPECT_NE(bytes(), before);
  e.abort(tx);
  EXPECT_EQ(bytes(), before);
  EXPECT_EQ(e.undo_records(), 0u);
}

TEST(Engine, AppendOnlyAbortMatchesHistoryOracle) {
  for (GcMode gc : {GcMode::VacuumAuto, GcMode::VacuumManualOnly}) {
    Engine e(fixture::append_only(gc));
    oracle::History h;
    const TableId t = e.create_table();
    const auto t0 = e.begin().id;
    h.begin(t0);
    e.insert(t0, t, row(1));
    h.write(t0, row(1));
    e.commit(t0);
    h.commit(t0);

    const auto w = e.begin().id;
    h.begin(w);
    Row changed = row(1);
    changed.counter = 5;
    ASSERT_EQ(set_counter(e, w, t, 1, 5), OpStatus::Ok);
    h.write(w, changed);
    e.abort(w);
    h.abort(w);

    const auto r = e.begin().id;
    h.begin(r);
    EXPECT_EQ(e.read(r, t, 1).row, h.read(r, 1));
    EXPECT_EQ(e.read(r, t, 1).row->counter, 0);
    // The aborted tail is still in the chain until vacuum, but not visible.
    EXPECT_EQ(e.chain_length(t, 1), 1u);
  }
}

TEST(Engine, AppendOnlyChainGrowsByOnePerUpdate) {
  Engine e(fixture::append_only());
  const TableId t = e.create_table();
  fixture::load(e, t, 1, 5);
  for (int k = 1; k <= 7; ++k) {
    bump(e, t, 2, k);
    EXPECT_EQ(e.chain_length(t, 2), static_cast<std::size_t>(k + 1));
  }
  const auto chain = e.peek_chain(t, 2);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    EXPECT_GT(chain[i].header.creator, chain[i - 1].header.creator);
    EXPECT_EQ(chain[i - 1].header.link, chain[i].location);
  }
  EXPECT_EQ(chain.back().header.link, chain.back().location);
}

TEST(Engine, DeltaRecordHoldsOnlyTheChangedColumn) {
  Engine e(fixture::delta());
  const TableId t = e.create_table();
  fixture::load(e, t, 1, 5);
  bump(e, t, 3, 9);
  const auto chain = e.peek_chain(t, 3);
  ASSERT_EQ(chain.size(), 2u);
  const Tid u = chain[1].location;
  const DeltaRecord rec = DeltaRecord::decode(e.pool().store().raw(u.page).tuple(u.slot));
  ASSERT_EQ(rec.changed_columns.size(), 1u);
  EXPECT_EQ(rec.changed_columns[0].column, Column::Counter);
  EXPECT_EQ(rec.owner_key, 3u);
}

TEST(Engine, ConcurrentUpdatesLetExactlyOneCommit) {
  // Both interleavings of two writers on key 9 under first-updater-wins.
  for (const auto& [name, cfg] : kStacks) {
    for (bool first_commits_before_second_writes : {false, true}) {
      Engine e(cfg);
      const TableId t = e.create_table();
      fixture::load(e, t, 1, 10);
      const auto a = e.begin().id;
      const auto b = e.begin().id;
      ASSERT_EQ(set_counter(e, a, t, 9, 1), OpStatus::Ok);
      if (first_commits_before_second_writes) e.commit(a);
      EXPECT_EQ(set_counter(e, b, t, 9, 2), OpStatus::Conflict) << name;
      EXPECT_FALSE(e.txns().is_active(b));
      if (!first_commits_before_second_writes) e.commit(a);
      const auto r = e.begin().id;
      EXPECT_EQ(e.read(r, t, 9).row->counter, 1) << name;
    }
  }
}

TEST(Engine, WriterAfterCommitIsNotAConflict) {
  for (const auto& [name, cfg] : kStacks) {
    Engine e(cfg);
    const TableId t = e.create_table();
    fixture::load(e, t, 1, 10);
    bump(e, t, 9, 1);
    bump(e, t, 9, 2);
    const auto r = e.begin().id;
    EXPECT_EQ(e.read(r, t, 9).row->counter, 2) << name;
  }
}

TEST(Engine, NeverUpdatedRowExaminesOneVersion) {
  for (const auto& [name, cfg] : kStacks) {
    Engine e(cfg);
    const TableId t = e.create_table();
    fixture::load(e, t, 1, 10);
    const auto r = e.begin().id;
    EXPECT_EQ(e.read(r, t, 4).versions_examined, 1u) << name;
    EXPECT_FALSE(e.read(r, t, 400).row.has_value()) << name;
  }
}

TEST(Engine, OldSnapshotWalksPastTenNewerVersions) {
  for (const auto& [name, cfg] : kStacks) {
    Engine e(cfg);
    const TableId t = e.create_table();
    fixture::load(e, t, 1, 10);
    const auto r = e.begin().id;
    for (int i = 1; i <= 10; ++i) bump(e, t, 6, i);
    const ReadResult res = e.read(r, t, 6);
    EXPECT_EQ(res.versions_examined, 11u) << name;
    EXPECT_EQ(res.row, row(6, 6)) << name;
  }
}

TEST(Engine, RepeatedReadsInOneTransactionAreIdentical) {
  for (const auto& [name, cfg] : kStacks) {
    Engine e(cfg);
    const TableId t = e.create_table();
    fixture::load(e, t, 1, 10);
    const auto r = e.begin().id;
    const auto first = e.read(r, t, 2).row;
    bump(e, t, 2, 50);
    bump(e, t, 2, 51);
    EXPECT_EQ(e.read(r, t, 2).row, first) << name;
  }
}

TEST(Index, PrimaryLookup) {
  for (const auto& [name, cfg] : kStacks) {
    Engine e(cfg);
    const TableId t = e.create_table();
    const auto tx = e.begin().id;
    const InsertResult ins = e.insert(tx, t, row(42));
    e.commit(tx);
    EXPECT_EQ(e.lookup_primary(t, 42), ins.location) << name;
    EXPECT_FALSE(e.lookup_primary(t, 43).has_value()) << name;
  }
}

TEST(Index, HotUpdatesKeepIndexesAndPageUntouched) {
  Engine e(fixture::append_only());
  const TableId t = e.create_table();
  fixture::load(e, t, 42, 1);
  const Tid before = *e.lookup_primary(t, 42);
  const std::size_t entries = e.secondary_entry_count(t);
  for (int i = 1; i <= 10; ++i) bump(e, t, 42, i);
  EXPECT_EQ(*e.lookup_primary(t, 42), before);
  EXPECT_EQ(e.secondary_entry_count(t), entries);
  for (const auto& v : e.peek_chain(t, 42)) EXPECT_EQ(v.location.page, before.page);
  EXPECT_EQ(e.heap_pages(t), 1u);
}

TEST(Index, ColdSecondaryLookupTouchesLeafAndHeap) {
  for (const auto& [name, cfg] : kStacks) {
    Engine e(cfg);
    const TableId t = e.create_table();
    fixture::load(e, t, 1, 50);
    e.pool().drop_all();
    const auto r = e.begin().id;
    const auto before = e.io_report();
    const LookupResult res = e.lookup_secondary(r, t, 0, row(7, 7).secondary_key(0));
    ASSERT_EQ(res.rows.size(), 1u) << name;
    EXPECT_EQ(res.rows[0].key, 7u);
    EXPECT_GE(e.io_report().since(before).read(OpClass::Select), 2u) << name;
  }
}

TEST(Index, PhysicalNonHotUpdatesAddAnEntryEach) {
  // Changing the key of index 1 rules out HOT; index 0 keeps its key and
  // still gets an entry per new version.
  TableSpec spec;
  spec.secondary_indexes = 2;
  Engine e(fixture::append_only());
  const TableId t = e.create_table(spec);
  auto tx = e.begin().id;
  e.insert(tx, t, row(1, 500, 0));
  e.commit(tx);
  for (int i = 1; i <= 5; ++i) {
    tx = e.begin().id;
    const ColumnChange c = ColumnChange::filler2(fixture::filler2_for(500, i));
    ASSERT_EQ(e.update(tx, t, 1, std::span(&c, 1)), OpStatus::Ok);
    e.commit(tx);
  }
  const auto r = e.begin().id;
  const LookupResult res = e.lookup_secondary(r, t, 0, row(1, 500).secondary_key(0));
  EXPECT_EQ(res.entries_scanned, 6u);
  ASSERT_EQ(res.rows.size(), 1u);
  EXPECT_EQ(res.rows[0].secondary_key(1), row(1, 500, 5).secondary_key(1));
}

TEST(Index, LogicalEntriesIgnoreUpdatesToOtherColumns) {
  for (auto storage : {VersionStorage::AppendOnly, VersionStorage::Delta}) {
    const GcMode gc = storage == VersionStorage::Delta ? GcMode::Purge : GcMode::VacuumManualOnly;
    Engine e(fixture::config(storage, PointerMode::Logical, gc));
    const TableId t = e.create_table();
    fixture::load(e, t, 1, 30);
    const std::size_t entries = e.secondary_entry_count(t);
    for (int i = 1; i <= 5; ++i) bump(e, t, 4, i);
    const auto r = e.begin().id;
    const LookupResult res = e.lookup_secondary(r, t, 0, row(4, 4).secondary_key(0));
    EXPECT_EQ(res.entries_scanned, 1u);
    ASSERT_EQ(res.rows.size(), 1u);
    EXPECT_EQ(res.rows[0].counter, 5);
    EXPECT_EQ(e.secondary_entry_count(t), entries);
  }
}

TEST(Index, HotVersionStaysOnTheSamePage) {
  Engine e(fixture::append_only(GcMode::VacuumAuto));
  const TableId t = e.create_table();
  fixture::load(e, t, 1, 10);
  for (int i = 1; i <= 30; ++i) {
    const Tid tail_before = e.peek_chain(t, 3).back().location;
    const std::size_t entries = e.secondary_entry_count(t);
    bump(e, t, 3, i);
    const auto chain = e.peek_chain(t, 3);
    const VersionView& tail = chain.back();
    if (tail.header.heap_only()) {
      EXPECT_EQ(tail.location.page, tail_before.page);
      EXPECT_EQ(e.secondary_entry_count(t), entries);
    }
  }
}

TEST(Index, PhysicalPointersWriteMoreIndexPagesThanLogical) {
  // Counter-only updates against a table whose pages start full.
  std::size_t dirty_index_pages[2] = {};
  for (int m = 0; m < 2; ++m) {
    const PointerMode mode = m == 0 ? PointerMode::Physical : PointerMode::Logical;
    Engine e(fixture::append_only(GcMode::VacuumManualOnly, mode, 100000));
    const TableId t = e.create_table();
    fixture::load(e, t, 1, 2000);
    e.pool().flush_all();
    for (Key k = 1; k <= 2000; k += 3) bump(e, t, k, 1);
    for (PageId p = 0; p < e.pool().store().size(); ++p) {
      if (e.pool().store().space(p) == PageSpace::Index && e.pool().dirty(p)) ++dirty_index_pages[m];
    }
  }
  EXPECT_GT(dirty_index_pages[0], dirty_index_pages[1]);
  EXPECT_EQ(dirty_index_pages[1], 0u);
}

TEST(Engine, AppendOnlyDuplicatesMoreBytesPerUpdate) {
  // Pages added per counter-only update, heap plus undo.
  double growth[2] = {};
  for (int s = 0; s < 2; ++s) {
    Engine e(s == 0 ? fixture::append_only() : fixture::delta());
    const TableId t = e.create_table();
    fixture::load(e, t, 1, 100);
    const std::size_t before = e.heap_pages(t) + e.undo_pages();
    for (int i = 0; i < 2000; ++i) bump(e, t, 1 + i % 100, i);
    growth[s] = static_cast<double>(e.heap_pages(t) + e.undo_pages() - before) * kPageSize / 2000;
  }
  EXPECT_GT(growth[0], growth[1]);
  EXPECT_GE(growth[0], static_cast<double>(kHeapTupleSize));
}
