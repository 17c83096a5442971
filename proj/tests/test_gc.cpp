#include <gtest/gtest.h>

#include <algorithm>

#include "mvsim/harness/workload.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mvsim;
using fixture::bump;
using fixture::row;

TEST(Horizon, CutoffIsBelowEveryActiveSnapshot) {
  TxnManager m;
  for (int i = 0; i < 5; ++i) m.commit(m.begin().id);
  const TxnId a = m.begin().id;  // 6
  m.begin();                     // 7
  m.commit(7);
  const TxnId b = m.begin().id;  // 8, sees 6 in flight
  const GcHorizon h = compute_horizon(m);
  EXPECT_EQ(h.cutoff, a);
  for (const auto& [id, s] : m.active()) EXPECT_LE(h.cutoff, s.next_unassigned);
  EXPECT_TRUE(h.all_visible(5, m));
  EXPECT_FALSE(h.all_visible(7, m));
  EXPECT_FALSE(h.all_visible(b, m));
  EXPECT_EQ(h.oldest_active_snapshot->owner, a);
  m.abort(a);
  m.commit(b);
  EXPECT_EQ(compute_horizon(m).cutoff, m.next_unassigned());
  EXPECT_FALSE(compute_horizon(m).oldest_active_snapshot.has_value());
}

TEST(Autovacuum, StrictThreshold) {
  const AutovacuumPolicy p{0.2, 50};
  TableActivity a;
  a.live_row_estimate = 1000;
  a.dead_version_estimate = 0;
  EXPECT_FALSE(autovacuum_check(a, p));
  a.dead_version_estimate = 250;
  EXPECT_FALSE(autovacuum_check(a, p));
  a.dead_version_estimate = 251;
  EXPECT_TRUE(autovacuum_check(a, p));
}

TEST(Vacuum, ReclaimsTheTwoExpiredVersionsOfAChainOfThree) {
  Engine e(fixture::append_only());
  const TableId t = e.create_table();
  fixture::load(e, t, 1, 5);
  bump(e, t, 2, 1);
  bump(e, t, 2, 2);
  ASSERT_EQ(e.chain_length(t, 2), 3u);
  const VacuumStats s = e.vacuum(t);
  EXPECT_EQ(s.versions_reclaimed, 2u);
  EXPECT_LE(s.versions_reclaimed, s.versions_examined);
  EXPECT_EQ(e.chain_length(t, 2), 1u);
  const auto r = e.begin().id;
  EXPECT_EQ(e.read(r, t, 2).row->counter, 2);
  EXPECT_TRUE(e.activity(t).modified_pages.empty());
}

TEST(Vacuum, KeepsVersionsAnOldSnapshotStillSees) {
  Engine e(fixture::append_only());
  const TableId t = e.create_table();
  fixture::load(e, t, 1, 5);
  const auto old = e.begin().id;
  bump(e, t, 2, 1);
  bump(e, t, 2, 2);
  // Version 2 is superseded but the old snapshot reads version 1, whose
  // successor it must walk through: nothing can go.
  EXPECT_EQ(e.vacuum(t).versions_reclaimed, 0u);
  EXPECT_EQ(e.read(old, t, 2).row->counter, 0);
  e.commit(old);
  EXPECT_EQ(e.vacuum(t).versions_reclaimed, 2u);
  EXPECT_EQ(e.chain_length(t, 2), 1u);
}

TEST(Vacuum, TenThousandUpdatesAreAllReclaimed) {
  Engine e(fixture::append_only(GcMode::VacuumManualOnly, PointerMode::Physical, 4096));
  oracle::History h;
  const TableId t = e.create_table();
  fixture::load(e, t, 1, 1000);
  std::uint64_t superseded = 0;
  for (int i = 0; i < 10000; ++i) {
    const Key k = 1 + static_cast<Key>((i * 7919) % 1000);
    bump(e, t, k, i + 1);
    ++superseded;
  }
  const VacuumStats s = e.vacuum(t);
  EXPECT_EQ(s.versions_reclaimed, superseded);
  for (Key k : e.keys(t)) ASSERT_EQ(e.chain_length(t, k), 1u) << k;
  EXPECT_EQ(e.dangling_pointers(t), 0u);
  EXPECT_EQ(e.secondary_entry_count(t), 1000u);
}

TEST(Vacuum, LeavesNoDanglingPointersAndFreesSlotsForReuse) {
  Engine e(fixture::append_only());
  const TableId t = e.create_table();
  fixture::load(e, t, 1, 200);
  for (int round = 0; round < 5; ++round) {
    for (Key k = 1; k <= 200; k += 2) bump(e, t, k, round + 1);
  }
  const std::size_t pages = e.heap_pages(t);
  e.vacuum(t);
  EXPECT_EQ(e.dangling_pointers(t), 0u);
  for (int round = 0; round < 2; ++round) {
    for (Key k = 1; k <= 200; k += 2) bump(e, t, k, 10 + round);
  }
  EXPECT_EQ(e.heap_pages(t), pages);
  const auto r = e.begin().id;
  for (Key k = 1; k <= 200; ++k) {
    const auto res = e.lookup_secondary(r, t, 0, row(k, k).secondary_key(0));
    ASSERT_EQ(res.rows.size(), 1u) << k;
    EXPECT_EQ(res.rows[0].counter, k % 2 ? 11 : 0);
  }
}

TEST(Vacuum, ScansModifiedPagesThroughTheVacuumClass) {
  Engine e(fixture::append_only(GcMode::VacuumManualOnly, PointerMode::Physical, 64));
  const TableId t = e.create_table();
  fixture::load(e, t, 1, 2000);
  for (Key k = 1; k <= 2000; k += 37) bump(e, t, k, 1);
  const std::size_t modified = e.activity(t).modified_pages.size();
  e.pool().drop_all();
  const auto before = e.io_report();
  const VacuumStats s = e.vacuum(t);
  const auto d = e.io_report().since(before);
  EXPECT_EQ(s.pages_scanned, modified);
  EXPECT_GE(d.read(OpClass::Vacuum), modified);
  EXPECT_EQ(d.pages(OpClass::Select) + d.pages(OpClass::Update) + d.pages(OpClass::Purge), 0u);
}

TEST(Vacuum, WrongStorageIsAConfigError) {
  Engine d(fixture::delta());
  const TableId t = d.create_table();
  EXPECT_THROW(d.vacuum(t), ConfigError);
  Engine a(fixture::append_only());
  EXPECT_THROW(a.purge(), ConfigError);
}

TEST(Vacuum, GrowthIsUnboundedWithoutGcAndBoundedWithAutovacuum) {
  WorkloadConfig w;
  w.rows_per_table = 1000;
  w.operations = 5000;
  w.clients = 4;
  w.mix = Mix::UpdateOnly;
  std::vector<std::size_t> off, on;
  for (GcMode gc : {GcMode::VacuumManualOnly, GcMode::VacuumAuto}) {
    Engine e(fixture::append_only(gc, PointerMode::Physical, 256));
    const auto tables = populate(e, w);
    auto& series = gc == GcMode::VacuumAuto ? on : off;
    series.push_back(table_pages(e, tables));
    for (int chunk = 0; chunk < 10; ++chunk) {
      w.seed = 100 + static_cast<std::uint64_t>(chunk);
      run_mix(e, tables, w);
      series.push_back(table_pages(e, tables));
    }
  }
  for (std::size_t i = 1; i < off.size(); ++i) EXPECT_GT(off[i], off[i - 1]);
  // Steady state: the second half of the run adds no pages.
  const std::size_t mid = on.size() / 2;
  EXPECT_EQ(on.back(), on[mid]);
  EXPECT_LE(on.back(), *std::max_element(on.begin(), on.begin() + static_cast<std::ptrdiff_t>(mid) + 1));
}

namespace {

Row with_counter(Row r, std::int64_t c) {
  r.counter = c;
  return r;
}

}  // namespace

TEST(Purge, EmptiesTheUndoLogWhenNothingIsActive) {
  Engine e(fixture::delta());
  const TableId t = e.create_table();
  fixture::load(e, t, 1, 50);
  for (int i = 0; i < 500; ++i) bump(e, t, 1 + i % 50, i);
  EXPECT_EQ(e.undo_records(), 500u);
  const PurgeStats s = e.purge();
  EXPECT_EQ(s.records_removed, 500u);
  EXPECT_EQ(e.undo_records(), 0u);
  EXPECT_GT(s.pages_freed, 0u);
  for (Key k : e.keys(t)) EXPECT_EQ(e.chain_length(t, k), 1u);
}

TEST(Purge, KeepsExactlyTheHistoryAnActiveSnapshotNeeds) {
  Engine e(fixture::delta());
  oracle::History h;
  const TableId t = e.create_table();
  const auto t0 = e.begin().id;
  h.begin(t0);
  for (Key k = 1; k <= 20; ++k) {
    e.insert(t0, t, row(k, k));
    h.write(t0, row(k, k));
  }
  e.commit(t0);
  h.commit(t0);
  std::int64_t v = 0;
  auto round = [&](Key only_below) {
    const auto tx = e.begin().id;
    h.begin(tx);
    for (Key k = 1; k <= 20; ++k) {
      if (k >= only_below) continue;
      ++v;
      fixture::set_counter(e, tx, t, k, v);
      const Row prev = *h.read(tx, k);
      h.write(tx, with_counter(prev, v));
    }
    e.commit(tx);
    h.commit(tx);
  };
  round(21);
  round(21);
  const auto reader = e.begin().id;
  h.begin(reader);
  round(21);
  round(11);  // keys 1..10 get a second update after the reader

  std::size_t needed = 0;
  for (Key k : h.keys()) {
    const auto states = h.committed_states(k);
    const Row seen = *h.read(reader, k);
    const auto pos = std::find(states.begin(), states.end(), seen) - states.begin();
    needed += states.size() - 1 - static_cast<std::size_t>(pos);
  }
  const std::size_t total = e.undo_records();
  ASSERT_EQ(total, 20u * 4 - 10);
  EXPECT_EQ(e.purge().records_removed, total - needed);
  EXPECT_EQ(e.undo_records(), needed);
  for (Key k = 1; k <= 20; ++k) ASSERT_EQ(e.read(reader, t, k).row, h.read(reader, k)) << k;
  EXPECT_EQ(e.purge().records_removed, 0u);
  e.commit(reader);
  h.commit(reader);
  e.purge();
  EXPECT_EQ(e.undo_records(), 0u);
}

TEST(Purge, SecondPurgeRemovesNothing) {
  Engine e(fixture::delta());
  const TableId t = e.create_table();
  fixture::load(e, t, 1, 10);
  const auto hold = e.begin().id;
  for (int i = 0; i < 30; ++i) bump(e, t, 1 + i % 10, i);
  e.purge();
  EXPECT_EQ(e.purge().records_removed, 0u);
  e.commit(hold);
  EXPECT_EQ(e.purge().records_removed, 30u);
  EXPECT_EQ(e.purge().records_removed, 0u);
}

TEST(Purge, DropsSecondaryEntriesOfVanishedKeys) {
  for (PointerMode p : {PointerMode::Logical, PointerMode::Physical}) {
    Engine e(fixture::delta(p));
    const TableId t = e.create_table();
    fixture::load(e, t, 1, 10);
    const auto tx = e.begin().id;
    const ColumnChange c = ColumnChange::filler2(fixture::filler2_for(900));
    ASSERT_EQ(e.update(tx, t, 3, std::span(&c, 1)), OpStatus::Ok);
    e.commit(tx);
    EXPECT_EQ(e.secondary_entry_count(t), 11u);
    e.purge();
    EXPECT_EQ(e.secondary_entry_count(t), 10u);
    const auto r = e.begin().id;
    EXPECT_TRUE(e.lookup_secondary(r, t, 0, row(3, 3).secondary_key(0)).rows.empty());
    EXPECT_EQ(e.lookup_secondary(r, t, 0, row(3, 900).secondary_key(0)).rows.size(), 1u);
  }
}
