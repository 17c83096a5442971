#pragma once

#include <string>

#include "mvsim/mvcc/engine.hpp"

namespace fixture {

inline mvsim::EngineConfig config(mvsim::VersionStorage storage, mvsim::PointerMode pointers, mvsim::GcMode gc,
                                  std::size_t pool = 1024) {
  mvsim::EngineConfig c;
  c.storage = storage;
  c.pointers = pointers;
  c.gc = gc;
  c.pool_pages = pool;
  return c;
}

inline mvsim::EngineConfig append_only(mvsim::GcMode gc = mvsim::GcMode::VacuumManualOnly,
                                       mvsim::PointerMode p = mvsim::PointerMode::Physical,
                                       std::size_t pool = 1024) {
  return config(mvsim::VersionStorage::AppendOnly, p, gc, pool);
}

inline mvsim::EngineConfig delta(mvsim::PointerMode p = mvsim::PointerMode::Logical, std::size_t pool = 1024) {
  return config(mvsim::VersionStorage::Delta, p, mvsim::GcMode::Purge, pool);
}

// Secondary key i is the i-th 8-character group of filler2.
inline std::string filler2_for(std::uint64_t s0, std::uint64_t s1 = 0) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%08llu%08llu", static_cast<unsigned long long>(s0 % 100000000),
                static_cast<unsigned long long>(s1 % 100000000));
  return buf;
}

inline mvsim::Row row(mvsim::Key key, std::uint64_t s0 = 0, std::uint64_t s1 = 0) {
  mvsim::Row r;
  r.key = key;
  r.counter = 0;
  r.set(mvsim::Column::Filler1, mvsim::fixed_width("row" + std::to_string(key), mvsim::kFiller1Width));
  r.set(mvsim::Column::Filler2, mvsim::fixed_width(filler2_for(s0, s1), mvsim::kFiller2Width));
  return r;
}

// Inserts keys [first, first + n) in one committed transaction.
inline void load(mvsim::Engine& e, mvsim::TableId t, mvsim::Key first, std::size_t n) {
  const auto tx = e.begin().id;
  for (std::size_t i = 0; i < n; ++i) e.insert(tx, t, row(first + i, first + i));
  e.commit(tx);
}

inline mvsim::OpStatus set_counter(mvsim::Engine& e, mvsim::TxnId tx, mvsim::TableId t, mvsim::Key k,
                                   std::int64_t v) {
  const mvsim::ColumnChange c = mvsim::ColumnChange::counter(v);
  return e.update(tx, t, k, std::span(&c, 1));
}

// One committed counter update.
inline void bump(mvsim::Engine& e, mvsim::TableId t, mvsim::Key k, std::int64_t v) {
  const auto tx = e.begin().id;
  if (set_counter(e, tx, t, k, v) != mvsim::OpStatus::Ok) throw std::logic_error("bump failed");
  e.commit(tx);
}

}  // namespace fixture
