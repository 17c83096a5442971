#include "mvsim/harness/workload.hpp"

#include <random>
#include <string>

namespace mvsim {

const char* to_string(Mix m) {
  switch (m) {
    case Mix::UpdateOnly: return "update_only";
    case Mix::SelectOnly: return "select_only";
    case Mix::OltpMixed: return "oltp_mixed";
  }
  return "?";
}

Mix parse_mix(std::string_view s) {
  if (s == "update_only") return Mix::UpdateOnly;
  if (s == "select_only") return Mix::SelectOnly;
  if (s == "oltp_mixed") return Mix::OltpMixed;
  throw ConfigError("mix: unknown workload mix '" + std::string(s) + "'");
}

void WorkloadConfig::validate() const {
  if (tables == 0) throw ConfigError("tables: must be positive");
  if (rows_per_table == 0) throw ConfigError("rows: must be positive");
  if (operations == 0) throw ConfigError("ops: must be positive");
  if (clients == 0) throw ConfigError("clients: must be positive");
  if (secondary_indexes > kMaxSecondaryIndexes) throw ConfigError("secondary_indexes: at most 4");
  if (gc_interval == 0) throw ConfigError("gc_interval: must be positive");
  if (cpu_us_per_op < 0) throw ConfigError("cpu_us_per_op: must be non-negative");
  if (mixed_select_percent > 100) throw ConfigError("select_percent: must be at most 100");
}

double RunStats::pages_per_select() const {
  return selects == 0 ? 0.0 : static_cast<double>(io.pages(OpClass::Select)) / static_cast<double>(selects);
}

double RunStats::pages_per_update() const {
  if (updates == 0) return 0.0;
  const auto pages = io.pages(OpClass::Update) + io.pages(OpClass::Vacuum) + io.pages(OpClass::Purge);
  return static_cast<double>(pages) / static_cast<double>(updates);
}

double RunStats::tps() const {
  return elapsed_us <= 0 ? 0.0 : static_cast<double>(operations) * 1e6 / static_cast<double>(elapsed_us);
}

Row make_row(Key key, std::uint64_t seed, TableId table) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL ^ (static_cast<std::uint64_t>(table) << 48) ^ key);
  std::uniform_int_distribution<int> digit(0, 9);
  Row r;
  r.key = key;
  r.counter = 0;
  // sysbench-style groups of digits separated by dashes
  for (std::size_t i = 0; i < r.filler1.size(); ++i) {
    r.filler1[i] = (i % 12 == 11) ? '-' : static_cast<char>('0' + digit(rng));
  }
  for (std::size_t i = 0; i < r.filler2.size(); ++i) {
    r.filler2[i] = (i % 12 == 11) ? '-' : static_cast<char>('0' + digit(rng));
  }
  return r;
}

std::vector<TableId> populate(Engine& engine, const WorkloadConfig& config) {
  config.validate();
  if (engine.table_count() != 0) throw UsageError("populate: engine already holds tables");
  std::vector<TableId> tables;
  for (std::size_t n = 0; n < config.tables; ++n) {
    const TableId t = engine.create_table({config.secondary_indexes});
    const Transaction txn = engine.begin();
    for (Key k = 1; k <= config.rows_per_table; ++k) {
      const auto r = engine.insert(txn.id, t, make_row(k, config.seed, t), OpClass::Populate);
      if (r.status != OpStatus::Ok) throw InvariantViolation("populate: insert failed");
    }
    engine.commit(txn.id);
    tables.push_back(t);
  }
  engine.pool().flush_all();
  return tables;
}

RunStats run_mix(Engine& engine, const std::vector<TableId>& tables, const WorkloadConfig& config) {
  config.validate();
  if (tables.empty()) throw UsageError("run_mix: nothing populated");
  RunStats st;
  engine.pool().drop_all();
  engine.device().align_to_window();
  const IoCounters before = engine.io_report();
  const std::int64_t start_us = engine.device().now_us();

  std::mt19937_64 rng(config.seed ^ (static_cast<std::uint64_t>(config.mix) + 1) * 0xD1B54A32D192ED03ULL);
  std::uniform_int_distribution<std::size_t> pick_table(0, tables.size() - 1);
  std::uniform_int_distribution<Key> pick_key(1, config.rows_per_table);
  std::uniform_int_distribution<unsigned> pick_percent(0, 99);
  std::vector<TxnId> open(config.clients, kNoTxn);
  const bool vacuum_auto = engine.config().gc == GcMode::VacuumAuto;
  const bool purge = engine.config().gc == GcMode::Purge;

  for (std::uint64_t op = 0; op < config.operations; ++op) {
    TxnId& slot = open[op % config.clients];
    if (slot != kNoTxn && engine.txns().is_active(slot)) engine.commit(slot);
    slot = engine.begin().id;

    const TableId t = tables[pick_table(rng)];
    const Key key = pick_key(rng);
    bool is_select = config.mix == Mix::SelectOnly;
    if (config.mix == Mix::OltpMixed) is_select = pick_percent(rng) < config.mixed_select_percent;
    if (is_select) {
      engine.read(slot, t, key);
      ++st.selects;
    } else {
      const ColumnChange c = ColumnChange::counter(static_cast<std::int64_t>(op + 1));
      if (engine.update(slot, t, key, std::span(&c, 1)) == OpStatus::Conflict) {
        ++st.conflicts;
        slot = kNoTxn;
      }
      ++st.updates;
    }
    ++st.operations;
    engine.device().advance(config.cpu_us_per_op);

    if ((op + 1) % config.gc_interval == 0) {
      if (vacuum_auto) {
        for (TableId tt : tables) {
          if (!engine.autovacuum_due(tt)) continue;
          const VacuumStats v = engine.vacuum(tt);
          ++st.vacuums;
          st.vacuum.pages_scanned += v.pages_scanned;
          st.vacuum.versions_examined += v.versions_examined;
          st.vacuum.versions_reclaimed += v.versions_reclaimed;
          st.vacuum.index_entries_unlinked += v.index_entries_unlinked;
          st.vacuum.pages_with_freed_space += v.pages_with_freed_space;
        }
      } else if (purge) {
        const PurgeStats p = engine.purge();
        ++st.purges;
        st.purge.records_removed += p.records_removed;
        st.purge.pages_freed += p.pages_freed;
      }
    }
  }
  for (TxnId id : open) {
    if (id != kNoTxn && engine.txns().is_active(id)) engine.commit(id);
  }
  engine.pool().flush_all();
  st.io = engine.io_report().since(before);
  st.elapsed_us = engine.device().now_us() - start_us;
  return st;
}

double chain_length_mean(const Engine& engine, const std::vector<TableId>& tables) {
  std::uint64_t versions = 0;
  std::uint64_t rows = 0;
  for (TableId t : tables) {
    for (Key k : engine.keys(t)) {
      versions += engine.chain_length(t, k);
      ++rows;
    }
  }
  return rows == 0 ? 0.0 : static_cast<double>(versions) / static_cast<double>(rows);
}

std::size_t table_pages(const Engine& engine, const std::vector<TableId>& tables) {
  std::size_t n = 0;
  for (TableId t : tables) n += engine.heap_pages(t);
  return n;
}

}  // namespace mvsim
