#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mvsim/gc/gc.hpp"
#include "mvsim/mvcc/engine.hpp"
#include "mvsim/storage/io_counters.hpp"

namespace mvsim {

enum class Mix : std::uint8_t { UpdateOnly, SelectOnly, OltpMixed };

const char* to_string(Mix m);
Mix parse_mix(std::string_view s);

struct WorkloadConfig {
  std::size_t tables = 1;
  std::size_t rows_per_table = 10'000;
  Mix mix = Mix::UpdateOnly;
  std::uint64_t operations = 100'000;
  std::size_t clients = 12;
  std::uint64_t seed = 1;
  std::size_t secondary_indexes = 1;
  // Background GC (autovacuum check or purge) runs every this many operations.
  std::uint64_t gc_interval = 1'000;
  // Simulated compute time charged per operation.
  std::int64_t cpu_us_per_op = 20;
  // Share of point selects in oltp_mixed, in percent.
  unsigned mixed_select_percent = 70;

  void validate() const;
};

struct RunStats {
  std::uint64_t operations = 0;
  std::uint64_t selects = 0;
  std::uint64_t updates = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t vacuums = 0;
  std::uint64_t purges = 0;
  IoCounters io;  // this run only
  std::int64_t elapsed_us = 0;
  VacuumStats vacuum;
  PurgeStats purge;

  double pages_per_select() const;
  // Update-class pages plus the background GC they caused.
  double pages_per_update() const;
  double tps() const;
};

// Loads rows 1..rows_per_table into fresh tables, one transaction per table.
// Filler content is drawn from the seed.
std::vector<TableId> populate(Engine& engine, const WorkloadConfig& config);

// Deterministic filler for a row; populate() uses this.
Row make_row(Key key, std::uint64_t seed, TableId table);

// Runs the mix from a cold pool: each logical client in turn commits its
// previous transaction, begins a new one and issues one operation. Dirty
// pages are flushed at the end and counted.
RunStats run_mix(Engine& engine, const std::vector<TableId>& tables, const WorkloadConfig& config);

double chain_length_mean(const Engine& engine, const std::vector<TableId>& tables);
std::size_t table_pages(const Engine& engine, const std::vector<TableId>& tables);

}  // namespace mvsim
