#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "mvsim/gc/gc.hpp"
#include "mvsim/index/maintenance.hpp"
#include "mvsim/index/paged_index.hpp"
#include "mvsim/mvcc/engine_config.hpp"
#include "mvsim/mvcc/row.hpp"
#include "mvsim/mvcc/transaction.hpp"
#include "mvsim/mvcc/tuple.hpp"
#include "mvsim/mvcc/undo_log.hpp"
#include "mvsim/storage/buffer_pool.hpp"
#include "mvsim/storage/device.hpp"
#include "mvsim/storage/page_store.hpp"

namespace mvsim {

enum class OpStatus : std::uint8_t { Ok, NotFound, Duplicate, Conflict };
enum class Outcome : std::uint8_t { Commit, Abort };

const char* to_string(OpStatus s);

struct TableSpec {
  std::size_t secondary_indexes = 1;
};

struct InsertResult {
  OpStatus status = OpStatus::Ok;
  Tid location;
};

struct ReadResult {
  std::optional<Row> row;
  std::size_t versions_examined = 0;
};

struct LookupResult {
  std::vector<Row> rows;  // ordered by key
  std::size_t entries_scanned = 0;
};

// One stored version, as seen by inspection helpers.
struct VersionView {
  Tid location;
  TupleHeader header;
  Row row;
};

// Storage engine over one simulated device. Calls are serialized.
//
// A Conflict status means the engine has already aborted the caller.
class Engine {
 public:
  explicit Engine(EngineConfig config);

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const EngineConfig& config() const { return config_; }

  TableId create_table(TableSpec spec = {});
  std::size_t table_count() const { return tables_.size(); }

  Transaction begin();
  void finish(TxnId txn, Outcome outcome);
  void commit(TxnId txn) { finish(txn, Outcome::Commit); }
  void abort(TxnId txn) { finish(txn, Outcome::Abort); }

  InsertResult insert(TxnId txn, TableId table, const Row& row, OpClass cls = OpClass::Update);
  OpStatus update(TxnId txn, TableId table, Key key, std::span<const ColumnChange> changes);
  ReadResult read(TxnId txn, TableId table, Key key);
  std::optional<Tid> lookup_primary(TableId table, Key key);
  LookupResult lookup_secondary(TxnId txn, TableId table, std::size_t index, std::uint64_t skey);

  // Garbage collection. vacuum needs append-only storage, purge needs delta
  // storage; the other combination throws ConfigError.
  VacuumStats vacuum(TableId table);
  PurgeStats purge();
  bool autovacuum_due(TableId table) const;
  const TableActivity& activity(TableId table) const;

  BufferPool& pool() { return pool_; }
  Device& device() { return device_; }
  const Device& device() const { return device_; }
  const TxnManager& txns() const { return txns_; }
  IoCounters io_report() const { return device_.io_report(); }

  // Inspection. None of these touch the pool or the counters.
  std::vector<Key> keys(TableId table) const;
  // Append-only: versions from the chain head to the newest. Delta: the
  // master row followed by one state per reachable undo record.
  std::vector<VersionView> peek_chain(TableId table, Key key) const;
  std::size_t chain_length(TableId table, Key key) const { return peek_chain(table, key).size(); }
  std::size_t heap_pages(TableId table) const;
  std::vector<PageId> heap_page_ids(TableId table) const;
  std::size_t secondary_entry_count(TableId table) const;
  std::vector<IndexEntry> peek_secondary(TableId table, std::size_t index) const;
  std::size_t undo_records() const { return undo_.live_records(); }
  std::size_t undo_pages() const { return undo_.page_count() - undo_.free_page_count(); }
  // Physical secondary and primary entries whose slot holds no version.
  std::size_t dangling_pointers(TableId table) const;

 private:
  struct Table {
    TableId id = 0;
    std::size_t n_secondary = 0;
    std::vector<PageId> pages;
    std::set<PageId> free_space;  // pages that can take another tuple
    std::unique_ptr<PagedIndex> primary;
    std::unique_ptr<PagedIndex> indirection;  // logical pointers only
    std::vector<std::unique_ptr<PagedIndex>> secondary;
    TableActivity activity;
  };

  struct WriteRecord {
    bool is_insert = false;
    TableId table = 0;
    Key key = 0;
    Tid old_location;  // superseded version, or the master row
    Tid new_location;  // new version, undo record, or inserted tuple
    std::vector<IndexMutation> added;
  };

  struct TxnWork {
    std::vector<WriteRecord> writes;
  };

  struct HistoryEntry {
    TxnId txn = kNoTxn;
    std::vector<Tid> undo;  // in update order
  };

  class ClassScope {
   public:
    ClassScope(Engine& e, OpClass c) : e_(e), prev_(e.cls_) { e.cls_ = c; }
    ~ClassScope() { e_.cls_ = prev_; }
    ClassScope(const ClassScope&) = delete;
    ClassScope& operator=(const ClassScope&) = delete;

   private:
    Engine& e_;
    OpClass prev_;
  };

  Table& table(TableId id);
  const Table& table(TableId id) const;
  const Snapshot& active_snapshot(TxnId txn) const;
  std::vector<std::uint64_t> skeys(const Table& t, const Row& row) const;

  // Heap access, accounted to the current class.
  Page& heap_read(PageId p) { return pool_.read_page(p, cls_); }
  Page& heap_write(Table& t, PageId p);
  HeapTuple read_tuple(Tid at);
  Tid resolve(Tid at);
  Tid place_tuple(Table& t, HeapTuple tuple, std::optional<PageId> same_page);
  void refresh_free_space(Table& t, PageId p);
  void stamp_header(Table& t, Tid at, const TupleHeader& h);

  // Append-only storage.
  struct ChainPosition {
    std::optional<std::pair<Tid, HeapTuple>> visible;
    std::pair<Tid, HeapTuple> tail;
    std::size_t examined = 0;
  };
  ChainPosition walk_chain(Tid entry, const Snapshot& s);
  InsertResult insert_append_only(Table& t, TxnId txn, const Row& row);
  OpStatus update_append_only(Table& t, TxnId txn, Key key, std::span<const ColumnChange> changes);
  void rollback_append_only(const WriteRecord& w);
  void maybe_prune(Table& t, PageId p);
  std::size_t prune_page(Table& t, PageId p);

  // Delta storage.
  std::optional<Row> visible_state(TableId table, Key key, const HeapTuple& master, const Snapshot& s,
                                   std::size_t* examined);
  InsertResult insert_delta(Table& t, TxnId txn, const Row& row);
  OpStatus update_delta(Table& t, TxnId txn, Key key, std::span<const ColumnChange> changes);
  void rollback_delta(const WriteRecord& w);
  bool purge_record(Tid at);

  void add_entries(Table& t, WriteRecord& w, std::span<const IndexMutation> muts);
  void remove_entries(Table& t, std::span<const IndexMutation> muts);
  std::optional<Tid> primary_entry(Table& t, Key key);
  OpStatus conflict(TxnId txn);

  EngineConfig config_;
  PageStore store_;
  Device device_;
  BufferPool pool_;
  TxnManager txns_;
  UndoLog undo_;
  std::vector<std::unique_ptr<Table>> tables_;
  std::unordered_map<TxnId, TxnWork> work_;
  std::deque<HistoryEntry> history_;  // committed delta transactions, commit order
  OpClass cls_ = OpClass::Select;
};

}  // namespace mvsim
