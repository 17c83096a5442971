#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "mvsim/storage/buffer_pool.hpp"

namespace mvsim {

struct IndexEntry {
  std::uint64_t key = 0;
  std::uint64_t value = 0;
  friend constexpr auto operator<=>(const IndexEntry&, const IndexEntry&) = default;
};

// Ordered (key, value) set whose leaves are mapped onto simulated pages of up
// to 64 entries. Inner routing nodes stay memory resident and are not
// accounted; every leaf visit is a page access through the pool. Leaves split
// when they overflow and are never merged.
class PagedIndex {
 public:
  static constexpr std::size_t kLeafCapacity = 64;

  enum class Action : std::uint8_t { Keep, Erase };

  PagedIndex(BufferPool& pool, PageSpace space);

  // Returns false when the exact entry is already present.
  bool insert(IndexEntry e, OpClass cls);
  // Returns false when the entry is absent.
  bool erase(IndexEntry e, OpClass cls);
  // All values stored under `key`, touching every leaf that may hold them.
  std::vector<std::uint64_t> lookup(std::uint64_t key, OpClass cls);

  // Visits every entry in order, reading every leaf; leaves where the visitor
  // erased something are written back. Returns the number of erased entries.
  std::size_t scan_all(const std::function<Action(const IndexEntry&)>& visit, OpClass cls);

  std::size_t entry_count() const { return entries_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  std::vector<PageId> leaf_pages() const;

  // Inspection without page accounting.
  std::vector<IndexEntry> peek_all() const;
  std::vector<std::uint64_t> peek(std::uint64_t key) const;

 private:
  struct Leaf {
    PageId page;
    std::vector<IndexEntry> entries;
  };

  std::map<IndexEntry, std::size_t>::const_iterator route(const IndexEntry& e) const;
  void split(std::size_t leaf, OpClass cls);

  BufferPool& pool_;
  PageSpace space_;
  std::vector<Leaf> leaves_;
  std::map<IndexEntry, std::size_t> fences_;  // low fence -> leaf
  std::size_t entries_ = 0;
};

}  // namespace mvsim
