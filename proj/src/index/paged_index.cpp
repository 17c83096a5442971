#include "mvsim/index/paged_index.hpp"

#include <algorithm>
#include <limits>

namespace mvsim {

PagedIndex::PagedIndex(BufferPool& pool, PageSpace space) : pool_(pool), space_(space) {
  const PageId first = pool_.store().allocate(space_);
  pool_.adopt_new_page(first, OpClass::Populate);
  leaves_.push_back({first, {}});
  fences_.emplace(IndexEntry{0, 0}, 0);
}

std::map<IndexEntry, std::size_t>::const_iterator PagedIndex::route(const IndexEntry& e) const {
  auto it = fences_.upper_bound(e);
  return std::prev(it);
}

void PagedIndex::split(std::size_t leaf, OpClass cls) {
  const PageId page = pool_.store().allocate(space_);
  pool_.adopt_new_page(page, cls);
  auto& src = leaves_[leaf].entries;
  const auto mid = src.begin() + static_cast<std::ptrdiff_t>(src.size() / 2);
  Leaf right{page, std::vector<IndexEntry>(mid, src.end())};
  src.erase(mid, src.end());
  const IndexEntry fence = right.entries.front();
  leaves_.push_back(std::move(right));
  fences_.emplace(fence, leaves_.size() - 1);
}

bool PagedIndex::insert(IndexEntry e, OpClass cls) {
  const std::size_t leaf = route(e)->second;
  pool_.write_page(leaves_[leaf].page, cls);
  auto& v = leaves_[leaf].entries;
  auto pos = std::lower_bound(v.begin(), v.end(), e);
  if (pos != v.end() && *pos == e) return false;
  v.insert(pos, e);
  ++entries_;
  if (v.size() > kLeafCapacity) split(leaf, cls);
  return true;
}

bool PagedIndex::erase(IndexEntry e, OpClass cls) {
  const std::size_t leaf = route(e)->second;
  auto& v = leaves_[leaf].entries;
  pool_.read_page(leaves_[leaf].page, cls);
  auto pos = std::lower_bound(v.begin(), v.end(), e);
  if (pos == v.end() || *pos != e) return false;
  pool_.write_page(leaves_[leaf].page, cls);
  v.erase(pos);
  --entries_;
  return true;
}

std::vector<std::uint64_t> PagedIndex::lookup(std::uint64_t key, OpClass cls) {
  std::vector<std::uint64_t> out;
  const IndexEntry lo{key, 0};
  const IndexEntry hi{key, std::numeric_limits<std::uint64_t>::max()};
  for (auto it = route(lo); it != fences_.end() && it->first <= hi; ++it) {
    const Leaf& leaf = leaves_[it->second];
    pool_.read_page(leaf.page, cls);
    auto pos = std::lower_bound(leaf.entries.begin(), leaf.entries.end(), lo);
    for (; pos != leaf.entries.end() && pos->key == key; ++pos) out.push_back(pos->value);
  }
  return out;
}

std::size_t PagedIndex::scan_all(const std::function<Action(const IndexEntry&)>& visit, OpClass cls) {
  std::size_t erased = 0;
  for (const auto& [fence, idx] : fences_) {
    Leaf& leaf = leaves_[idx];
    pool_.read_page(leaf.page, cls);
    const std::size_t before = leaf.entries.size();
    std::erase_if(leaf.entries, [&](const IndexEntry& e) { return visit(e) == Action::Erase; });
    const std::size_t removed = before - leaf.entries.size();
    if (removed > 0) {
      pool_.write_page(leaf.page, cls);
      erased += removed;
      entries_ -= removed;
    }
  }
  return erased;
}

std::vector<PageId> PagedIndex::leaf_pages() const {
  std::vector<PageId> out;
  for (const auto& leaf : leaves_) out.push_back(leaf.page);
  return out;
}

std::vector<IndexEntry> PagedIndex::peek_all() const {
  std::vector<IndexEntry> out;
  out.reserve(entries_);
  for (const auto& [fence, idx] : fences_) {
    const auto& v = leaves_[idx].entries;
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::vector<std::uint64_t> PagedIndex::peek(std::uint64_t key) const {
  std::vector<std::uint64_t> out;
  const IndexEntry lo{key, 0};
  const IndexEntry hi{key, std::numeric_limits<std::uint64_t>::max()};
  for (auto it = route(lo); it != fences_.end() && it->first <= hi; ++it) {
    const auto& v = leaves_[it->second].entries;
    for (auto pos = std::lower_bound(v.begin(), v.end(), lo); pos != v.end() && pos->key == key; ++pos) {
      out.push_back(pos->value);
    }
  }
  return out;
}

}  // namespace mvsim
