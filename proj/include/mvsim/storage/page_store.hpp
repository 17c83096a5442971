#pragma once

#include <deque>
#include <vector>

#include "mvsim/storage/page.hpp"

namespace mvsim {

// Which structure a page belongs to; used for inspection and reports only.
enum class PageSpace : std::uint8_t { Heap, Undo, Index, Indirection };

// Backing image of every page on the virtual device. Addresses are stable:
// a Page& stays valid for the lifetime of the store. Access through here is
// not accounted; the engine goes through BufferPool.
class PageStore {
 public:
  PageId allocate(PageSpace space);

  Page& raw(PageId id);
  const Page& raw(PageId id) const;
  PageSpace space(PageId id) const;
  bool contains(PageId id) const { return id < pages_.size(); }
  std::size_t size() const { return pages_.size(); }

 private:
  std::deque<Page> pages_;
  std::vector<PageSpace> spaces_;
};

}  // namespace mvsim
