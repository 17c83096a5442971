#include "mvsim/storage/page_store.hpp"

#include <string>

namespace mvsim {

PageId PageStore::allocate(PageSpace space) {
  const auto id = static_cast<PageId>(pages_.size());
  if (id == kNoPage) throw StorageFault("page id space exhausted");
  pages_.emplace_back().init(id);
  spaces_.push_back(space);
  return id;
}

Page& PageStore::raw(PageId id) {
  if (!contains(id)) throw StorageFault("unknown page " + std::to_string(id));
  return pages_[id];
}

const Page& PageStore::raw(PageId id) const {
  if (!contains(id)) throw StorageFault("unknown page " + std::to_string(id));
  return pages_[id];
}

PageSpace PageStore::space(PageId id) const {
  if (!contains(id)) throw StorageFault("unknown page " + std::to_string(id));
  return spaces_[id];
}

}  // namespace mvsim
