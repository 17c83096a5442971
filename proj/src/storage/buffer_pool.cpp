#include "mvsim/storage/buffer_pool.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace mvsim {

BufferPool::BufferPool(PageStore& store, Device& device, std::size_t capacity)
    : store_(store), device_(device), capacity_(capacity) {
  if (capacity == 0) throw ConfigError("pool_pages: buffer pool capacity must be positive");
}

bool BufferPool::dirty(PageId id) const {
  auto it = frames_.find(id);
  return it != frames_.end() && it->second.dirty;
}

void BufferPool::evict(PageId id) {
  auto it = frames_.find(id);
  if (it == frames_.end()) return;
  if (it->second.dirty) device_.transfer(it->second.dirty_class, IoKind::Write);
  lru_.erase(it->second.pos);
  frames_.erase(it);
}

void BufferPool::make_room() {
  if (ring_cap_ > 0 && ring_.size() >= ring_cap_) {
    while (!ring_.empty()) {
      const PageId victim = ring_.front();
      ring_.pop_front();
      auto it = frames_.find(victim);
      if (it != frames_.end() && it->second.ring) {
        evict(victim);
        return;
      }
    }
  }
  if (frames_.size() >= capacity_) evict(lru_.front());
}

BufferPool::Frame& BufferPool::fetch(PageId id, OpClass cls, bool read_from_device) {
  if (!store_.contains(id)) throw StorageFault("read of unallocated page " + std::to_string(id));
  if (auto it = frames_.find(id); it != frames_.end()) {
    lru_.splice(lru_.end(), lru_, it->second.pos);
    return it->second;
  }
  make_room();
  if (read_from_device) device_.transfer(cls, IoKind::Read);
  lru_.push_back(id);
  Frame& f = frames_[id];
  f.pos = std::prev(lru_.end());
  if (ring_cap_ > 0) {
    f.ring = true;
    ring_.push_back(id);
  }
  return f;
}

Page& BufferPool::read_page(PageId id, OpClass cls) {
  fetch(id, cls, true);
  return store_.raw(id);
}

Page& BufferPool::write_page(PageId id, OpClass cls) {
  Frame& f = fetch(id, cls, true);
  f.dirty = true;
  f.dirty_class = cls;
  return store_.raw(id);
}

Page& BufferPool::adopt_new_page(PageId id, OpClass cls) {
  Frame& f = fetch(id, cls, false);
  f.dirty = true;
  f.dirty_class = cls;
  return store_.raw(id);
}

void BufferPool::flush_all() {
  // Page order keeps the writeback sequence independent of hash layout.
  std::vector<PageId> ids;
  for (const auto& [id, f] : frames_) {
    if (f.dirty) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  for (PageId id : ids) {
    Frame& f = frames_[id];
    device_.transfer(f.dirty_class, IoKind::Write);
    f.dirty = false;
  }
}

void BufferPool::drop_all() {
  flush_all();
  frames_.clear();
  lru_.clear();
  ring_.clear();
}

BufferPool::RingScope::RingScope(BufferPool& pool, std::size_t pages) : pool_(pool) {
  pool_.ring_cap_ = std::max<std::size_t>(1, std::min(pages, pool_.capacity_));
  pool_.ring_.clear();
}

BufferPool::RingScope::~RingScope() {
  for (PageId id : pool_.ring_) {
    if (auto it = pool_.frames_.find(id); it != pool_.frames_.end()) it->second.ring = false;
  }
  pool_.ring_.clear();
  pool_.ring_cap_ = 0;
}

}  // namespace mvsim
