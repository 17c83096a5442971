#pragma once

#include <cstddef>
#include <deque>
#include <list>
#include <unordered_map>

#include "mvsim/storage/device.hpp"
#include "mvsim/storage/page_store.hpp"

namespace mvsim {

// Fixed-capacity page cache with strict LRU replacement.
//
// The pool tracks residency and dirtiness; page bytes live in the PageStore.
// A miss costs one device read, evicting a dirty page costs one device write
// charged to the class that last dirtied it.
class BufferPool {
 public:
  BufferPool(PageStore& store, Device& device, std::size_t capacity);

  BufferPool(const BufferPool&) = delete;
  BufferPool& operator=(const BufferPool&) = delete;

  Page& read_page(PageId id, OpClass cls);
  // Fetches and marks dirty. Repeated writes coalesce into one writeback.
  Page& write_page(PageId id, OpClass cls);
  // A page just allocated on the device: resident and dirty without a read.
  Page& adopt_new_page(PageId id, OpClass cls);

  void flush_all();
  // Flushes and empties the pool.
  void drop_all();

  bool resident(PageId id) const { return frames_.contains(id); }
  bool dirty(PageId id) const;
  std::size_t resident_count() const { return frames_.size(); }
  std::size_t capacity() const { return capacity_; }

  PageStore& store() { return store_; }
  const PageStore& store() const { return store_; }
  Device& device() { return device_; }

  // While alive, misses load into a small private ring of frames that are
  // recycled among themselves instead of displacing the pool's LRU order.
  class RingScope {
   public:
    RingScope(BufferPool& pool, std::size_t pages);
    ~RingScope();
    RingScope(const RingScope&) = delete;
    RingScope& operator=(const RingScope&) = delete;

   private:
    BufferPool& pool_;
  };

 private:
  struct Frame {
    std::list<PageId>::iterator pos;
    bool dirty = false;
    OpClass dirty_class = OpClass::Select;
    bool ring = false;
  };

  Frame& fetch(PageId id, OpClass cls, bool read_from_device);
  void evict(PageId id);
  void make_room();

  PageStore& store_;
  Device& device_;
  std::size_t capacity_;
  std::list<PageId> lru_;  // front = least recently used
  std::unordered_map<PageId, Frame> frames_;
  std::deque<PageId> ring_;
  std::size_t ring_cap_ = 0;
};

}  // namespace mvsim
