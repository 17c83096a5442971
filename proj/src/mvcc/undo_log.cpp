#include "mvsim/mvcc/undo_log.hpp"

#include <string>

namespace mvsim {

namespace {
constexpr std::size_t kRecordHeader = 40;
constexpr std::size_t kColumnHeader = 4;
}  // namespace

std::size_t DeltaRecord::encoded_size() const {
  std::size_t n = kRecordHeader;
  for (const auto& c : changed_columns) n += kColumnHeader + c.value.size();
  return n;
}

void DeltaRecord::encode(std::span<std::byte> out) const {
  if (out.size() < encoded_size()) throw StorageFault("undo buffer too small");
  store<Key>(out, 0, owner_key);
  store<TableId>(out, 8, table);
  store<std::uint16_t>(out, 12, static_cast<std::uint16_t>(changed_columns.size()));
  store<std::uint16_t>(out, 14, 0);
  store<TxnId>(out, 16, undo_stamp);
  store<TxnId>(out, 24, prior_creator);
  store<PageId>(out, 32, prev_delta.page);
  store<SlotId>(out, 36, prev_delta.slot);
  store<std::uint16_t>(out, 38, 0);
  std::size_t off = kRecordHeader;
  for (const auto& c : changed_columns) {
    store<std::uint8_t>(out, off, static_cast<std::uint8_t>(c.column));
    store<std::uint8_t>(out, off + 1, 0);
    store<std::uint16_t>(out, off + 2, static_cast<std::uint16_t>(c.value.size()));
    std::memcpy(out.data() + off + kColumnHeader, c.value.data(), c.value.size());
    off += kColumnHeader + c.value.size();
  }
}

DeltaRecord DeltaRecord::decode(std::span<const std::byte> in) {
  if (in.size() < kRecordHeader) throw StorageFault("undo record truncated");
  DeltaRecord r;
  r.owner_key = load<Key>(in, 0);
  r.table = load<TableId>(in, 8);
  const auto n = load<std::uint16_t>(in, 12);
  r.undo_stamp = load<TxnId>(in, 16);
  r.prior_creator = load<TxnId>(in, 24);
  r.prev_delta = Tid{load<PageId>(in, 32), load<SlotId>(in, 36)};
  std::size_t off = kRecordHeader;
  for (std::uint16_t i = 0; i < n; ++i) {
    if (off + kColumnHeader > in.size()) throw StorageFault("undo record truncated");
    const auto col = static_cast<Column>(load<std::uint8_t>(in, off));
    const auto len = load<std::uint16_t>(in, off + 2);
    if (off + kColumnHeader + len > in.size()) throw StorageFault("undo record truncated");
    std::string value(reinterpret_cast<const char*>(in.data() + off + kColumnHeader), len);
    r.changed_columns.push_back({col, std::move(value)});
    off += kColumnHeader + len;
  }
  return r;
}

void DeltaRecord::undo(Row& row) const {
  for (const auto& c : changed_columns) row.apply(c);
}

Row reconstruct(const Row& master, std::span<const DeltaRecord> chain, std::size_t steps) {
  if (steps > chain.size()) {
    throw RangeError("reconstruct: " + std::to_string(steps) + " steps requested, chain holds " +
                     std::to_string(chain.size()));
  }
  Row row = master;
  for (std::size_t i = 0; i < steps; ++i) chain[i].undo(row);
  return row;
}

PageId UndoLog::fresh_page(OpClass cls) {
  PageId id;
  if (!free_.empty()) {
    id = *free_.begin();
    free_.erase(free_.begin());
  } else {
    id = pool_.store().allocate(PageSpace::Undo);
    live_[id] = 0;
  }
  pool_.adopt_new_page(id, cls).init(id);
  return id;
}

Tid UndoLog::append(const DeltaRecord& rec, OpClass cls) {
  std::vector<std::byte> buf(rec.encoded_size());
  rec.encode(buf);
  if (tail_ != kNoPage) {
    Page& page = pool_.write_page(tail_, cls);
    if (auto slot = page.insert(buf)) {
      ++live_[tail_];
      ++live_total_;
      return Tid{tail_, *slot};
    }
    if (live_[tail_] == 0) free_.insert(tail_);
  }
  tail_ = fresh_page(cls);
  Page& page = pool_.store().raw(tail_);
  auto slot = page.insert(buf);
  if (!slot) throw StorageFault("undo record larger than a page");
  ++live_[tail_];
  ++live_total_;
  return Tid{tail_, *slot};
}

DeltaRecord UndoLog::read(Tid at, OpClass cls) {
  if (!live_.contains(at.page)) throw StorageFault("undo pointer outside undo space");
  const Page& page = pool_.read_page(at.page, cls);
  return DeltaRecord::decode(page.tuple(at.slot));
}

std::optional<DeltaRecord> UndoLog::read_if_current(Tid at, TableId table, Key key, TxnId stamp,
                                                    OpClass cls) {
  if (!at.valid() || !live_.contains(at.page)) return std::nullopt;
  const Page& page = pool_.read_page(at.page, cls);
  if (free_.contains(at.page) || at.slot >= page.slot_count() ||
      page.state(at.slot) != SlotState::Normal) {
    return std::nullopt;
  }
  DeltaRecord rec = DeltaRecord::decode(page.tuple(at.slot));
  if (rec.table != table || rec.owner_key != key || rec.undo_stamp != stamp) return std::nullopt;
  return rec;
}

std::optional<DeltaRecord> UndoLog::peek_if_current(Tid at, TableId table, Key key, TxnId stamp) const {
  if (!at.valid() || !live_.contains(at.page) || free_.contains(at.page)) return std::nullopt;
  const Page& page = pool_.store().raw(at.page);
  if (at.slot >= page.slot_count() || page.state(at.slot) != SlotState::Normal) return std::nullopt;
  DeltaRecord rec = DeltaRecord::decode(page.tuple(at.slot));
  if (rec.table != table || rec.owner_key != key || rec.undo_stamp != stamp) return std::nullopt;
  return rec;
}

bool UndoLog::remove(Tid at, OpClass cls) {
  auto it = live_.find(at.page);
  if (it == live_.end() || it->second == 0) throw StorageFault("removing undo record from empty page");
  Page& page = pool_.write_page(at.page, cls);
  page.release(at.slot);
  --it->second;
  --live_total_;
  if (it->second == 0 && at.page != tail_) {
    free_.insert(at.page);
    return true;
  }
  return false;
}

}  // namespace mvsim
