#include "mvsim/storage/page.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace mvsim {

namespace {
constexpr std::uint16_t kLenMask = 0x3FFF;
}

void Page::init(PageId id) {
  data_.fill(std::byte{0});
  store<PageId>(data_, 0, id);
  set_slot_count(0);
  set_upper(static_cast<std::uint16_t>(kPageSize));
  set_prune_hint(0);
  set_live_bytes(0);
}

std::uint16_t Page::raw_offset(SlotId s) const {
  return load<std::uint16_t>(bytes(), slot_offset(s));
}

std::uint16_t Page::raw_word(SlotId s) const {
  return load<std::uint16_t>(bytes(), slot_offset(s) + 2);
}

void Page::set_slot(SlotId s, std::uint16_t offset, SlotState st, std::uint16_t len) {
  store<std::uint16_t>(data_, slot_offset(s), offset);
  store<std::uint16_t>(data_, slot_offset(s) + 2,
                       static_cast<std::uint16_t>((static_cast<unsigned>(st) << 14) | (len & kLenMask)));
}

void Page::check_slot(SlotId s) const {
  if (s >= slot_count()) {
    throw StorageFault("slot " + std::to_string(s) + " out of range on page " + std::to_string(id()));
  }
}

SlotState Page::state(SlotId s) const {
  check_slot(s);
  return static_cast<SlotState>(raw_word(s) >> 14);
}

std::size_t Page::length(SlotId s) const {
  check_slot(s);
  return raw_word(s) & kLenMask;
}

std::size_t Page::free_space() const {
  const std::size_t used = kHeaderSize + kSlotSize * slot_count() + live_bytes();
  return kPageSize - used;
}

bool Page::fits(std::size_t len) const {
  bool reuse = false;
  for (SlotId s = 0; s < slot_count(); ++s) {
    if (state(s) == SlotState::Unused) {
      reuse = true;
      break;
    }
  }
  return free_space() >= len + (reuse ? 0 : kSlotSize);
}

std::optional<SlotId> Page::insert(std::span<const std::byte> tuple) {
  const std::size_t len = tuple.size();
  if (len == 0 || len > kMaxTuple) throw StorageFault("tuple size out of range");
  std::optional<SlotId> reuse;
  for (SlotId s = 0; s < slot_count(); ++s) {
    if (state(s) == SlotState::Unused) {
      reuse = s;
      break;
    }
  }
  const std::size_t need = len + (reuse ? 0 : kSlotSize);
  if (free_space() < need) return std::nullopt;

  SlotId slot = reuse.value_or(slot_count());
  if (upper() < directory_end() + need) compact();
  if (!reuse) {
    set_slot_count(static_cast<std::uint16_t>(slot_count() + 1));
    set_slot(slot, 0, SlotState::Unused, 0);
  }
  const auto off = static_cast<std::uint16_t>(upper() - len);
  std::memcpy(data_.data() + off, tuple.data(), len);
  set_upper(off);
  set_slot(slot, off, SlotState::Normal, static_cast<std::uint16_t>(len));
  set_live_bytes(static_cast<std::uint16_t>(live_bytes() + len));
  return slot;
}

std::span<std::byte> Page::tuple(SlotId s) {
  if (state(s) != SlotState::Normal) {
    throw StorageFault("slot " + std::to_string(s) + " on page " + std::to_string(id()) + " holds no tuple");
  }
  return std::span<std::byte>(data_).subspan(raw_offset(s), length(s));
}

std::span<const std::byte> Page::tuple(SlotId s) const {
  if (state(s) != SlotState::Normal) {
    throw StorageFault("slot " + std::to_string(s) + " on page " + std::to_string(id()) + " holds no tuple");
  }
  return bytes().subspan(raw_offset(s), length(s));
}

SlotId Page::redirect_target(SlotId s) const {
  if (state(s) != SlotState::Redirect) throw StorageFault("slot is not a redirect");
  return raw_offset(s);
}

void Page::release(SlotId s) {
  const SlotState st = state(s);
  if (st == SlotState::Normal) {
    set_live_bytes(static_cast<std::uint16_t>(live_bytes() - length(s)));
  }
  set_slot(s, 0, SlotState::Unused, 0);
}

void Page::set_redirect(SlotId s, SlotId target) {
  check_slot(target);
  if (state(s) == SlotState::Normal) {
    set_live_bytes(static_cast<std::uint16_t>(live_bytes() - length(s)));
  }
  set_slot(s, target, SlotState::Redirect, 0);
}

void Page::set_dead(SlotId s) {
  if (state(s) == SlotState::Normal) {
    set_live_bytes(static_cast<std::uint16_t>(live_bytes() - length(s)));
  }
  set_slot(s, 0, SlotState::Dead, 0);
}

std::size_t Page::live_count() const {
  std::size_t n = 0;
  for (SlotId s = 0; s < slot_count(); ++s) n += state(s) == SlotState::Normal;
  return n;
}

void Page::compact() {
  struct Item {
    SlotId slot;
    std::uint16_t off;
    std::uint16_t len;
  };
  std::vector<Item> items;
  for (SlotId s = 0; s < slot_count(); ++s) {
    if (state(s) == SlotState::Normal) {
      items.push_back({s, raw_offset(s), static_cast<std::uint16_t>(length(s))});
    }
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.off > b.off; });
  std::array<std::byte, kPageSize> scratch;
  std::memcpy(scratch.data(), data_.data(), kPageSize);
  std::size_t top = kPageSize;
  for (const auto& it : items) {
    top -= it.len;
    std::memcpy(data_.data() + top, scratch.data() + it.off, it.len);
    set_slot(it.slot, static_cast<std::uint16_t>(top), SlotState::Normal, it.len);
  }
  std::fill(data_.begin() + static_cast<std::ptrdiff_t>(directory_end()),
            data_.begin() + static_cast<std::ptrdiff_t>(top), std::byte{0});
  set_upper(static_cast<std::uint16_t>(top));
}

bool Page::well_formed() const {
  if (directory_end() > upper() || upper() > kPageSize) return false;
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::size_t total = 0;
  for (SlotId s = 0; s < slot_count(); ++s) {
    const auto st = static_cast<SlotState>(raw_word(s) >> 14);
    if (st == SlotState::Normal) {
      const std::size_t off = raw_offset(s);
      const std::size_t len = raw_word(s) & kLenMask;
      if (off < upper() || off + len > kPageSize) return false;
      spans.emplace_back(off, off + len);
      total += len;
    } else if (st == SlotState::Redirect) {
      if (raw_offset(s) >= slot_count()) return false;
    }
  }
  if (total != live_bytes()) return false;
  if (directory_end() + total > kPageSize) return false;
  std::sort(spans.begin(), spans.end());
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].first < spans[i - 1].second) return false;
  }
  return true;
}

}  // namespace mvsim
