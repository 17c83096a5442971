#include "mvsim/mvcc/tuple.hpp"

#include "mvsim/storage/page.hpp"

namespace mvsim {

void HeapTuple::encode_header(std::span<std::byte> out, const TupleHeader& h) {
  store<TxnId>(out, 0, h.creator);
  store<TxnId>(out, 8, h.deleter);
  store<PageId>(out, 16, h.link.page);
  store<SlotId>(out, 20, h.link.slot);
  store<std::uint16_t>(out, 22, h.flags);
}

TupleHeader HeapTuple::decode_header(std::span<const std::byte> in) {
  if (in.size() < kTupleHeaderSize) throw StorageFault("tuple shorter than its header");
  TupleHeader h;
  h.creator = load<TxnId>(in, 0);
  h.deleter = load<TxnId>(in, 8);
  h.link = Tid{load<PageId>(in, 16), load<SlotId>(in, 20)};
  h.flags = load<std::uint16_t>(in, 22);
  return h;
}

void HeapTuple::encode(std::span<std::byte> out) const {
  if (out.size() < kHeapTupleSize) throw StorageFault("heap tuple buffer too small");
  encode_header(out, header);
  row.encode(out.subspan(kTupleHeaderSize));
}

HeapTuple HeapTuple::decode(std::span<const std::byte> in) {
  if (in.size() < kHeapTupleSize) throw StorageFault("heap tuple shorter than expected");
  return HeapTuple{decode_header(in), Row::decode(in.subspan(kTupleHeaderSize))};
}

}  // namespace mvsim
