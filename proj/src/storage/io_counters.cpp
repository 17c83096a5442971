#include "mvsim/storage/io_counters.hpp"

#include <numeric>

namespace mvsim {

const char* to_string(OpClass c) {
  switch (c) {
    case OpClass::Select: return "select";
    case OpClass::Update: return "update";
    case OpClass::Vacuum: return "vacuum";
    case OpClass::Purge: return "purge";
    case OpClass::Populate: return "populate";
  }
  return "?";
}

std::uint64_t IoCounters::pages_read() const {
  return std::accumulate(reads.begin(), reads.end(), std::uint64_t{0});
}

std::uint64_t IoCounters::pages_written() const {
  return std::accumulate(writes.begin(), writes.end(), std::uint64_t{0});
}

IoCounters IoCounters::since(const IoCounters& earlier) const {
  IoCounters d;
  for (std::size_t i = 0; i < kOpClassCount; ++i) {
    if (reads[i] < earlier.reads[i] || writes[i] < earlier.writes[i]) {
      throw InvariantViolation("io counters went backwards");
    }
    d.reads[i] = reads[i] - earlier.reads[i];
    d.writes[i] = writes[i] - earlier.writes[i];
  }
  return d;
}

}  // namespace mvsim
