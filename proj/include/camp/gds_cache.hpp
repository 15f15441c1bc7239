#pragma once

#include <string>
#include <unordered_map>

#include "camp/dary_heap.hpp"
#include "camp/policy.hpp"
#include "camp/rounding.hpp"

namespace camp {

// Priority of one resident entry: the H value, with deterministic
// tie-breaking by smaller ratio and then by least recent request.
struct GdsPriority {
  double h = 0;
  std::uint64_t ratio = 0;
  std::uint64_t seq = 0;

  friend bool operator<(const GdsPriority& a, const GdsPriority& b) {
    if (a.h != b.h) return a.h < b.h;
    if (a.ratio != b.ratio) return a.ratio < b.ratio;
    return a.seq < b.seq;
  }
};

// Exact Greedy Dual Size with one heap node per resident entry.
//
// Every entry carries H = L + ratio, where ratio is the integerized
// cost-to-size ratio (no precision rounding) and L is a global offset that
// never decreases: a hit reassigns H from the smallest H among the other
// entries, and each eviction raises L to the evicted entry's H.
class GdsCache final : public EvictionPolicy {
 public:
  explicit GdsCache(std::uint64_t capacity_bytes, unsigned heap_arity = 8);

  PolicyDecision request(const TraceRecord& record) override;
  bool contains(std::string_view key) const override;
  std::uint64_t resident_bytes() const override { return resident_; }
  std::uint64_t capacity() const override { return capacity_; }
  std::string_view name() const override { return "gds"; }
  std::uint64_t heap_visits() const override { return heap_.visits(); }
  void validate_invariants() const override;

  double offset() const { return offset_; }
  double priority_of(std::string_view key) const;  // H of a resident entry

 private:
  using Heap = DaryHeap<GdsPriority, std::uint64_t>;

  struct Entry {
    std::uint64_t size;
    std::uint64_t cost;
    std::uint64_t ratio;  // as assigned at the last request
    std::uint64_t id;
    double h;
    Heap::Handle handle;
  };

  void set_offset(double value);

  std::uint64_t capacity_;
  std::uint64_t resident_ = 0;
  double offset_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t next_id_ = 0;
  RatioContext ctx_;  // precision stays unbounded: GDS never rounds
  Heap heap_;
  std::unordered_map<std::string, Entry, StringHash, std::equal_to<>> entries_;
  std::unordered_map<std::uint64_t, std::string> key_by_id_;
};

}  // namespace camp
