#pragma once

#include <list>
#include <string>
#include <unordered_map>

#include "camp/dary_heap.hpp"
#include "camp/policy.hpp"
#include "camp/rounding.hpp"

namespace camp {

// Priority of a queue head. Across queues, equal H values go to the smaller
// ratio; within a queue the head is already the least recently requested
// entry, so the pair (h, ratio) picks the eviction victim deterministically.
struct CampPriority {
  double h = 0;
  std::uint64_t ratio = 0;

  friend bool operator<(const CampPriority& a, const CampPriority& b) {
    if (a.h != b.h) return a.h < b.h;
    return a.ratio < b.ratio;
  }
};

// CAMP: one LRU queue per rounded cost-to-size ratio, plus a small heap over
// the queue heads.
//
// Entries are appended at the tail of the queue named by their rounded
// ratio with priority H = L + ratio. Because L never decreases, priorities
// inside a queue are non-decreasing from head to tail, so each queue's head
// carries its minimum and the heap only needs one node per non-empty queue.
// Hits touch the heap only when a queue head changes; eviction pops the head
// of the queue whose head priority is the heap minimum. Queues are created
// and deleted eagerly, keeping heap size equal to the live queue count.
class CampCache final : public EvictionPolicy {
 public:
  struct Options {
    unsigned heap_arity = 8;
    // Recompute the queue from the current multiplier on hits; when false, a
    // hit reuses the entry's stored ratio even if max_size_seen has grown.
    bool reratio_on_hit = true;
  };

  CampCache(std::uint64_t capacity_bytes, Precision precision);
  CampCache(std::uint64_t capacity_bytes, Precision precision, Options options);

  PolicyDecision request(const TraceRecord& record) override;
  bool contains(std::string_view key) const override;
  std::uint64_t resident_bytes() const override { return resident_; }
  std::uint64_t capacity() const override { return capacity_; }
  std::string_view name() const override { return "camp"; }
  std::uint64_t heap_visits() const override { return heap_.visits(); }
  std::size_t live_queue_count() const override { return queues_.size(); }
  void validate_invariants() const override;

  double offset() const { return offset_; }
  const RatioContext& ratio_context() const { return ctx_; }
  double priority_of(std::string_view key) const;        // H of a resident entry
  std::uint64_t ratio_of(std::string_view key) const;    // assigned rounded ratio

 private:
  using Heap = DaryHeap<CampPriority, std::uint64_t>;

  struct Entry {
    std::string key;
    std::uint64_t size;
    std::uint64_t cost;
    std::uint64_t ratio;  // as assigned at the last request
    double priority;
  };
  using EntryList = std::list<Entry>;

  struct Queue {
    EntryList entries;  // head = least recently requested
    Heap::Handle handle;
  };

  struct EntryRef {
    std::uint64_t ratio;
    EntryList::iterator it;
  };

  void set_offset(double value);
  // Unlinks the entry from its queue, fixing the queue's heap node (or
  // deleting the queue when it empties), and returns the entry.
  Entry detach(const EntryRef& ref);
  // Appends at the tail of the entry's ratio queue, creating the queue and
  // its heap node if needed, and refreshes the key index.
  void append(Entry entry);

  std::uint64_t capacity_;
  std::uint64_t resident_ = 0;
  double offset_ = 0;
  Options options_;
  RatioContext ctx_;
  Heap heap_;
  std::unordered_map<std::uint64_t, Queue> queues_;
  std::unordered_map<std::string, EntryRef, StringHash, std::equal_to<>> index_;
};

}  // namespace camp
