#include "camp/gds_cache.hpp"

#include <cmath>
#include <stdexcept>

namespace camp {

// Offsets and priorities are doubles holding integer-valued sums; past this
// bound they would stop being exact.
static constexpr double kMaxExactOffset = 4503599627370496.0;  // 2^52

GdsCache::GdsCache(std::uint64_t capacity_bytes, unsigned heap_arity)
    : capacity_(capacity_bytes), heap_(heap_arity) {
  if (capacity_ == 0) throw std::invalid_argument("cache capacity must be >= 1 byte");
}

void GdsCache::set_offset(double value) {
  if (value < offset_) throw std::logic_error("gds: offset decreased");
  if (value >= kMaxExactOffset) throw std::overflow_error("gds: offset left the exact-integer range");
  offset_ = value;
}

PolicyDecision GdsCache::request(const TraceRecord& record) {
  validate_record(record);
  ++seq_;
  ctx_.observe_size(record.size);

  if (auto it = entries_.find(record.key); it != entries_.end()) {
    Entry& entry = it->second;
    if (entry.size != record.size || entry.cost != record.cost) ++mismatch_warnings_;
    // L <- min H over the other entries, then H(p) <- L + ratio(p).
    if (entries_.size() > 1) {
      if (heap_.is_min(entry.handle)) {
        heap_.pop_min();
        set_offset(heap_.peek_min().first.h);
        entry.ratio = integerize(entry.cost, entry.size, ctx_);
        entry.h = offset_ + static_cast<double>(entry.ratio);
        entry.handle = heap_.push(GdsPriority{entry.h, entry.ratio, seq_}, entry.id);
      } else {
        set_offset(heap_.peek_min().first.h);
        entry.ratio = integerize(entry.cost, entry.size, ctx_);
        entry.h = offset_ + static_cast<double>(entry.ratio);
        heap_.update_priority(entry.handle, GdsPriority{entry.h, entry.ratio, seq_});
      }
    } else {
      // Sole resident entry: nothing else to take the minimum over.
      entry.ratio = integerize(entry.cost, entry.size, ctx_);
      entry.h = offset_ + static_cast<double>(entry.ratio);
      heap_.update_priority(entry.handle, GdsPriority{entry.h, entry.ratio, seq_});
    }
    return {Outcome::kHit, {}};
  }

  if (record.size > capacity_) return {Outcome::kUncacheable, {}};

  PolicyDecision decision{Outcome::kMiss, {}};
  while (capacity_ - resident_ < record.size) {
    auto [priority, id] = heap_.pop_min();
    set_offset(priority.h);
    auto id_it = key_by_id_.find(id);
    auto victim = entries_.find(id_it->second);
    resident_ -= victim->second.size;
    decision.evicted.push_back(std::move(id_it->second));
    entries_.erase(victim);
    key_by_id_.erase(id_it);
  }

  Entry entry;
  entry.size = record.size;
  entry.cost = record.cost;
  entry.ratio = integerize(record.cost, record.size, ctx_);
  entry.id = next_id_++;
  entry.h = offset_ + static_cast<double>(entry.ratio);
  entry.handle = heap_.push(GdsPriority{entry.h, entry.ratio, seq_}, entry.id);
  key_by_id_.emplace(entry.id, record.key);
  resident_ += record.size;
  entries_.emplace(record.key, entry);
  return decision;
}

bool GdsCache::contains(std::string_view key) const {
  return entries_.find(key) != entries_.end();
}

double GdsCache::priority_of(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw std::out_of_range("gds: key not resident");
  return it->second.h;
}

void GdsCache::validate_invariants() const {
  if (heap_.size() != entries_.size() || key_by_id_.size() != entries_.size())
    throw std::logic_error("gds: entry registries out of sync");
  std::uint64_t total = 0;
  for (const auto& [key, entry] : entries_) {
    total += entry.size;
    if (entry.h < offset_ || entry.h > offset_ + static_cast<double>(entry.ratio))
      throw std::logic_error("gds: entry priority outside [L, L + ratio]");
    if (heap_.priority_of(entry.handle).h != entry.h)
      throw std::logic_error("gds: heap node disagrees with entry priority");
    auto id_it = key_by_id_.find(entry.id);
    if (id_it == key_by_id_.end() || id_it->second != key)
      throw std::logic_error("gds: id registry out of sync");
  }
  if (total != resident_) throw std::logic_error("gds: resident byte counter out of sync");
  if (resident_ > capacity_) throw std::logic_error("gds: resident bytes exceed capacity");
  heap_.check_consistency();
}

}  // namespace camp
