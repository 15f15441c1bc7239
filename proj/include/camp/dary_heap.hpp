#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace camp {

// Implicit d-ary min-heap with stable, generation-checked handles and a
// node-visit counter. A visit is one priority comparison touching a stored
// node, plus one for the node an operation starts from; peek_min counts the
// root. Payloads must be unique while live (hashable and equality
// comparable); priorities need operator<. Ties between equal priorities are
// left to the current array layout.
template <typename Priority, typename Payload>
class DaryHeap {
 public:
  struct Handle {
    std::uint32_t index = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t generation = 0;
  };

  explicit DaryHeap(unsigned arity = 8) : arity_(arity) {
    if (arity_ < 2) throw std::invalid_argument("heap arity must be >= 2");
  }

  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }
  unsigned arity() const { return arity_; }
  std::uint64_t visits() const { return visits_; }

  Handle push(const Priority& priority, const Payload& payload) {
    if (payload_to_handle_.count(payload) != 0)
      throw std::invalid_argument("heap push: payload already present");
    const std::uint32_t handle_index = alloc_handle();
    const std::size_t slot = nodes_.size();
    nodes_.push_back(Node{priority, payload, handle_index});
    handles_[handle_index].slot = slot;
    payload_to_handle_.emplace(payload, handle_index);
    ++visits_;  // the new node
    sift_up(slot);
    return Handle{handle_index, handles_[handle_index].generation};
  }

  std::pair<Priority, Payload> peek_min() const {
    if (nodes_.empty()) throw std::out_of_range("heap peek_min: empty heap");
    ++visits_;
    return {nodes_[0].priority, nodes_[0].payload};
  }

  std::pair<Priority, Payload> pop_min() {
    if (nodes_.empty()) throw std::out_of_range("heap pop_min: empty heap");
    ++visits_;
    std::pair<Priority, Payload> out{nodes_[0].priority, nodes_[0].payload};
    erase_slot(0);
    return out;
  }

  void update_priority(Handle h, const Priority& priority) {
    const std::size_t slot = slot_of(h);
    ++visits_;
    nodes_[slot].priority = priority;
    if (sift_up(slot) == slot) sift_down(slot);
  }

  void remove(Handle h) {
    const std::size_t slot = slot_of(h);
    ++visits_;
    erase_slot(slot);
  }

  bool is_min(Handle h) const { return slot_of(h) == 0; }
  const Priority& priority_of(Handle h) const { return nodes_[slot_of(h)].priority; }

  // Uncounted inspection for invariant checks and tests; keeps visit counts
  // limited to the algorithmic operations above.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const Node& node : nodes_) fn(node.priority, node.payload);
  }

  // Throws std::logic_error if the heap order or the handle/payload
  // registries are inconsistent.
  void check_consistency() const {
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      const std::size_t parent = (i - 1) / arity_;
      if (nodes_[i].priority < nodes_[parent].priority)
        throw std::logic_error("heap order violated");
    }
    if (payload_to_handle_.size() != nodes_.size())
      throw std::logic_error("payload registry size mismatch");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& node = nodes_[i];
      if (node.handle >= handles_.size() || handles_[node.handle].slot != i)
        throw std::logic_error("handle registry out of sync");
      auto it = payload_to_handle_.find(node.payload);
      if (it == payload_to_handle_.end() || it->second != node.handle)
        throw std::logic_error("payload registry out of sync");
    }
  }

 private:
  static constexpr std::size_t kDeadSlot = std::numeric_limits<std::size_t>::max();

  struct Node {
    Priority priority;
    Payload payload;
    std::uint32_t handle;
  };
  struct HandleSlot {
    std::size_t slot = kDeadSlot;
    std::uint32_t generation = 0;
  };

  std::size_t slot_of(Handle h) const {
    if (h.index >= handles_.size()) throw std::invalid_argument("stale heap handle");
    const HandleSlot& rec = handles_[h.index];
    if (rec.slot == kDeadSlot || rec.generation != h.generation)
      throw std::invalid_argument("stale heap handle");
    return rec.slot;
  }

  std::uint32_t alloc_handle() {
    if (!free_handles_.empty()) {
      const std::uint32_t idx = free_handles_.back();
      free_handles_.pop_back();
      return idx;
    }
    handles_.push_back(HandleSlot{});
    return static_cast<std::uint32_t>(handles_.size() - 1);
  }

  void free_handle(std::uint32_t idx) {
    handles_[idx].slot = kDeadSlot;
    ++handles_[idx].generation;
    free_handles_.push_back(idx);
  }

  void swap_slots(std::size_t a, std::size_t b) {
    std::swap(nodes_[a], nodes_[b]);
    handles_[nodes_[a].handle].slot = a;
    handles_[nodes_[b].handle].slot = b;
  }

  std::size_t sift_up(std::size_t slot) {
    while (slot > 0) {
      const std::size_t parent = (slot - 1) / arity_;
      ++visits_;
      if (nodes_[slot].priority < nodes_[parent].priority) {
        swap_slots(slot, parent);
        slot = parent;
      } else {
        break;
      }
    }
    return slot;
  }

  std::size_t sift_down(std::size_t slot) {
    for (;;) {
      const std::size_t first = slot * arity_ + 1;
      if (first >= nodes_.size()) return slot;
      const std::size_t last = std::min(first + arity_, nodes_.size());
      visits_ += last - first;
      std::size_t best = first;
      for (std::size_t c = first + 1; c < last; ++c)
        if (nodes_[c].priority < nodes_[best].priority) best = c;
      if (nodes_[best].priority < nodes_[slot].priority) {
        swap_slots(slot, best);
        slot = best;
      } else {
        return slot;
      }
    }
  }

  void erase_slot(std::size_t slot) {
    payload_to_handle_.erase(nodes_[slot].payload);
    free_handle(nodes_[slot].handle);
    const std::size_t last = nodes_.size() - 1;
    if (slot != last) {
      nodes_[slot] = std::move(nodes_[last]);
      handles_[nodes_[slot].handle].slot = slot;
      nodes_.pop_back();
      if (sift_up(slot) == slot) sift_down(slot);
    } else {
      nodes_.pop_back();
    }
  }

  unsigned arity_;
  mutable std::uint64_t visits_ = 0;
  std::vector<Node> nodes_;
  std::vector<HandleSlot> handles_;
  std::vector<std::uint32_t> free_handles_;
  std::unordered_map<Payload, std::uint32_t> payload_to_handle_;
};

}  // namespace camp
