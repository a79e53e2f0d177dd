#ifndef AGRSIM_EVENT_QUEUE_HPP
#define AGRSIM_EVENT_QUEUE_HPP

#include <cstddef>
#include <cstdint>
#include <list>
#include <memory>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "agrsim/payload.hpp"
#include "agrsim/types.hpp"

namespace agrsim {

struct ScheduledEvent {
  EventId id;
  VirtualTime fire_time;
  std::uint64_t seq = 0;
  AgentId target;
  Payload payload;
};

/// Strict total order over scheduled events: (fire_time, seq).
inline bool fires_before(const ScheduledEvent& a, const ScheduledEvent& b) {
  if (a.fire_time != b.fire_time) return a.fire_time < b.fire_time;
  return a.seq < b.seq;
}

/// Pending-event set ordered by (fire_time, seq).
///
/// Two independent implementations exist so that whole runs can be compared
/// digest-for-digest; any difference between them is a kernel bug.
class EventQueue {
 public:
  virtual ~EventQueue() = default;

  virtual void push(ScheduledEvent ev) = 0;
  /// Removes and returns the head. Requires !empty().
  virtual ScheduledEvent pop() = 0;
  /// Head of the queue. Requires !empty().
  virtual const ScheduledEvent& top() = 0;
  /// Removes a pending event; false if no such event is pending.
  virtual bool erase(EventId id) = 0;
  virtual bool empty() const = 0;
  virtual std::size_t size() const = 0;
};

/// Binary min-heap with lazy deletion of cancelled entries.
class BinaryHeapQueue final : public EventQueue {
 public:
  void push(ScheduledEvent ev) override;
  ScheduledEvent pop() override;
  const ScheduledEvent& top() override;
  bool erase(EventId id) override;
  bool empty() const override { return live_.empty(); }
  std::size_t size() const override { return live_.size(); }

 private:
  void purge_head();

  std::vector<ScheduledEvent> heap_;
  std::unordered_set<EventId> live_;
};

/// Doubly-linked list kept sorted on insertion; the oracle implementation.
class SortedListQueue final : public EventQueue {
 public:
  void push(ScheduledEvent ev) override;
  ScheduledEvent pop() override;
  const ScheduledEvent& top() override;
  bool erase(EventId id) override;
  bool empty() const override { return events_.empty(); }
  std::size_t size() const override { return events_.size(); }

 private:
  std::list<ScheduledEvent> events_;
};

enum class QueueKind { BinaryHeap, SortedList };

std::unique_ptr<EventQueue> make_queue(QueueKind kind);
std::string_view to_string(QueueKind kind);

}  // namespace agrsim

#endif  // AGRSIM_EVENT_QUEUE_HPP
