#include "agrsim/event_queue.hpp"

#include <algorithm>
#include <stdexcept>

namespace agrsim {
namespace {

// std heap algorithms build a max-heap; invert the order to keep the earliest event on top.
struct FiresAfter {
  bool operator()(const ScheduledEvent& a, const ScheduledEvent& b) const { return fires_before(b, a); }
};

}  // namespace

void BinaryHeapQueue::push(ScheduledEvent ev) {
  live_.insert(ev.id);
  heap_.push_back(std::move(ev));
  std::push_heap(heap_.begin(), heap_.end(), FiresAfter{});
}

void BinaryHeapQueue::purge_head() {
  while (!heap_.empty() && !live_.contains(heap_.front().id)) {
    std::pop_heap(heap_.begin(), heap_.end(), FiresAfter{});
    heap_.pop_back();
  }
}

const ScheduledEvent& BinaryHeapQueue::top() {
  purge_head();
  if (heap_.empty()) throw std::logic_error("top() on empty event queue");
  return heap_.front();
}

ScheduledEvent BinaryHeapQueue::pop() {
  purge_head();
  if (heap_.empty()) throw std::logic_error("pop() on empty event queue");
  std::pop_heap(heap_.begin(), heap_.end(), FiresAfter{});
  ScheduledEvent ev = std::move(heap_.back());
  heap_.pop_back();
  live_.erase(ev.id);
  return ev;
}

bool BinaryHeapQueue::erase(EventId id) { return live_.erase(id) > 0; }

void SortedListQueue::push(ScheduledEvent ev) {
  // New events usually belong near the back, so scan from there.
  auto it = events_.end();
  while (it != events_.begin()) {
    auto prev = std::prev(it);
    if (!fires_before(ev, *prev)) break;
    it = prev;
  }
  events_.insert(it, std::move(ev));
}

const ScheduledEvent& SortedListQueue::top() {
  if (events_.empty()) throw std::logic_error("top() on empty event queue");
  return events_.front();
}

ScheduledEvent SortedListQueue::pop() {
  if (events_.empty()) throw std::logic_error("pop() on empty event queue");
  ScheduledEvent ev = std::move(events_.front());
  events_.pop_front();
  return ev;
}

bool SortedListQueue::erase(EventId id) {
  auto it = std::find_if(events_.begin(), events_.end(), [id](const ScheduledEvent& e) { return e.id == id; });
  if (it == events_.end()) return false;
  events_.erase(it);
  return true;
}

std::unique_ptr<EventQueue> make_queue(QueueKind kind) {
  switch (kind) {
    case QueueKind::BinaryHeap:
      return std::make_unique<BinaryHeapQueue>();
    case QueueKind::SortedList:
      return std::make_unique<SortedListQueue>();
  }
  throw std::invalid_argument("unknown queue kind");
}

std::string_view to_string(QueueKind kind) {
  return kind == QueueKind::BinaryHeap ? "binary-heap" : "sorted-list";
}

}  // namespace agrsim
