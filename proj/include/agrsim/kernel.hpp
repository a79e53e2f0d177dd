#ifndef AGRSIM_KERNEL_HPP
#define AGRSIM_KERNEL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "agrsim/event_queue.hpp"
#include "agrsim/payload.hpp"
#include "agrsim/rng.hpp"
#include "agrsim/trace.hpp"
#include "agrsim/types.hpp"

namespace agrsim {

class SchedulingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A handler threw while processing an event; the run is aborted.
class HandlerFault : public std::runtime_error {
 public:
  HandlerFault(FiredEvent event, const std::string& cause);
  const FiredEvent& event() const { return event_; }

 private:
  FiredEvent event_;
};

using GlobalValue = std::variant<std::int64_t, double, std::string>;

/// Discrete-event engine: virtual clock, pending-event queue, and seeded RNG streams.
///
/// Events fire in (fire_time, seq) order, seq being a per-run insertion
/// counter, so events scheduled for the same tick run FIFO. Dispatch is
/// run-to-completion: an event scheduled from inside a handler, even with
/// zero delay, fires on a later step.
///
/// A kernel is used from one thread at a time.
class Kernel {
 public:
  using Dispatcher = std::function<void(const ScheduledEvent&)>;
  using Observer = std::function<void(const FiredEvent&)>;

  explicit Kernel(std::uint64_t seed, QueueKind queue = QueueKind::BinaryHeap);

  /// Enqueues an event at now + delay. Throws SchedulingError on overflow or
  /// after the run has been aborted.
  EventId schedule(AgentId target, Payload payload, Duration delay);

  /// True iff the event was pending; it will then never fire.
  bool cancel(EventId id);

  /// Fires the head event, if any.
  std::optional<FiredEvent> step();

  /// Fires every event with fire_time <= stop, then sets now to stop.
  std::uint64_t run_until(VirtualTime stop);

  /// Fires events until the queue is empty or max_events have fired.
  std::uint64_t run(std::uint64_t max_events = UINT64_MAX);

  VirtualTime now() const { return now_; }
  std::uint64_t seed() const { return seed_; }
  RngStream derive_rng(AgentId agent) const { return RngStream(seed_, agent.value); }

  bool idle() const { return queue_->empty(); }
  std::size_t pending() const { return queue_->size(); }
  std::optional<VirtualTime> next_fire_time() const;
  std::uint64_t fired_count() const { return fired_; }
  bool aborted() const { return aborted_; }
  bool dispatching() const { return dispatching_; }

  void set_dispatcher(Dispatcher d) { dispatcher_ = std::move(d); }
  void add_observer(Observer o) { observers_.push_back(std::move(o)); }

  /// Model-level shared state. Writes are only legal while an event is being dispatched.
  void set_global(const std::string& key, GlobalValue value);
  const GlobalValue* global(const std::string& key) const;
  const std::map<std::string, GlobalValue, std::less<>>& globals() const { return globals_; }

 private:
  std::uint64_t seed_;
  std::unique_ptr<EventQueue> queue_;
  VirtualTime now_{};
  std::uint64_t next_seq_ = 0;
  std::uint64_t next_event_id_ = 1;
  std::uint64_t fired_ = 0;
  bool aborted_ = false;
  bool dispatching_ = false;
  Dispatcher dispatcher_;
  std::vector<Observer> observers_;
  std::map<std::string, GlobalValue, std::less<>> globals_;
};

}  // namespace agrsim

#endif  // AGRSIM_KERNEL_HPP
