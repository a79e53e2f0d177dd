#include "agrsim/kernel.hpp"

#include <limits>

namespace agrsim {

HandlerFault::HandlerFault(FiredEvent event, const std::string& cause)
    : std::runtime_error("handler fault at event " + std::to_string(event.id.value) + " (t=" +
                         std::to_string(event.fire_time.ticks) + ", target=" + std::to_string(event.target.value) +
                         ", tag=" + event.tag + "): " + cause),
      event_(std::move(event)) {}

Kernel::Kernel(std::uint64_t seed, QueueKind queue) : seed_(seed), queue_(make_queue(queue)) {}

EventId Kernel::schedule(AgentId target, Payload payload, Duration delay) {
  if (aborted_) throw SchedulingError("cannot schedule: run was aborted");
  if (delay > std::numeric_limits<std::uint64_t>::max() - now_.ticks) {
    throw SchedulingError("fire time overflows virtual clock (now=" + std::to_string(now_.ticks) +
                          ", delay=" + std::to_string(delay) + ")");
  }
  const EventId id{next_event_id_++};
  queue_->push(ScheduledEvent{id, VirtualTime{now_.ticks + delay}, next_seq_++, target, std::move(payload)});
  return id;
}

bool Kernel::cancel(EventId id) { return queue_->erase(id); }

std::optional<VirtualTime> Kernel::next_fire_time() const {
  if (queue_->empty()) return std::nullopt;
  return queue_->top().fire_time;
}

std::optional<FiredEvent> Kernel::step() {
  if (aborted_) throw SchedulingError("cannot step: run was aborted");
  if (queue_->empty()) return std::nullopt;

  ScheduledEvent ev = queue_->pop();
  now_ = ev.fire_time;
  ++fired_;
  FiredEvent record{ev.id, ev.fire_time, ev.seq, ev.target, std::string(ev.payload.tag())};
  for (const auto& observer : observers_) observer(record);

  if (dispatcher_) {
    dispatching_ = true;
    try {
      dispatcher_(ev);
    } catch (const std::exception& e) {
      dispatching_ = false;
      aborted_ = true;
      throw HandlerFault(record, e.what());
    }
    dispatching_ = false;
  }
  return record;
}

std::uint64_t Kernel::run_until(VirtualTime stop) {
  if (stop < now_) throw std::invalid_argument("run_until: stop time is in the past");
  std::uint64_t executed = 0;
  while (!queue_->empty() && queue_->top().fire_time <= stop) {
    step();
    ++executed;
  }
  now_ = stop;
  return executed;
}

std::uint64_t Kernel::run(std::uint64_t max_events) {
  std::uint64_t executed = 0;
  while (executed < max_events && step()) ++executed;
  return executed;
}

void Kernel::set_global(const std::string& key, GlobalValue value) {
  if (!dispatching_) throw std::logic_error("global state may only change during event execution");
  globals_.insert_or_assign(key, std::move(value));
}

const GlobalValue* Kernel::global(const std::string& key) const {
  auto it = globals_.find(key);
  return it == globals_.end() ? nullptr : &it->second;
}

}  // namespace agrsim
