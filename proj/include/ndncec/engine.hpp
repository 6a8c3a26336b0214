#pragma once

#include "ndncec/errors.hpp"
#include "ndncec/time.hpp"

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

namespace ndncec {

// Deterministic discrete-event engine. Events at equal fire times execute
// in scheduling order (monotone sequence tie-break), so a given seed and
// config always replay the exact same trace.
class Engine {
public:
  using Action = std::function<void()>;

  SimTime now() const { return now_; }
  std::size_t pending() const { return queue_.size(); }

  void schedule(SimTime fire_at, Action action) {
    if (fire_at < now_)
      throw ConstraintError("event scheduled in the past (at " + std::to_string(fire_at) +
                            ", now " + std::to_string(now_) + ")");
    queue_.push(Event{fire_at, next_seq_++, std::move(action)});
  }

  void schedule_in(Duration delay, Action action) { schedule(now_ + delay, std::move(action)); }

  // Runs every event with fire_at <= horizon; time ends at the horizon even
  // if the queue drains early.
  void run_until(SimTime horizon) {
    while (!queue_.empty() && queue_.top().fire_at <= horizon)
      step();
    if (now_ < horizon) now_ = horizon;
  }

  void run_all() {
    while (!queue_.empty())
      step();
  }

  bool step() {
    if (queue_.empty())
      return false;
    Event ev = std::move(const_cast<Event&>(queue_.top()));
    queue_.pop();
    now_ = ev.fire_at;
    ev.action();
    return true;
  }

private:
  struct Event {
    SimTime fire_at;
    std::uint64_t seq;
    Action action;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
      return a.seq > b.seq;
    }
  };

  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
};

} // namespace ndncec
