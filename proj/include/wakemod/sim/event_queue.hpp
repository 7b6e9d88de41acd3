#pragma once

#include "wakemod/rational.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace wakemod::sim {

enum class EventKind {
  Command,
  SdnLow,
  ChipBoundary,
  PreambleDetected,
  FrameComplete,
  IrqAssert,
  TxComplete,
  Timer,
};

const std::string& event_kind_name(EventKind kind);

struct TraceRow {
  Rational time;
  int device = -1;
  EventKind kind = EventKind::Timer;
  std::string detail;

  bool operator==(const TraceRow&) const = default;
};

// Time-ordered event queue. Ties are broken by device id, then by insertion
// order, so runs with the same schedule replay identically.
class EventQueue {
 public:
  using Action = std::function<void()>;

  void schedule(const Rational& time, int device, EventKind kind,
                std::string detail, Action action);

  bool empty() const { return heap_.empty(); }
  const Rational& next_time() const { return heap_.top().row.time; }

  struct Event {
    TraceRow row;
    Action action;
  };
  Event pop();

 private:
  struct Entry {
    TraceRow row;
    std::uint64_t seq;
    std::shared_ptr<Action> action;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.row.time != b.row.time) return a.row.time > b.row.time;
      if (a.row.device != b.row.device) return a.row.device > b.row.device;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace wakemod::sim
