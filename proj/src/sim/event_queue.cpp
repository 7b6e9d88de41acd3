#include "wakemod/sim/event_queue.hpp"

#include <array>
#include <memory>
#include <utility>

namespace wakemod::sim {

const std::string& event_kind_name(EventKind kind) {
  static const std::array<std::string, 8> names = {
      "command",        "sdn-low",        "chip-boundary", "preamble-detected",
      "frame-complete", "irq-assert",     "tx-complete",   "timer"};
  return names[static_cast<std::size_t>(kind)];
}

void EventQueue::schedule(const Rational& time, int device, EventKind kind,
                          std::string detail, Action action) {
  heap_.push(Entry{TraceRow{time, device, kind, std::move(detail)}, next_seq_++,
                   std::make_shared<Action>(std::move(action))});
}

EventQueue::Event EventQueue::pop() {
  Entry top = heap_.top();
  heap_.pop();
  return {std::move(top.row), std::move(*top.action)};
}

}  // namespace wakemod::sim
