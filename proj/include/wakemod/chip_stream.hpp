#pragma once

#include "wakemod/rational.hpp"

#include <cstddef>
#include <vector>

namespace wakemod {

struct Chip {
  bool on;
  Rational duration;

  bool operator==(const Chip&) const = default;
};

// On-air OOK waveform: a run of timed carrier-on / carrier-off chips.
class ChipStream {
 public:
  ChipStream() = default;

  void push(bool on, const Rational& duration);  // duration must be > 0

  std::size_t size() const { return chips_.size(); }
  const Chip& operator[](std::size_t i) const { return chips_[i]; }
  const std::vector<Chip>& chips() const { return chips_; }
  const Rational& total_duration() const { return total_; }

  // Carrier level at time t; off before 0 and from total_duration() on.
  // Chip i covers [end(i-1), end(i)).
  bool level_at(const Rational& t) const;

  bool operator==(const ChipStream& other) const { return chips_ == other.chips_; }

 private:
  std::vector<Chip> chips_;
  std::vector<Rational> ends_;  // cumulative end time of each chip
  Rational total_{0};
};

}  // namespace wakemod
