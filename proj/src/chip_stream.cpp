#include "wakemod/chip_stream.hpp"

#include "wakemod/errors.hpp"

#include <algorithm>

namespace wakemod {

void ChipStream::push(bool on, const Rational& duration) {
  if (duration <= Rational(0)) throw ConfigError("chip duration must be positive");
  total_ += duration;
  chips_.push_back({on, duration});
  ends_.push_back(total_);
}

bool ChipStream::level_at(const Rational& t) const {
  if (t < Rational(0) || t >= total_) return false;
  auto it = std::upper_bound(ends_.begin(), ends_.end(), t);
  return chips_[static_cast<std::size_t>(it - ends_.begin())].on;
}

}  // namespace wakemod
