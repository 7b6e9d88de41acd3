#include "wakemod/mls.hpp"

#include "wakemod/errors.hpp"

#include <algorithm>
#include <string>

namespace wakemod {

namespace {

std::string taps_to_string(const std::vector<int>& taps) {
  std::string s = "{";
  for (std::size_t i = 0; i < taps.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(taps[i]);
  }
  return s + "}";
}

}  // namespace

MlsCode generate_mls(int order, const std::vector<int>& taps, std::uint32_t seed) {
  if (order < 2 || order > 20)
    throw CodeError("LFSR order " + std::to_string(order) + " out of range [2,20]");

  std::vector<int> sorted = taps;
  std::sort(sorted.begin(), sorted.end(), std::greater<int>());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw CodeError("duplicate tap in " + taps_to_string(taps));
  for (int t : sorted)
    if (t < 1 || t > order)
      throw CodeError("tap " + std::to_string(t) + " outside [1," + std::to_string(order) + "]");
  if (sorted.empty() || sorted.front() != order)
    throw CodeError("taps " + taps_to_string(taps) + " must include the order " +
                    std::to_string(order));

  const std::uint32_t mask = (1u << order) - 1;
  if (seed == 0 || seed > mask)
    throw CodeError("seed must be a nonzero " + std::to_string(order) + "-bit register state");

  // Polynomial exponent t contributes the recurrence delay (order - t); the
  // constant term contributes delay `order`. Register bit i holds the output
  // from i+1 steps ago, so delay d reads bit d-1.
  std::vector<int> delays{order};
  for (int t : sorted)
    if (t != order) delays.push_back(order - t);

  auto step = [&](std::uint32_t reg) {
    std::uint32_t fb = 0;
    for (int d : delays) fb ^= (reg >> (d - 1)) & 1u;
    return ((reg << 1) | fb) & mask;
  };

  // Cycle length from the seed. A primitive polynomial walks all 2^order - 1
  // nonzero states; anything shorter means the taps are unusable.
  const int full_period = static_cast<int>(mask);
  int period = 0;
  std::uint32_t reg = seed;
  do {
    reg = step(reg);
    ++period;
  } while (reg != seed && period <= full_period);
  if (period != full_period)
    throw CodeError("taps " + taps_to_string(taps) + " give LFSR period " +
                    std::to_string(period) + ", expected " + std::to_string(full_period) +
                    ": polynomial is not primitive");

  MlsCode code;
  code.order = order;
  code.taps = sorted;
  code.chips.reserve(static_cast<std::size_t>(full_period) + 1);
  reg = seed;
  for (int i = 0; i < full_period; ++i) {
    code.chips.push_back(static_cast<std::uint8_t>((reg >> (order - 1)) & 1u));
    reg = step(reg);
  }
  code.chips.push_back(code.chips.front());
  return code;
}

const MlsCode& default_mls() {
  static const MlsCode code = generate_mls(5, {5, 3});
  return code;
}

}  // namespace wakemod
