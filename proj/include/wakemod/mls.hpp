#pragma once

#include <cstdint>
#include <vector>

namespace wakemod {

// Spreading code used to turn one logical bit into a block of on-air chips.
// `taps` holds the exponents of the LFSR feedback polynomial, so {5, 3}
// stands for x^5 + x^3 + 1. chips has length 2^order: the full period of
// 2^order - 1 chips plus one pad chip repeating chips[0], which keeps the
// block size a power of two.
struct MlsCode {
  int order = 0;
  std::vector<int> taps;
  std::vector<std::uint8_t> chips;

  bool operator==(const MlsCode&) const = default;
};

// Runs a Fibonacci LFSR from `seed` (all stages set by default) and returns
// the spread code. The register cycle length is measured first; taps whose
// polynomial is not primitive do not reach the full period and are rejected
// with CodeError.
MlsCode generate_mls(int order, const std::vector<int>& taps,
                     std::uint32_t seed = 0x1f);

// The code every radio uses unless configured otherwise: order 5,
// x^5 + x^3 + 1, all-ones seed, 32 chips.
const MlsCode& default_mls();

}  // namespace wakemod
