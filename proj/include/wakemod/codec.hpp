#pragma once

#include "wakemod/chip_stream.hpp"
#include "wakemod/frame.hpp"
#include "wakemod/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace wakemod {

// A decoded bit must match at least this fraction of its 32 chips against
// the spreading code (bit 1) or its complement (bit 0).
inline constexpr double kDefaultDetectThreshold = 0.8;

inline Rational chip_period(int rate_bps) { return {1, rate_bps}; }

// Exact on-air time of one wake-up call: 32 preamble chips at ldr, 16
// address bits of 32 chips at hdr, plus 48 payload bits at hdr when a
// payload block is present.
Rational frame_airtime(const RadioConfig& cfg, bool has_payload);

// Bit 1 is sent as the spreading code, bit 0 as its complement. The frame
// layout is preamble (one code block at ldr), address MSB-first, then the
// optional payload block byte 0 first, MSB-first within each byte.
ChipStream encode_frame(const WucFrame& frame, const RadioConfig& cfg);

// Fraction of the 32 chips starting at `offset` that match the spreading
// code when the stream is sampled at chip centers spaced 1/rate apart.
// 1.0 is a perfect code block, 0.0 a complemented one, noise sits near 0.5.
double code_correlation(const ChipStream& stream, const RadioConfig& cfg,
                        const Rational& offset, int rate_bps);

// Sliding-correlator receiver. Scans preamble offsets in steps of one ldr
// chip and locks onto the first offset whose correlation reaches
// `threshold`; each following bit decodes to whichever of code/complement
// matches more chips. Returns nullopt when no offset reaches the threshold,
// throws MalformedFrameError when a detected preamble is not followed by a
// complete address. A trailing partial payload block is ignored.
std::optional<WucFrame> decode_stream(const ChipStream& stream, const RadioConfig& cfg,
                                      double threshold = kDefaultDetectThreshold);

// Independently flips each chip's level with probability flip_prob.
// Deterministic for a given seed.
ChipStream chip_flip_noise(const ChipStream& stream, double flip_prob,
                           std::uint64_t seed);

// Chip-vector files: a small text format pinning the exact chip sequence an
// encoder must produce for a given config and frame, used as regression
// vectors and portable across implementations.
struct ChipVectorFile {
  int ldr = 0;
  int hdr = 0;
  std::uint16_t address = 0;
  std::vector<std::uint8_t> payload;  // empty = no payload block
  std::vector<int> taps;
  std::vector<std::uint8_t> chips;    // levels only; timing follows from the config

  RadioConfig config() const;
  WucFrame frame() const;
};

ChipVectorFile read_chip_vector(const std::filesystem::path& path);
void write_chip_vector(const std::filesystem::path& path, const ChipVectorFile& v);

}  // namespace wakemod
