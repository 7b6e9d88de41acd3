#pragma once

#include "wakemod/mls.hpp"

#include <array>
#include <cstdint>
#include <span>

namespace wakemod {

inline constexpr int kAddressBits = 16;
inline constexpr int kPayloadBytes = 6;
inline constexpr int kPayloadBits = kPayloadBytes * 8;
inline constexpr int kChipsPerBit = 32;

// Chip rates the radio supports, in bit/s.
inline constexpr std::array<int, 8> kSupportedRates = {256,  512,  1024,  2048,
                                                       4096, 8192, 16384, 32768};
bool is_supported_rate(int rate_bps);

// Rate pair shared by sender and receiver: `ldr` clocks the preamble code,
// `hdr` the address and payload blocks. `address` is the 16-bit pattern a
// receiver wakes on. The constructor rejects unsupported rates, hdr < ldr
// and codes whose block size is not 32 chips.
struct RadioConfig {
  int ldr;
  int hdr;
  std::uint16_t address;
  MlsCode code;

  RadioConfig(int ldr, int hdr, std::uint16_t address, MlsCode code = default_mls());

  bool operator==(const RadioConfig&) const = default;
};

// Logical wake-up call. The air interface carries either no payload or one
// fixed 48-bit block, so a shorter payload is zero-padded to 6 bytes at
// construction; that is also what a host reads back from the receive FIFO,
// which keeps encode/decode an exact roundtrip.
class WucFrame {
 public:
  explicit WucFrame(std::uint16_t address);
  WucFrame(std::uint16_t address, std::span<const std::uint8_t> payload);

  std::uint16_t address() const { return address_; }
  bool has_payload() const { return has_payload_; }
  const std::array<std::uint8_t, kPayloadBytes>& payload() const { return payload_; }

  bool operator==(const WucFrame&) const = default;

 private:
  std::uint16_t address_;
  bool has_payload_ = false;
  std::array<std::uint8_t, kPayloadBytes> payload_{};
};

}  // namespace wakemod
