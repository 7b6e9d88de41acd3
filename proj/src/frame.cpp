#include "wakemod/frame.hpp"

#include "wakemod/errors.hpp"

#include <algorithm>
#include <string>

namespace wakemod {

bool is_supported_rate(int rate_bps) {
  return std::find(kSupportedRates.begin(), kSupportedRates.end(), rate_bps) !=
         kSupportedRates.end();
}

RadioConfig::RadioConfig(int ldr_, int hdr_, std::uint16_t address_, MlsCode code_)
    : ldr(ldr_), hdr(hdr_), address(address_), code(std::move(code_)) {
  if (!is_supported_rate(ldr))
    throw ConfigError("unsupported ldr " + std::to_string(ldr) + " bit/s");
  if (!is_supported_rate(hdr))
    throw ConfigError("unsupported hdr " + std::to_string(hdr) + " bit/s");
  if (hdr < ldr)
    throw ConfigError("hdr " + std::to_string(hdr) + " bit/s below ldr " +
                      std::to_string(ldr) + " bit/s");
  if (static_cast<int>(code.chips.size()) != kChipsPerBit)
    throw ConfigError("spreading code has " + std::to_string(code.chips.size()) +
                      " chips, radio format needs " + std::to_string(kChipsPerBit));
}

WucFrame::WucFrame(std::uint16_t address) : address_(address) {}

WucFrame::WucFrame(std::uint16_t address, std::span<const std::uint8_t> payload)
    : address_(address) {
  if (payload.size() > kPayloadBytes)
    throw ConfigError("payload of " + std::to_string(payload.size()) +
                      " bytes exceeds the " + std::to_string(kPayloadBytes) +
                      "-byte FIFO block");
  if (!payload.empty()) {
    has_payload_ = true;
    std::copy(payload.begin(), payload.end(), payload_.begin());
  }
}

}  // namespace wakemod
