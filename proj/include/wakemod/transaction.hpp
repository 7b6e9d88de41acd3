#pragma once

#include "wakemod/frame.hpp"
#include "wakemod/power_tables.hpp"
#include "wakemod/rational.hpp"

#include <string>
#include <vector>

namespace wakemod {

// One row of a transaction cost breakdown. Radio phases carry the drawn
// power and energy = power * duration; fixed-cost operation rows carry the
// measured lump energy with power left at zero.
struct PhaseRow {
  std::string label;
  Rational duration_s;
  Rational power_w;
  Rational energy_j;
};

struct TransactionPart {
  Rational energy_j{0};
  Rational duration_s{0};
  std::vector<PhaseRow> breakdown;
};

// payload_bits selects the payload handling: 0 means no payload block, any
// value in [8, 48] occupies the full fixed-size 48-bit block on air (the
// FIFO always clocks out 6 bytes) and is billed as the 6-byte interrupt
// row on the receive side.
Rational wuc_airtime(const RadioConfig& cfg, int payload_bits);

// Host-commanded wake-up call: fixed command/ramp overhead followed by the
// transmission at the drawn power for `voltage_v`. Rates below 1024 bit/s
// are rejected here because the transmitter's auto-shutdown would corrupt
// the message.
TransactionPart sender_cost(const PowerModel& pm, const RadioConfig& cfg,
                            int payload_bits, const Rational& voltage_v);

// Receive side of the same wake-up call: preamble at the ldr idle/listen
// power, address (and payload) at the hdr power, then interrupt handling.
TransactionPart receiver_cost(const PowerModel& pm, const RadioConfig& cfg,
                              int payload_bits);

}  // namespace wakemod
