#include "wakemod/transaction.hpp"

#include "wakemod/codec.hpp"
#include "wakemod/errors.hpp"

#include <string>

namespace wakemod {

namespace {

void check_payload_bits(int payload_bits) {
  if (payload_bits == 0) return;
  if (payload_bits < 8 || payload_bits > kPayloadBits)
    throw ConfigError("payload of " + std::to_string(payload_bits) +
                      " bits outside 8.." + std::to_string(kPayloadBits));
}

void add_row(TransactionPart& part, PhaseRow row) {
  part.energy_j += row.energy_j;
  part.duration_s += row.duration_s;
  part.breakdown.push_back(std::move(row));
}

}  // namespace

Rational wuc_airtime(const RadioConfig& cfg, int payload_bits) {
  check_payload_bits(payload_bits);
  return frame_airtime(cfg, payload_bits > 0);
}

TransactionPart sender_cost(const PowerModel& pm, const RadioConfig& cfg,
                            int payload_bits, const Rational& voltage_v) {
  check_payload_bits(payload_bits);
  if (cfg.ldr < 1024 || cfg.hdr < 1024)
    throw AutoShutdownRiskError(
        "transmitting below 1024 bit/s triggers the transmitter auto-shutdown "
        "and corrupts the message");

  TransactionPart part;
  const AuxOpTable::Cost& overhead = pm.aux.at(AuxOp::SendWucOverhead);
  add_row(part, {aux_op_name(AuxOp::SendWucOverhead), overhead.duration_s,
                 Rational(0), overhead.energy_j});

  const TxTable::Row tx = pm.tx.at(voltage_v);
  const Rational airtime = wuc_airtime(cfg, payload_bits);
  add_row(part, {"tx (" + decimal_string(voltage_v) + " V)", airtime,
                 tx.consumption_w, tx.consumption_w * airtime});
  return part;
}

TransactionPart receiver_cost(const PowerModel& pm, const RadioConfig& cfg,
                              int payload_bits) {
  check_payload_bits(payload_bits);

  TransactionPart part;
  const Rational preamble(kChipsPerBit, cfg.ldr);
  const Rational& p_ldr = pm.idle.power_w(cfg.ldr);
  add_row(part, {"preamble listen", preamble, p_ldr, p_ldr * preamble});

  const Rational address(kAddressBits * kChipsPerBit, cfg.hdr);
  const Rational& p_hdr = pm.idle.power_w(cfg.hdr);
  add_row(part, {"address decode", address, p_hdr, p_hdr * address});

  if (payload_bits > 0) {
    const Rational payload(kPayloadBits * kChipsPerBit, cfg.hdr);
    add_row(part, {"payload decode", payload, p_hdr, p_hdr * payload});
  }

  const AuxOp irq = payload_bits > 0 ? AuxOp::IrqPayload6 : AuxOp::IrqNoPayload;
  const AuxOpTable::Cost& cost = pm.aux.at(irq);
  add_row(part, {aux_op_name(irq), cost.duration_s, Rational(0), cost.energy_j});
  return part;
}

}  // namespace wakemod
