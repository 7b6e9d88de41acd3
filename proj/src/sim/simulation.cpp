#include "wakemod/sim/simulation.hpp"

#include "wakemod/errors.hpp"
#include "wakemod/transaction.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

namespace wakemod::sim {

namespace {

std::string hex_address(std::uint16_t address) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%04X", address);
  return buf;
}

Rational longest_off_run(const ChipStream& stream) {
  Rational best(0);
  Rational run(0);
  for (const Chip& c : stream.chips()) {
    if (c.on) {
      run = Rational(0);
    } else {
      run += c.duration;
      if (run > best) best = run;
    }
  }
  return best;
}

}  // namespace

Simulation::Simulation(PowerModel pm, LinkParams link, SimOptions options,
                       std::uint64_t seed)
    : pm_(std::move(pm)), link_(link), options_(options), rng_(seed) {
  if (options_.chip_flip_prob < 0.0 || options_.chip_flip_prob > 1.0)
    throw ConfigError("chip flip probability must lie in [0, 1]");
  if (!(options_.detect_threshold > 0.5) || !(options_.detect_threshold <= 1.0))
    throw ConfigError("detect threshold must lie in (0.5, 1]");
}

int Simulation::add_device(double position_m) {
  Device d;
  d.id = device_count();
  d.position_m = position_m;
  devices_.push_back(std::move(d));
  return devices_.back().id;
}

Device& Simulation::checked(int id) {
  if (id < 0 || id >= device_count())
    throw SimError("unknown device " + std::to_string(id));
  return devices_[static_cast<std::size_t>(id)];
}

Device& Simulation::device(int id) { return checked(id); }

const Device& Simulation::device(int id) const {
  return const_cast<Simulation*>(this)->checked(id);
}

void Simulation::schedule_command(const Rational& time, int device, HostCommand cmd) {
  if (time < clock_) throw SimError("scheduling in the past");
  checked(device);
  // The SDN pulse precedes the command; same time, earlier insertion.
  queue_.schedule(time, device, EventKind::SdnLow, "",
                  [this, device] { devices_[static_cast<std::size_t>(device)].sdn_low = true; });
  std::string name = host_command_name(cmd);
  queue_.schedule(time, device, EventKind::Command, std::move(name),
                  [this, device, cmd = std::move(cmd)] { host_command(device, cmd); });
}

void Simulation::schedule_timer(const Rational& time, int device, std::string detail) {
  if (time < clock_) throw SimError("scheduling in the past");
  if (device >= 0) checked(device);
  queue_.schedule(time, device, EventKind::Timer, std::move(detail), [] {});
}

void Simulation::schedule_system_reset(const Rational& time, int device) {
  if (time < clock_) throw SimError("scheduling in the past");
  checked(device);
  queue_.schedule(time, device, EventKind::Timer, "system-reset-wake", [this, device] {
    Device& d = devices_[static_cast<std::size_t>(device)];
    if (clock_ < d.busy_until) return;  // already active; nothing to wake
    // Wakes, finds no pending work, returns to shutdown. The energy of this
    // path is below the published figures' resolution.
    d.busy_until = clock_ + kSystemResetWakeTime;
    queue_.schedule(d.busy_until, device, EventKind::Timer, "system-reset-shutdown",
                    [] {});
  });
}

void Simulation::pull_sdn_low(int device) { checked(device).sdn_low = true; }

void Simulation::settle(Device& d, const Rational& at) {
  if (d.wur == WurState::IdleListen && d.config) {
    d.ledger.set_state(at, "idle-listen@" + std::to_string(d.config->ldr),
                       pm_.idle.power_w(d.config->ldr));
  } else {
    d.ledger.set_state(at, "shutdown", Rational(0));
  }
}

void Simulation::begin_host_window(Device& d, AuxOp op) {
  const AuxOpTable::Cost& cost = pm_.aux.at(op);
  const Rational end = clock_ + cost.duration_s;
  d.mcu = McuState::ServingHost;
  d.busy_until = end;
  d.ledger.set_state(clock_, "cmd:" + aux_op_name(op), Rational(0));
  d.ledger.add_lump(clock_, aux_op_name(op), cost.energy_j);
  const int id = d.id;
  queue_.schedule(end, id, EventKind::Timer, "cmd-complete:" + aux_op_name(op),
                  [this, id] {
                    Device& dev = devices_[static_cast<std::size_t>(id)];
                    dev.mcu = McuState::Shutdown;
                    // Listening resumes only at rates with a published idle
                    // figure; the radio still transmits at the others.
                    if (dev.config && pm_.idle.rows().count(dev.config->ldr))
                      dev.wur = WurState::IdleListen;
                    settle(dev, clock_);
                  });
}

CommandResponse Simulation::host_command(int id, const HostCommand& cmd) {
  Device& d = checked(id);
  if (!d.sdn_low)
    throw NoResponseError("device " + std::to_string(id) +
                          ": command with SDN high gets no response");
  if (clock_ < d.busy_until)
    throw SimError("device " + std::to_string(id) + " is mid-transaction until " +
                   decimal_string(d.busy_until) + " s");
  d.sdn_low = false;  // one command per SDN pulse

  CommandResponse resp;
  if (std::holds_alternative<WhoAmI>(cmd)) {
    resp.identity = kModuleIdentity;
    begin_host_window(d, AuxOp::WhoAmI);
  } else if (const auto* setup = std::get_if<SetupWuR>(&cmd)) {
    d.config = setup->config;
    d.wur = WurState::Suspended;  // reconfiguring; listening resumes on completion
    begin_host_window(d, AuxOp::SetupWuR);
  } else if (const auto* send = std::get_if<SendWuC>(&cmd)) {
    do_send_wuc(d, *send);
  } else {
    // Empty backup registers are a valid answer, not an error.
    resp.reason = d.backup;
    d.irq_line = false;
    begin_host_window(d, AuxOp::IrqReason);
  }
  return resp;
}

void Simulation::do_send_wuc(Device& d, const SendWuC& cmd) {
  if (!d.config)
    throw SimError("device " + std::to_string(d.id) + " has no radio config; SetupWuR first");
  const RadioConfig& cfg = *d.config;
  const bool slow = cfg.ldr < 1024 || cfg.hdr < 1024;
  if (slow && !options_.corruption_mode)
    throw AutoShutdownRiskError(
        "transmitting below 1024 bit/s triggers the transmitter auto-shutdown "
        "and corrupts the message");

  // Resolve everything fallible before touching state.
  const TxTable::Row tx = pm_.tx.at(cmd.voltage_v);
  const AuxOpTable::Cost& overhead = pm_.aux.at(AuxOp::SendWucOverhead);
  const WucFrame frame = cmd.payload.empty()
                             ? WucFrame(cmd.address)
                             : WucFrame(cmd.address, cmd.payload);
  const ChipStream stream = encode_frame(frame, cfg);
  const bool corrupted = slow && longest_off_run(stream) > kTxAutoShutdownHoldoff;

  const Rational t0 = clock_;
  const Rational t1 = t0 + overhead.duration_s;
  const Rational t2 = t1 + stream.total_duration();
  d.mcu = McuState::ServingHost;
  d.tx = TxState::RampUp;
  d.busy_until = t2;
  d.ledger.set_state(t0, "cmd:SendWuC", Rational(0));
  d.ledger.add_lump(t0, aux_op_name(AuxOp::SendWucOverhead), overhead.energy_j);

  const int sender = d.id;
  const Rational tx_power_w = tx.consumption_w;
  const std::string tx_state = "tx@" + decimal_string(cmd.voltage_v) + "V";
  queue_.schedule(t1, sender, EventKind::ChipBoundary, "stream-start",
                  [this, sender, tx_power_w, tx_state, corrupted] {
                    Device& dev = devices_[static_cast<std::size_t>(sender)];
                    dev.tx = corrupted ? TxState::AutoShutdownPending
                                       : TxState::Transmitting;
                    dev.rf = RfBranch::Tx;
                    dev.ledger.set_state(clock_, tx_state, tx_power_w);
                  });
  queue_.schedule(t2, sender, EventKind::TxComplete, corrupted ? "corrupted" : "",
                  [this, sender] {
                    Device& dev = devices_[static_cast<std::size_t>(sender)];
                    dev.tx = TxState::Shutdown;
                    dev.rf = RfBranch::Rx;
                    dev.mcu = McuState::Shutdown;
                    settle(dev, clock_);
                  });

  // Link verdicts are drawn now, in device order, so a run is a pure
  // function of (scenario, seed).
  const double tx_dbm = to_double(tx.tx_power_dbm);
  for (Device& rx : devices_) {
    if (rx.id == sender || !rx.config) continue;
    bool delivered = false;
    if (!corrupted) {
      switch (options_.link_mode) {
        case LinkMode::Forced:
        case LinkMode::ChipFlip:
          delivered = true;
          break;
        case LinkMode::Bernoulli: {
          const double dist = std::max(std::abs(rx.position_m - d.position_m),
                                       link_.reference_distance_m);
          delivered = uniform01(rng_) < pdr_at_distance(dist, tx_dbm, link_);
          break;
        }
      }
    }
    if (!delivered) continue;
    ChipStream arriving = options_.link_mode == LinkMode::ChipFlip
                              ? chip_flip_noise(stream, options_.chip_flip_prob, rng_())
                              : stream;
    const int rx_id = rx.id;
    queue_.schedule(t1, rx_id, EventKind::ChipBoundary, "stream-arrival",
                    [this, rx_id, arriving = std::move(arriving)] {
                      begin_receive(devices_[static_cast<std::size_t>(rx_id)], arriving);
                    });
  }
}

void Simulation::wur_receive(int id, const ChipStream& stream, bool delivered) {
  Device& d = checked(id);
  if (!d.config)
    throw SimError("device " + std::to_string(id) + " has no radio config; SetupWuR first");
  if (!delivered) return;  // idle power only; losses are outcomes, not errors
  queue_.schedule(clock_, id, EventKind::ChipBoundary, "stream-arrival",
                  [this, id, stream] {
                    begin_receive(devices_[static_cast<std::size_t>(id)], stream);
                  });
}

void Simulation::begin_receive(Device& d, const ChipStream& stream) {
  if (d.wur != WurState::IdleListen || clock_ < d.busy_until) {
    // A stream landing mid-decode or mid-command is dropped; the radio has
    // a single receive pipeline. A suspended listener hears nothing at all.
    const char* why = clock_ < d.busy_until ? "overlapping-stream-ignored"
                                            : "stream-ignored-not-listening";
    queue_.schedule(clock_, d.id, EventKind::Timer, why, [] {});
    return;
  }
  const RadioConfig& cfg = *d.config;
  std::optional<WucFrame> frame;
  try {
    frame = decode_stream(stream, cfg, options_.detect_threshold);
  } catch (const MalformedFrameError&) {
    frame.reset();  // air truncation is a loss, not a fault
  }
  if (!frame) return;  // no preamble lock; the radio never leaves idle-listen

  const int id = d.id;
  const Rational t_pre = clock_ + Rational(kChipsPerBit, cfg.ldr);
  const Rational t_addr = t_pre + Rational(kAddressBits * kChipsPerBit, cfg.hdr);
  const bool match = frame->address() == cfg.address;

  d.ledger.set_state(clock_, "rx-preamble", pm_.idle.power_w(cfg.ldr));
  d.busy_until = t_addr;
  queue_.schedule(t_pre, id, EventKind::PreambleDetected, "", [this, id] {
    Device& dev = devices_[static_cast<std::size_t>(id)];
    dev.wur = WurState::Decoding;
    dev.ledger.set_state(clock_, "rx-address", pm_.idle.power_w(dev.config->hdr));
  });

  if (!match) {
    queue_.schedule(t_addr, id, EventKind::FrameComplete,
                    "address-mismatch " + hex_address(frame->address()), [this, id] {
                      Device& dev = devices_[static_cast<std::size_t>(id)];
                      dev.wur = WurState::IdleListen;
                      settle(dev, clock_);
                    });
    return;
  }

  const bool has_payload = frame->has_payload();
  const Rational t_frame =
      has_payload ? t_addr + Rational(kPayloadBits * kChipsPerBit, cfg.hdr) : t_addr;
  const AuxOp irq_op = has_payload ? AuxOp::IrqPayload6 : AuxOp::IrqNoPayload;
  const Rational t_irq = t_frame + pm_.aux.at(irq_op).duration_s;
  d.busy_until = t_irq;

  if (has_payload) {
    queue_.schedule(t_addr, id, EventKind::ChipBoundary, "payload-start", [this, id] {
      Device& dev = devices_[static_cast<std::size_t>(id)];
      dev.ledger.set_state(clock_, "rx-payload", pm_.idle.power_w(dev.config->hdr));
    });
  }
  queue_.schedule(t_frame, id, EventKind::FrameComplete,
                  "address-match " + hex_address(frame->address()),
                  [this, id, irq_op] {
                    Device& dev = devices_[static_cast<std::size_t>(id)];
                    dev.wur = WurState::IdleListen;
                    dev.mcu = McuState::HandlingIrq;
                    dev.ledger.set_state(clock_, "irq-handling", Rational(0));
                    dev.ledger.add_lump(clock_, aux_op_name(irq_op),
                                        pm_.aux.at(irq_op).energy_j);
                  });
  queue_.schedule(t_irq, id, EventKind::IrqAssert, has_payload ? "payload" : "no-payload",
                  [this, id, decoded = *frame] {
                    Device& dev = devices_[static_cast<std::size_t>(id)];
                    dev.backup.reason = WakeReason::WurIrq;
                    dev.backup.has_payload = decoded.has_payload();
                    dev.backup.payload = decoded.payload();
                    dev.irq_line = true;
                    dev.mcu = McuState::Shutdown;
                    settle(dev, clock_);
                  });
}

void Simulation::full_reset(int id) {
  Device& d = checked(id);
  d.mcu = McuState::Shutdown;
  d.wur = WurState::Suspended;
  d.tx = TxState::Shutdown;
  d.rf = RfBranch::Rx;
  d.sdn_low = false;
  d.irq_line = false;
  d.config.reset();
  d.backup = BackupRegisters{};
  d.busy_until = clock_;
  settle(d, clock_);
}

const std::vector<TraceRow>& Simulation::run_until(const Rational& time) {
  if (time < clock_)
    throw SimError("run_until(" + decimal_string(time) + " s) precedes clock " +
                   decimal_string(clock_) + " s");
  while (!queue_.empty() && queue_.next_time() <= time) {
    EventQueue::Event ev = queue_.pop();
    clock_ = ev.row.time;
    trace_.push_back(ev.row);
    ev.action();
  }
  clock_ = time;
  return trace_;
}

void Simulation::finalize(const Rational& horizon) {
  run_until(horizon);
  for (Device& d : devices_) d.ledger.finalize(horizon);
}

TransactionOutcome end_to_end_wakeup(const PowerModel& pm, const LinkParams& link,
                                     const RadioConfig& cfg, int payload_bits,
                                     const Rational& voltage_v, double distance_m,
                                     std::uint64_t seed, LinkMode mode) {
  wuc_airtime(cfg, payload_bits);  // validates payload_bits

  SimOptions opt;
  opt.link_mode = mode;
  Simulation sim(pm, link, opt, seed);
  const int tx = sim.add_device(0.0);
  const int rx = sim.add_device(distance_m);

  sim.schedule_command(Rational(0), tx, SetupWuR{cfg});
  sim.schedule_command(Rational(0), rx, SetupWuR{cfg});

  SendWuC cmd;
  cmd.address = cfg.address;
  cmd.voltage_v = voltage_v;
  for (int i = 0; i < (payload_bits + 7) / 8; ++i)
    cmd.payload.push_back(static_cast<std::uint8_t>(0xA0 + i));
  const Rational t_cmd(1);
  sim.schedule_command(t_cmd, tx, cmd);

  // Covers setup, overhead, the slowest legal frame and interrupt handling.
  sim.finalize(t_cmd + Rational(3));

  TransactionOutcome out;
  out.trace = sim.trace();
  Rational t_tx_complete = t_cmd;
  std::optional<Rational> t_irq;
  for (const TraceRow& row : out.trace) {
    if (row.device == tx && row.kind == EventKind::ChipBoundary &&
        row.detail == "stream-start")
      out.stream_start = row.time;
    else if (row.device == tx && row.kind == EventKind::TxComplete)
      t_tx_complete = row.time;
    else if (row.device == rx && row.kind == EventKind::ChipBoundary &&
             row.detail == "stream-arrival")
      out.delivered = true;
    else if (row.device == rx && row.kind == EventKind::IrqAssert)
      t_irq = row.time;
  }

  out.sender_duration_s = t_tx_complete - t_cmd;
  out.sender_energy_j = sim.device(tx).ledger.energy_between(t_cmd, t_tx_complete);
  if (t_irq) {
    out.woke = true;
    out.wake_latency = *t_irq - out.stream_start;
    out.receiver_duration_s = *out.wake_latency;
    out.receiver_energy_j =
        sim.device(rx).ledger.energy_between(out.stream_start, *t_irq);
  }
  out.sender_ledger = sim.device(tx).ledger;
  out.receiver_ledger = sim.device(rx).ledger;
  return out;
}

}  // namespace wakemod::sim
