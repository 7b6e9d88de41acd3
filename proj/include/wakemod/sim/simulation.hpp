#pragma once

#include "wakemod/chip_stream.hpp"
#include "wakemod/codec.hpp"
#include "wakemod/link.hpp"
#include "wakemod/power_tables.hpp"
#include "wakemod/rational.hpp"
#include "wakemod/sim/device.hpp"
#include "wakemod/sim/event_queue.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace wakemod::sim {

enum class LinkMode {
  Bernoulli,  // one delivery draw per WuC per receiver, noiseless decode
  ChipFlip,   // always delivered, each chip flipped with chip_flip_prob
  Forced,     // always delivered, noiseless (closed-form comparisons)
};

// Time the transmitter tolerates a silent carrier before shutting itself
// down, and the wake time of the system-reset path.
inline const Rational kTxAutoShutdownHoldoff{1, 125};      // 8 ms
inline const Rational kSystemResetWakeTime{29, 100000};    // 290 us

struct SimOptions {
  LinkMode link_mode = LinkMode::Bernoulli;
  double chip_flip_prob = 0.0;
  double detect_threshold = kDefaultDetectThreshold;
  // Permit SendWuC below 1024 bit/s. Such frames are marked corrupted
  // before the link draw whenever their stream leaves the carrier off
  // longer than the auto-shutdown holdoff.
  bool corruption_mode = false;
};

// Single-threaded discrete-event simulation owning all device state. One
// instance per thread; separate instances share nothing.
class Simulation {
 public:
  Simulation(PowerModel pm, LinkParams link, SimOptions options, std::uint64_t seed);

  int add_device(double position_m);
  Device& device(int id);
  const Device& device(int id) const;
  int device_count() const { return static_cast<int>(devices_.size()); }

  const Rational& now() const { return clock_; }

  // Script interface: each command is preceded by its SDN pulse.
  void schedule_command(const Rational& time, int device, HostCommand cmd);
  void schedule_timer(const Rational& time, int device, std::string detail);
  void schedule_system_reset(const Rational& time, int device);

  // Immediate operations, executed at now().
  void pull_sdn_low(int device);
  CommandResponse host_command(int device, const HostCommand& cmd);
  // Feed a stream to one receiver; `delivered` is the link's verdict.
  void wur_receive(int device, const ChipStream& stream, bool delivered);
  // Clears config, backup registers and state; the one transition backup
  // registers do not survive.
  void full_reset(int device);

  // Processes all events up to and including `time`; the clock never moves
  // backward. Returns the cumulative trace.
  const std::vector<TraceRow>& run_until(const Rational& time);
  // Runs to `horizon` and closes every ledger there.
  void finalize(const Rational& horizon);

  const std::vector<TraceRow>& trace() const { return trace_; }
  const PowerModel& power_model() const { return pm_; }
  const LinkParams& link() const { return link_; }
  const SimOptions& options() const { return options_; }

 private:
  Device& checked(int id);
  void begin_host_window(Device& d, AuxOp op);
  void do_send_wuc(Device& d, const SendWuC& cmd);
  void begin_receive(Device& d, const ChipStream& stream);
  // Ledger state for a device with nothing in flight.
  void settle(Device& d, const Rational& at);

  PowerModel pm_;
  LinkParams link_;
  SimOptions options_;
  std::mt19937_64 rng_;
  Rational clock_{0};
  EventQueue queue_;
  std::deque<Device> devices_;
  std::vector<TraceRow> trace_;
  bool running_ = false;
};

struct TransactionOutcome {
  bool delivered = false;
  bool woke = false;
  Rational stream_start{0};
  std::optional<Rational> wake_latency;  // stream start to irq assert

  // Sender cost over [command, tx complete]; receiver cost over
  // [stream start, irq assert].
  Rational sender_energy_j{0};
  Rational sender_duration_s{0};
  Rational receiver_energy_j{0};
  Rational receiver_duration_s{0};

  EnergyLedger sender_ledger;
  EnergyLedger receiver_ledger;
  std::vector<TraceRow> trace;
};

// Two devices `distance_m` apart, both configured with `cfg` at t=0; one
// WuC addressed to the receiver goes out at t=1s. payload_bits = 0 sends no
// payload block, 8..48 sends one (a fixed test pattern). The seed drives
// the link draw.
TransactionOutcome end_to_end_wakeup(const PowerModel& pm, const LinkParams& link,
                                     const RadioConfig& cfg, int payload_bits,
                                     const Rational& voltage_v, double distance_m,
                                     std::uint64_t seed,
                                     LinkMode mode = LinkMode::Bernoulli);

}  // namespace wakemod::sim
