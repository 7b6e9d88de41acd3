#pragma once

#include "wakemod/frame.hpp"
#include "wakemod/rational.hpp"
#include "wakemod/sim/ledger.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace wakemod::sim {

enum class McuState { Shutdown, HandlingIrq, ServingHost };
enum class WurState { Suspended, IdleListen, Decoding };
enum class TxState { Shutdown, RampUp, Transmitting, AutoShutdownPending };
enum class RfBranch { Rx, Tx };

enum class WakeReason { None, WurIrq };

// Always-powered scratch storage. Contents survive every MCU state change,
// including shutdown and the system-reset wake path; only a full reset
// clears them.
struct BackupRegisters {
  WakeReason reason = WakeReason::None;
  bool has_payload = false;
  std::array<std::uint8_t, kPayloadBytes> payload{};

  bool operator==(const BackupRegisters&) const = default;
};

// The four host commands, issued over the serial interface after SDN is
// pulled low.
struct WhoAmI {};
struct SetupWuR {
  RadioConfig config;
};
struct SendWuC {
  std::uint16_t address = 0;
  std::vector<std::uint8_t> payload;
  Rational voltage_v;
};
struct IrqReason {};
using HostCommand = std::variant<WhoAmI, SetupWuR, SendWuC, IrqReason>;

const char* host_command_name(const HostCommand& cmd);

inline constexpr std::uint8_t kModuleIdentity = 0x57;

struct CommandResponse {
  std::optional<std::uint8_t> identity;    // WhoAmI
  std::optional<BackupRegisters> reason;   // IRQReason
};

// Snapshot of one simulated module. The MCU's shutdown floor sits below the
// resolution of the published idle figures and is folded into them, so
// shutdown intervals bill at zero power.
struct Device {
  int id = -1;
  double position_m = 0.0;

  McuState mcu = McuState::Shutdown;
  WurState wur = WurState::Suspended;
  TxState tx = TxState::Shutdown;
  RfBranch rf = RfBranch::Rx;
  bool sdn_low = false;
  bool irq_line = false;

  std::optional<RadioConfig> config;
  BackupRegisters backup;
  Rational busy_until{0};
  EnergyLedger ledger;
};

}  // namespace wakemod::sim
