#pragma once

#include "wakemod/link.hpp"
#include "wakemod/power_tables.hpp"
#include "wakemod/sim/simulation.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace wakemod::sim {

struct DeviceSpec {
  std::string role;  // informational: "sender", "receiver", ...
  double position_m = 0.0;
  Rational voltage_v{3};                // module supply; default SendWuC voltage
  std::optional<RadioConfig> radio;     // overrides the scenario-wide config
};

struct CommandSpec {
  Rational time_s;
  int device = 0;
  HostCommand command;
};

// A complete reproducible run: devices, shared radio config, link preset
// name, options, seed, horizon and the time-stamped command script.
struct Scenario {
  std::uint64_t seed = 1;
  Rational horizon_s{1};
  std::string link_preset = "field-868";
  RadioConfig radio;
  SimOptions options;
  std::vector<DeviceSpec> devices;
  std::vector<CommandSpec> commands;
};

// Builds the simulation, schedules the script, runs to the horizon and
// finalizes every ledger.
Simulation run_scenario(const Scenario& sc, const PowerModel& pm,
                        const LinkParams& link);

// time_s, device, event, detail
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);
// device, start_s, end_s, state, power_w, energy_j; lump entries appear as
// zero-width rows carrying the lump energy.
inline constexpr const char* kLedgerCsvHeader = "device,start_s,end_s,state,power_w,energy_j";
void write_ledger_rows(std::ostream& out, int device, const EnergyLedger& ledger);
void write_ledger_csv(std::ostream& out, const Simulation& sim);

}  // namespace wakemod::sim
