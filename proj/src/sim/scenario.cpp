#include "wakemod/sim/scenario.hpp"

#include "wakemod/errors.hpp"

#include <algorithm>
#include <string>
#include <variant>

namespace wakemod::sim {

Simulation run_scenario(const Scenario& sc, const PowerModel& pm,
                        const LinkParams& link) {
  Simulation sim(pm, link, sc.options, sc.seed);
  for (const DeviceSpec& spec : sc.devices) sim.add_device(spec.position_m);

  for (const CommandSpec& cs : sc.commands) {
    if (cs.device < 0 || cs.device >= static_cast<int>(sc.devices.size()))
      throw ConfigError("command references unknown device " + std::to_string(cs.device));
    const DeviceSpec& spec = sc.devices[static_cast<std::size_t>(cs.device)];
    HostCommand cmd = cs.command;
    // A script entry may leave the TX voltage open; the device supply fills in.
    if (auto* send = std::get_if<SendWuC>(&cmd); send && send->voltage_v == Rational(0))
      send->voltage_v = spec.voltage_v;
    sim.schedule_command(cs.time_s, cs.device, std::move(cmd));
  }

  sim.finalize(sc.horizon_s);
  return sim;
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "time_s,device,event,detail\n";
  for (const TraceRow& row : trace) {
    out << decimal_string(row.time) << ',' << row.device << ','
        << event_kind_name(row.kind) << ',' << csv_escape(row.detail) << '\n';
  }
}

void write_ledger_rows(std::ostream& out, int device, const EnergyLedger& ledger) {
  std::size_t iv = 0;
  std::size_t lp = 0;
  const auto& intervals = ledger.intervals();
  const auto& lumps = ledger.lumps();
  // Merge both entry kinds into one time-ordered listing.
  while (iv < intervals.size() || lp < lumps.size()) {
    const bool take_lump =
        lp < lumps.size() &&
        (iv >= intervals.size() || lumps[lp].time < intervals[iv].start);
    if (take_lump) {
      const LedgerEntry& e = lumps[lp++];
      out << device << ',' << decimal_string(e.time) << ',' << decimal_string(e.time)
          << ',' << csv_escape(e.op) << ",0," << decimal_string(e.energy_j) << '\n';
    } else {
      const LedgerInterval& i = intervals[iv++];
      out << device << ',' << decimal_string(i.start) << ',' << decimal_string(i.end)
          << ',' << csv_escape(i.state) << ',' << decimal_string(i.power_w) << ','
          << decimal_string(i.energy_j()) << '\n';
    }
  }
}

void write_ledger_csv(std::ostream& out, const Simulation& sim) {
  out << kLedgerCsvHeader << '\n';
  for (int id = 0; id < sim.device_count(); ++id)
    write_ledger_rows(out, id, sim.device(id).ledger);
}

}  // namespace wakemod::sim
