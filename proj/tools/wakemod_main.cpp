// wakemod: characterization tables, link sweeps, transaction costs and
// lifetime projections for the wake-up-radio models, plus scripted
// simulation runs. Exit status: 0 on success, 1 when a reproduction check
// fails, 2 on load or usage errors.

#include "wakemod/config.hpp"
#include "wakemod/errors.hpp"
#include "wakemod/lifetime.hpp"
#include "wakemod/link.hpp"
#include "wakemod/report.hpp"
#include "wakemod/sim/scenario.hpp"
#include "wakemod/sim/simulation.hpp"
#include "wakemod/transaction.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace {

using namespace wakemod;

// Opens `path` for writing, or hands back stdout when no path was given.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

const LinkPreset& preset_or_throw(const AppConfig& cfg, const std::string& name) {
  auto it = cfg.presets.find(name);
  if (it == cfg.presets.end())
    throw ConfigError("unknown link preset '" + name + "'");
  return it->second;
}

int run_tables(const std::string& data_dir) {
  const AppConfig cfg = load_app_config(data_dir);
  print_power_tables(std::cout, cfg.power);
  std::cout << "\n";
  print_derived_transactions(std::cout, cfg.power, cfg.reference_transactions);

  const std::vector<ReferenceCheck> checks =
      check_reference_transactions(cfg.power, cfg.reference_transactions);
  std::cout << "\nReference checks\n";
  print_reference_checks(std::cout, checks);

  bool all_ok = true;
  for (const ReferenceCheck& c : checks) all_ok = all_ok && c.ok;
  std::cout << (all_ok ? "all reference transactions reproduced\n"
                       : "reference transaction mismatch\n");
  return all_ok ? 0 : 1;
}

int run_pdr_sweep(const std::string& data_dir, const std::string& preset_name,
                  std::vector<double> distances, int trials, std::uint64_t seed,
                  const std::string& out_path) {
  const AppConfig cfg = load_app_config(data_dir);
  const LinkPreset& preset = preset_or_throw(cfg, preset_name);
  const LinkParams& lp = preset.params;

  OutputTarget out(out_path);
  out.stream() << "distance_m,rssi_dbm,margin_db,pdr_model,pdr_empirical,trials\n";

  bool consistent = true;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double d = distances[i];
    const double rssi = rssi_dbm(d, preset.cal_tx_power_dbm, lp);
    const double margin = link_margin_db(rssi, lp);
    const double model = pdr_at_distance(d, preset.cal_tx_power_dbm, lp);

    // One generator per distance, so adding or dropping grid points does
    // not reshuffle the verdicts of the others.
    std::mt19937_64 rng(seed + i * 0x9e3779b97f4a7c15ull);
    int delivered = 0;
    for (int t = 0; t < trials; ++t)
      delivered += deliver(d, preset.cal_tx_power_dbm, lp, rng) ? 1 : 0;
    const double empirical = static_cast<double>(delivered) / trials;

    out.stream() << format_double(d) << ',' << format_double(rssi) << ','
                 << format_double(margin) << ',' << format_double(model) << ','
                 << format_double(empirical) << ',' << trials << '\n';

    // Five-sigma binomial band plus one count of slack for tiny trials.
    const double sigma = std::sqrt(model * (1.0 - model) / trials);
    if (std::abs(empirical - model) > 5.0 * sigma + 1.0 / trials) {
      std::cerr << "pdr-sweep: empirical " << empirical << " at " << d
                << " m is inconsistent with model " << model << "\n";
      consistent = false;
    }
  }
  return consistent ? 0 : 1;
}

void write_outcome_files(const sim::TransactionOutcome& outcome,
                         const std::string& trace_path,
                         const std::string& ledger_path) {
  if (!trace_path.empty()) {
    OutputTarget out(trace_path);
    sim::write_trace_csv(out.stream(), outcome.trace);
  }
  if (!ledger_path.empty()) {
    OutputTarget out(ledger_path);
    out.stream() << sim::kLedgerCsvHeader << '\n';
    sim::write_ledger_rows(out.stream(), 0, outcome.sender_ledger);
    sim::write_ledger_rows(out.stream(), 1, outcome.receiver_ledger);
  }
}

int run_transaction(const std::string& data_dir, const std::string& preset_name,
                    int ldr, int hdr, int payload_bits, const std::string& voltage,
                    std::uint16_t address, double distance, std::uint64_t seed,
                    const std::string& trace_path, const std::string& ledger_path) {
  const AppConfig cfg = load_app_config(data_dir);
  const LinkPreset& preset = preset_or_throw(cfg, preset_name);
  const Rational voltage_v = rational_from_decimal(voltage);
  const RadioConfig radio(ldr, hdr, address);

  const TransactionPart sender = sender_cost(cfg.power, radio, payload_bits, voltage_v);
  const TransactionPart receiver = receiver_cost(cfg.power, radio, payload_bits);
  print_transaction(std::cout, "sender", sender);
  print_transaction(std::cout, "receiver", receiver);

  const sim::TransactionOutcome outcome =
      sim::end_to_end_wakeup(cfg.power, preset.params, radio, payload_bits,
                             voltage_v, distance, seed, sim::LinkMode::Forced);
  write_outcome_files(outcome, trace_path, ledger_path);

  if (!outcome.woke) {
    std::cerr << "transaction: simulated receiver did not wake\n";
    return 1;
  }

  std::cout << "\nanalytic vs simulated\n";
  bool agree = true;
  auto compare = [&agree](const char* what, const Rational& analytic,
                          const Rational& simulated) {
    const double a = to_double(analytic);
    const double s = to_double(simulated);
    const double rel = std::abs(s - a) / std::abs(a);
    agree = agree && rel <= 1e-6;
    std::cout << "  " << what << ": " << format_double(a) << " vs "
              << format_double(s) << " (rel " << format_double(rel) << ")\n";
  };
  compare("sender energy (J)", sender.energy_j, outcome.sender_energy_j);
  compare("sender duration (s)", sender.duration_s, outcome.sender_duration_s);
  compare("receiver energy (J)", receiver.energy_j, outcome.receiver_energy_j);
  compare("receiver duration (s)", receiver.duration_s, outcome.receiver_duration_s);
  std::cout << "  wake latency: " << format_duration_ms(*outcome.wake_latency) << "\n";

  if (!agree) {
    std::cerr << "transaction: simulation disagrees with the closed form\n";
    return 1;
  }
  return 0;
}

int run_scenario_file(const std::string& data_dir, const std::string& scenario_path,
                      const std::string& trace_path, const std::string& ledger_path) {
  const AppConfig cfg = load_app_config(data_dir);
  const sim::Scenario sc = load_scenario(scenario_path);
  const LinkPreset& preset = preset_or_throw(cfg, sc.link_preset);

  const sim::Simulation sim = sim::run_scenario(sc, cfg.power, preset.params);

  if (!trace_path.empty()) {
    OutputTarget out(trace_path);
    sim::write_trace_csv(out.stream(), sim.trace());
  }
  if (!ledger_path.empty()) {
    OutputTarget out(ledger_path);
    sim::write_ledger_csv(out.stream(), sim);
  }

  std::cout << "scenario: " << sim.device_count() << " devices, "
            << sim.trace().size() << " events to "
            << decimal_string(sim.now()) << " s\n";
  for (int id = 0; id < sim.device_count(); ++id) {
    std::cout << "  device " << id << ": "
              << format_energy(sim.device(id).ledger.total_energy_j()) << "\n";
  }
  return 0;
}

int run_lifetime(const std::string& data_dir, const std::string& sweep_spec,
                 const std::string& out_path) {
  const AppConfig cfg = load_app_config(data_dir);
  const WakeTagConfig& wt = cfg.waketag;

  // Each display update is preceded by the wake-up call that requests it.
  const RadioConfig radio(wt.ldr, wt.hdr, 0);
  const Rational reception_j = receiver_cost(cfg.power, radio, wt.payload_bits).energy_j;
  const double per_update_j = wt.display_update_j + to_double(reception_j);

  std::cout << "battery: " << format_double(wt.battery.energy_j()) << " J, idle "
            << format_double(wt.idle_power_w * 1e6) << " uW, update "
            << format_double(per_update_j * 1e3) << " mJ (display + reception "
            << format_energy(reception_j) << ")\n\n";

  bool all_ok = true;
  for (const LifetimeBand& band : wt.reference_lifetimes) {
    DutyProfile profile{wt.idle_power_w, {}};
    if (band.period_s > 0.0)
      profile.events.push_back({"update", per_update_j, 1.0 / band.period_s});
    const LifetimeReport report = project_lifetime(wt.battery, profile);
    const double years = report.lifetime_years();
    const bool ok = !report.infinite && years >= band.min_years && years <= band.max_years;
    all_ok = all_ok && ok;
    std::cout << "  " << (ok ? "[ok]  " : "[FAIL] ") << band.label << ": "
              << format_double(report.lifetime_days()) << " days = "
              << format_double(years) << " years (expected "
              << format_double(band.min_years) << ".." << format_double(band.max_years)
              << ")\n";
  }

  if (!sweep_spec.empty()) {
    double lo = 0.0, hi = 0.0;
    int points = 0;
    if (std::sscanf(sweep_spec.c_str(), "%lf:%lf:%d", &lo, &hi, &points) != 3)
      throw ConfigError("--sweep expects LO:HI:POINTS, got '" + sweep_spec + "'");
    DutyProfile base{wt.idle_power_w, {}};
    const std::vector<LifetimeSweepRow> rows =
        lifetime_sweep(wt.battery, base, per_update_j, log_spaced(lo, hi, points));
    OutputTarget out(out_path);
    out.stream() << "rate_hz,average_power_w,lifetime_s,lifetime_years\n";
    for (const LifetimeSweepRow& row : rows) {
      out.stream() << format_double(row.rate_hz) << ','
                   << format_double(row.average_power_w) << ','
                   << format_double(row.lifetime_s) << ','
                   << format_double(row.lifetime_years) << '\n';
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wake-up radio energy, link and lifetime models"};
  app.require_subcommand(1);

  std::string data_dir = WAKEMOD_DATA_DIR;
  app.add_option("--config", data_dir, "data directory")->capture_default_str();

  CLI::App* tables = app.add_subcommand(
      "tables", "print the characterization tables and reproduction checks");

  std::string preset = "field-868";
  std::vector<double> distances = {1.1, 10, 25, 50, 75, 100, 110, 120, 130, 140, 150};
  int trials = 100;
  std::uint64_t seed = 1;
  std::string out_path;
  CLI::App* pdr = app.add_subcommand(
      "pdr-sweep", "empirical vs modeled delivery ratio across distances");
  pdr->add_option("--preset", preset, "link preset name")->capture_default_str();
  pdr->add_option("--distances", distances, "distances in m")
      ->delimiter(',')
      ->capture_default_str();
  pdr->add_option("--trials", trials, "delivery draws per distance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pdr->add_option("--seed", seed, "random seed")->capture_default_str();
  pdr->add_option("--out", out_path, "CSV output path (default stdout)");

  int ldr = 1024;
  int hdr = 32768;
  int payload_bits = 0;
  std::string voltage = "1.8";
  std::uint16_t address = 0xB26D;
  double distance = 1.0;
  std::string trace_path;
  std::string ledger_path;
  std::string scenario_path;
  CLI::App* txn = app.add_subcommand(
      "transaction", "wake-up transaction cost, analytic and simulated");
  txn->add_option("--ldr", ldr, "preamble rate in bit/s")->capture_default_str();
  txn->add_option("--hdr", hdr, "address/payload rate in bit/s")->capture_default_str();
  txn->add_option("--payload-bits", payload_bits, "payload size, 0 or 8..48")
      ->capture_default_str();
  txn->add_option("--voltage", voltage, "TX supply voltage in V")->capture_default_str();
  txn->add_option("--address", address, "16-bit wake address")->capture_default_str();
  txn->add_option("--distance", distance, "sender-receiver distance in m")
      ->capture_default_str();
  txn->add_option("--seed", seed, "random seed")->capture_default_str();
  txn->add_option("--preset", preset, "link preset name")->capture_default_str();
  txn->add_option("--out-trace", trace_path, "event trace CSV path");
  txn->add_option("--out-ledger", ledger_path, "energy ledger CSV path");
  txn->add_option("--scenario", scenario_path,
                  "run this scenario file instead of the built-in two-device script");

  std::string sweep_spec;
  CLI::App* life = app.add_subcommand(
      "lifetime", "battery lifetime projections for the display-tag profile");
  life->add_option("--sweep", sweep_spec, "update-rate sweep as LO:HI:POINTS in Hz");
  life->add_option("--out", out_path, "sweep CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (tables->parsed()) return run_tables(data_dir);
    if (pdr->parsed())
      return run_pdr_sweep(data_dir, preset, distances, trials, seed, out_path);
    if (txn->parsed()) {
      if (!scenario_path.empty())
        return run_scenario_file(data_dir, scenario_path, trace_path, ledger_path);
      return run_transaction(data_dir, preset, ldr, hdr, payload_bits, voltage,
                             address, distance, seed, trace_path, ledger_path);
    }
    if (life->parsed()) return run_lifetime(data_dir, sweep_spec, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
