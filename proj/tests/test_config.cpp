#include <doctest.h>

#include "wakemod/config.hpp"
#include "wakemod/errors.hpp"
#include "wakemod/link.hpp"
#include "wakemod/sim/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

using namespace wakemod;
namespace fs = std::filesystem;

namespace {

const fs::path kDataDir = fs::path(WAKEMOD_DATA_DIR);

fs::path temp_json(const std::string& name, const std::string& content) {
  const fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("the standard data directory loads") {
  const AppConfig cfg = load_app_config(kDataDir);

  CHECK(cfg.power.idle.power_w(1024) == rational_from_decimal("6.88") / 1000000);
  CHECK(cfg.power.idle.power_w(32768) == rational_from_decimal("105.88") / 1000000);
  CHECK(cfg.power.tx.at(Rational(3)).tx_power_dbm == rational_from_decimal("10.10"));
  CHECK(cfg.power.aux.at(AuxOp::SetupWuR).energy_j == rational_from_decimal("0.00114"));
  CHECK(cfg.power.aux.at(AuxOp::SetupWuR).duration_s == rational_from_decimal("0.5642"));

  REQUIRE(cfg.presets.count("field-868") == 1);
  REQUIRE(cfg.presets.count("open-field") == 1);
  const LinkPreset& field = cfg.presets.at("field-868");
  CHECK(field.cal_tx_power_dbm == 2.8);
  CHECK(field.params.sensitivity_dbm == -72.62);
  REQUIRE(field.params.max_range_m.has_value());
  CHECK(*field.params.max_range_m == 130.0);

  // Loading runs the calibration: the anchors come back out of the curve.
  CHECK(pdr_at_distance(100.0, field.cal_tx_power_dbm, field.params) ==
        doctest::Approx(0.94).epsilon(1e-9));
  CHECK(pdr_at_distance(130.0, field.cal_tx_power_dbm, field.params) ==
        doctest::Approx(0.11).epsilon(1e-9));

  CHECK(cfg.waketag.idle_power_w == doctest::Approx(7.17e-6).epsilon(1e-12));
  CHECK(cfg.waketag.display_update_j == doctest::Approx(0.13222).epsilon(1e-12));
  CHECK(cfg.waketag.ldr == 1024);
  CHECK(cfg.waketag.hdr == 32768);
  CHECK(cfg.waketag.payload_bits == 48);
  CHECK(cfg.waketag.battery.capacity_mah == 220.0);
  CHECK(cfg.waketag.reference_lifetimes.size() == 4);

  CHECK(cfg.reference_transactions.size() == 2);
  CHECK(cfg.reference_transactions[0].name == "slow-preamble");
}

TEST_CASE("missing files fail to load") {
  CHECK_THROWS_AS(load_app_config(fs::temp_directory_path() / "wakemod_no_such_dir"),
                  ParseError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ParseError);
}

TEST_CASE("tampered data files name the offending field") {
  const fs::path bad_power = temp_json("wakemod_bad_power.json", R"({
    "idle_listening": [{"rate_bps": 1024, "power_uw": 6.88}],
    "tx": [], "operations": []
  })");
  try {
    load_power_model(bad_power);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("idle_listening") != std::string::npos);
  }

  const fs::path bad_op = temp_json("wakemod_bad_op.json", R"({
    "idle_listening": [], "tx": [],
    "operations": [{"op": "Nonsense", "energy_uj": "1", "duration_ms": "1"}]
  })");
  try {
    load_power_model(bad_op);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("operations") != std::string::npos);
    CHECK(std::string(e.what()).find("Nonsense") != std::string::npos);
  }

  const fs::path bad_number = temp_json("wakemod_bad_number.json", R"({
    "idle_listening": [{"rate_bps": 1024, "power_uw": "six-ish"}],
    "tx": [], "operations": []
  })");
  try {
    load_power_model(bad_number);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("power_uw") != std::string::npos);
  }

  for (const fs::path& p : {bad_power, bad_op, bad_number}) fs::remove(p);
}

TEST_CASE("calibration failures surface as load errors") {
  const fs::path bad_cal = temp_json("wakemod_bad_cal.json", R"({
    "presets": {"broken": {
      "carrier_freq_hz": 868350000, "tx_antenna_gain_dbi": 0,
      "rx_antenna_gain_dbi": 0, "sensitivity_dbm": -72.62,
      "path_loss_exponent": 2, "reference_distance_m": 1,
      "calibration": {"tx_power_dbm": 2.8, "anchors": [
        {"distance_m": 100, "pdr": 0.11},
        {"distance_m": 130, "pdr": 0.94}
      ]}
    }}
  })");
  try {
    load_link_presets(bad_cal);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("calibration") != std::string::npos);
  }
  fs::remove(bad_cal);
}

TEST_CASE("the two-device scenario loads with its script intact") {
  const sim::Scenario sc = load_scenario(kDataDir / "scenarios" / "two_device_wakeup.json");
  CHECK(sc.seed == 7);
  CHECK(sc.horizon_s == Rational(3));
  CHECK(sc.link_preset == "field-868");
  CHECK(sc.radio.ldr == 1024);
  CHECK(sc.radio.hdr == 32768);
  CHECK(sc.radio.address == 0xB26D);
  REQUIRE(sc.devices.size() == 2);
  CHECK(sc.devices[0].role == "sender");
  CHECK(sc.devices[1].position_m == 50.0);
  CHECK(sc.devices[1].voltage_v == Rational(3));
  REQUIRE(sc.commands.size() == 4);
  CHECK(std::holds_alternative<sim::SetupWuR>(sc.commands[0].command));
  CHECK(std::holds_alternative<sim::SendWuC>(sc.commands[2].command));
  CHECK(std::holds_alternative<sim::IrqReason>(sc.commands[3].command));

  const auto& send = std::get<sim::SendWuC>(sc.commands[2].command);
  CHECK(send.address == 0xB26D);
  CHECK(send.payload == std::vector<std::uint8_t>{0xC0, 0xFF, 0xEE});
  CHECK(send.voltage_v == Rational(0));  // filled from the device at run time
}

TEST_CASE("running the two-device scenario wakes the receiver") {
  const AppConfig cfg = load_app_config(kDataDir);
  const sim::Scenario sc = load_scenario(kDataDir / "scenarios" / "two_device_wakeup.json");
  const sim::Simulation sim =
      run_scenario(sc, cfg.power, cfg.presets.at(sc.link_preset).params);

  bool woke = false;
  for (const sim::TraceRow& row : sim.trace())
    if (row.kind == sim::EventKind::IrqAssert && row.device == 1) woke = true;
  CHECK(woke);

  const sim::Device& rx = sim.device(1);
  CHECK(rx.backup.reason == sim::WakeReason::WurIrq);
  CHECK(rx.backup.has_payload);
  const std::array<std::uint8_t, 6> expect{0xC0, 0xFF, 0xEE, 0, 0, 0};
  CHECK(rx.backup.payload == expect);
  CHECK_FALSE(rx.irq_line);  // the script reads the reason at 2.5 s

  CHECK(sim.device(0).ledger.finalized());
  CHECK(sim.device(0).ledger.total_energy_j() > Rational(0));
}

TEST_CASE("scenario CSV output is stable across runs") {
  const AppConfig cfg = load_app_config(kDataDir);
  const sim::Scenario sc = load_scenario(kDataDir / "scenarios" / "two_device_wakeup.json");

  auto render = [&]() {
    const sim::Simulation sim =
        run_scenario(sc, cfg.power, cfg.presets.at(sc.link_preset).params);
    std::ostringstream trace;
    std::ostringstream ledger;
    write_trace_csv(trace, sim.trace());
    write_ledger_csv(ledger, sim);
    return std::pair(trace.str(), ledger.str());
  };

  const auto [trace_a, ledger_a] = render();
  const auto [trace_b, ledger_b] = render();
  CHECK(trace_a == trace_b);
  CHECK(ledger_a == ledger_b);

  CHECK(trace_a.rfind("time_s,device,event,detail\n", 0) == 0);
  CHECK(ledger_a.rfind("device,start_s,end_s,state,power_w,energy_j\n", 0) == 0);
  CHECK(trace_a.find("irq-assert") != std::string::npos);
  CHECK(ledger_a.find("idle-listen@1024") != std::string::npos);
  CHECK(ledger_a.find("SetupWuR") != std::string::npos);
}

TEST_CASE("the corruption demo aborts its slow transmission") {
  const AppConfig cfg = load_app_config(kDataDir);
  const sim::Scenario sc = load_scenario(kDataDir / "scenarios" / "corruption_demo.json");
  CHECK(sc.options.corruption_mode);
  const sim::Simulation sim =
      run_scenario(sc, cfg.power, cfg.presets.at(sc.link_preset).params);

  bool corrupted = false;
  int irqs = 0;
  for (const sim::TraceRow& row : sim.trace()) {
    if (row.kind == sim::EventKind::TxComplete && row.detail == "corrupted")
      corrupted = true;
    if (row.kind == sim::EventKind::IrqAssert) ++irqs;
  }
  CHECK(corrupted);
  CHECK(irqs == 0);
}

TEST_CASE("device-level radio settings override the scenario radio") {
  const fs::path path = temp_json("wakemod_override.json", R"({
    "horizon_s": "1",
    "radio": {"ldr": 1024, "hdr": 32768, "address": "0x1111"},
    "devices": [
      {"position_m": 0},
      {"position_m": 1, "radio": {"ldr": 2048, "hdr": 2048, "address": "0x2222"}}
    ],
    "commands": [
      {"time_s": "0", "device": 0, "command": "SetupWuR"},
      {"time_s": "0", "device": 1, "command": "SetupWuR"}
    ]
  })");
  const sim::Scenario sc = load_scenario(path);
  fs::remove(path);

  CHECK(std::get<sim::SetupWuR>(sc.commands[0].command).config.address == 0x1111);
  const RadioConfig& override_cfg = std::get<sim::SetupWuR>(sc.commands[1].command).config;
  CHECK(override_cfg.address == 0x2222);
  CHECK(override_cfg.ldr == 2048);
}

TEST_CASE("scenario validation names the broken entry") {
  const fs::path bad_command = temp_json("wakemod_bad_cmd.json", R"({
    "horizon_s": "1",
    "radio": {"ldr": 1024, "hdr": 32768, "address": 17},
    "devices": [{"position_m": 0}],
    "commands": [{"time_s": "0", "device": 0, "command": "Explode"}]
  })");
  CHECK_THROWS_WITH_AS(load_scenario(bad_command),
                       doctest::Contains("unknown command 'Explode'"), ParseError);
  fs::remove(bad_command);

  const fs::path bad_device = temp_json("wakemod_bad_dev.json", R"({
    "horizon_s": "1",
    "radio": {"ldr": 1024, "hdr": 32768, "address": 17},
    "devices": [{"position_m": 0}],
    "commands": [{"time_s": "0", "device": 3, "command": "WhoAmI"}]
  })");
  CHECK_THROWS_WITH_AS(load_scenario(bad_device), doctest::Contains("unknown device 3"),
                       ParseError);
  fs::remove(bad_device);

  const fs::path bad_address = temp_json("wakemod_bad_addr.json", R"({
    "horizon_s": "1",
    "radio": {"ldr": 1024, "hdr": 32768, "address": 70000},
    "devices": [{"position_m": 0}],
    "commands": []
  })");
  CHECK_THROWS_WITH_AS(load_scenario(bad_address),
                       doctest::Contains("address outside 16 bits"), ParseError);
  fs::remove(bad_address);

  const fs::path bad_mode = temp_json("wakemod_bad_mode.json", R"({
    "horizon_s": "1",
    "options": {"link_mode": "telepathy"},
    "radio": {"ldr": 1024, "hdr": 32768, "address": 17},
    "devices": [{"position_m": 0}],
    "commands": []
  })");
  CHECK_THROWS_WITH_AS(load_scenario(bad_mode),
                       doctest::Contains("unknown mode 'telepathy'"), ParseError);
  fs::remove(bad_mode);

  const fs::path bad_payload = temp_json("wakemod_bad_payload.json", R"({
    "horizon_s": "1",
    "radio": {"ldr": 1024, "hdr": 32768, "address": 17},
    "devices": [{"position_m": 0}],
    "commands": [{"time_s": "0", "device": 0, "command": "SendWuC",
                  "address": 17, "payload_hex": "ABC"}]
  })");
  CHECK_THROWS_WITH_AS(load_scenario(bad_payload),
                       doctest::Contains("payload hex has odd length"), ParseError);
  fs::remove(bad_payload);
}
