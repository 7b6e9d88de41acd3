#include "wakemod/config.hpp"

#include "wakemod/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <utility>

namespace wakemod {

namespace {

using nlohmann::json;

json load_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
}

const json& require(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(ctx + ": missing field '" + key + "'");
  return j[key];
}

const json& require_array(const json& j, const char* key, const std::string& ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_array()) throw ParseError(ctx + "." + key + ": expected an array");
  return v;
}

// Measured decimals travel as strings so they stay exact; exact integers
// may appear as JSON numbers.
Rational decimal_field(const json& j, const char* key, const std::string& ctx) {
  const json& v = require(j, key, ctx);
  try {
    if (v.is_string()) return rational_from_decimal(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  } catch (const ParseError& e) {
    throw ParseError(ctx + "." + key + ": " + e.what());
  }
  throw ParseError(ctx + "." + key + ": expected a decimal string");
}

int int_field(const json& j, const char* key, const std::string& ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_number_integer())
    throw ParseError(ctx + "." + key + ": expected an integer");
  return v.get<int>();
}

double number_field(const json& j, const char* key, const std::string& ctx) {
  const json& v = require(j, key, ctx);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return to_double(decimal_field(j, key, ctx));
  throw ParseError(ctx + "." + key + ": expected a number");
}

std::string string_field(const json& j, const char* key, const std::string& ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_string()) throw ParseError(ctx + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::uint16_t address_field(const json& j, const char* key, const std::string& ctx) {
  const json& v = require(j, key, ctx);
  long parsed = 0;
  if (v.is_number_integer()) {
    parsed = v.get<long>();
  } else if (v.is_string()) {
    try {
      std::size_t used = 0;
      const std::string s = v.get<std::string>();
      parsed = std::stol(s, &used, 0);
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw ParseError(ctx + "." + key + ": bad address");
    }
  } else {
    throw ParseError(ctx + "." + key + ": expected an address");
  }
  if (parsed < 0 || parsed > 0xFFFF)
    throw ParseError(ctx + "." + key + ": address outside 16 bits");
  return static_cast<std::uint16_t>(parsed);
}

const Rational kMicro(1, 1000000);
const Rational kMilli(1, 1000);

}  // namespace

PowerModel load_power_model(const std::filesystem::path& file) {
  const json root = load_json(file);
  const std::string ctx = file.filename().string();

  std::map<int, Rational> idle;
  for (const json& row : require_array(root, "idle_listening", ctx)) {
    const int rate = int_field(row, "rate_bps", ctx + ".idle_listening");
    idle[rate] = decimal_field(row, "power_uw", ctx + ".idle_listening") * kMicro;
  }

  std::map<Rational, TxTable::Row> tx;
  for (const json& row : require_array(root, "tx", ctx)) {
    const Rational v = decimal_field(row, "voltage_v", ctx + ".tx");
    tx[v] = {decimal_field(row, "tx_power_dbm", ctx + ".tx"),
             decimal_field(row, "consumption_mw", ctx + ".tx") * kMilli};
  }

  std::map<AuxOp, AuxOpTable::Cost> aux;
  for (const json& row : require_array(root, "operations", ctx)) {
    const std::string name = string_field(row, "op", ctx + ".operations");
    AuxOp op;
    if (name == aux_op_name(AuxOp::WhoAmI)) op = AuxOp::WhoAmI;
    else if (name == aux_op_name(AuxOp::SetupWuR)) op = AuxOp::SetupWuR;
    else if (name == aux_op_name(AuxOp::SendWucOverhead)) op = AuxOp::SendWucOverhead;
    else if (name == aux_op_name(AuxOp::IrqReason)) op = AuxOp::IrqReason;
    else if (name == aux_op_name(AuxOp::IrqNoPayload)) op = AuxOp::IrqNoPayload;
    else if (name == aux_op_name(AuxOp::IrqPayload6)) op = AuxOp::IrqPayload6;
    else throw ParseError(ctx + ".operations: unknown op '" + name + "'");
    aux[op] = {decimal_field(row, "energy_uj", ctx + ".operations") * kMicro,
               decimal_field(row, "duration_ms", ctx + ".operations") * kMilli};
  }

  try {
    return {IdleListenTable::from_rows(idle), TxTable::from_rows(tx),
            AuxOpTable::from_rows(aux)};
  } catch (const ConfigError& e) {
    throw ParseError(ctx + ": " + e.what());
  }
}

std::vector<ReferenceTransaction> load_reference_transactions(
    const std::filesystem::path& file) {
  const json root = load_json(file);
  const std::string ctx = file.filename().string() + ".reference_transactions";

  std::vector<ReferenceTransaction> refs;
  for (const json& row : require_array(root, "reference_transactions",
                                 file.filename().string())) {
    ReferenceTransaction r;
    r.name = string_field(row, "name", ctx);
    r.ldr = int_field(row, "ldr", ctx);
    r.hdr = int_field(row, "hdr", ctx);
    r.payload_bits = int_field(row, "payload_bits", ctx);
    r.voltage_v = decimal_field(row, "voltage_v", ctx);
    r.sender_energy_uj = decimal_field(row, "sender_energy_uj", ctx);
    r.sender_duration_ms = decimal_field(row, "sender_duration_ms", ctx);
    r.receiver_energy_uj = decimal_field(row, "receiver_energy_uj", ctx);
    r.receiver_duration_ms = decimal_field(row, "receiver_duration_ms", ctx);
    refs.push_back(std::move(r));
  }
  return refs;
}

std::map<std::string, LinkPreset> load_link_presets(const std::filesystem::path& file) {
  const json root = load_json(file);
  const std::string fname = file.filename().string();

  std::map<std::string, LinkPreset> presets;
  for (const auto& [name, body] : require(root, "presets", fname).items()) {
    const std::string ctx = fname + ".presets." + name;
    LinkPreset preset;
    LinkParams& p = preset.params;
    p.carrier_freq_hz = number_field(body, "carrier_freq_hz", ctx);
    p.tx_antenna_gain_dbi = number_field(body, "tx_antenna_gain_dbi", ctx);
    p.rx_antenna_gain_dbi = number_field(body, "rx_antenna_gain_dbi", ctx);
    p.sensitivity_dbm = number_field(body, "sensitivity_dbm", ctx);
    p.path_loss_exponent = number_field(body, "path_loss_exponent", ctx);
    p.reference_distance_m = number_field(body, "reference_distance_m", ctx);
    if (body.contains("max_range_m")) p.max_range_m = number_field(body, "max_range_m", ctx);

    const json& cal = require(body, "calibration", ctx);
    preset.cal_tx_power_dbm = number_field(cal, "tx_power_dbm", ctx + ".calibration");
    std::vector<std::pair<double, double>> anchors;
    for (const json& a : require_array(cal, "anchors", ctx + ".calibration")) {
      const double d = number_field(a, "distance_m", ctx + ".calibration.anchors");
      const double pdr = number_field(a, "pdr", ctx + ".calibration.anchors");
      const double margin =
          link_margin_db(rssi_dbm(d, preset.cal_tx_power_dbm, p), p);
      anchors.emplace_back(margin, pdr);
    }
    try {
      const PdrFit fit = calibrate_pdr(anchors);
      p.pdr_midpoint_db = fit.midpoint_db;
      p.pdr_slope_db = fit.slope_db;
    } catch (const ConfigError& e) {
      throw ParseError(ctx + ".calibration: " + e.what());
    }
    presets.emplace(name, std::move(preset));
  }
  if (presets.empty()) throw ParseError(fname + ": no presets defined");
  return presets;
}

WakeTagConfig load_waketag(const std::filesystem::path& file) {
  const json root = load_json(file);
  const std::string ctx = file.filename().string();

  WakeTagConfig w;
  w.idle_power_w = to_double(decimal_field(root, "idle_power_uw", ctx) * kMicro);
  w.display_update_j = to_double(decimal_field(root, "display_update_mj", ctx) * kMilli);

  const json& rx = require(root, "reception", ctx);
  w.ldr = int_field(rx, "ldr", ctx + ".reception");
  w.hdr = int_field(rx, "hdr", ctx + ".reception");
  w.payload_bits = int_field(rx, "payload_bits", ctx + ".reception");

  const json& bat = require(root, "battery", ctx);
  w.battery.capacity_mah = number_field(bat, "capacity_mah", ctx + ".battery");
  w.battery.nominal_voltage_v = number_field(bat, "nominal_voltage_v", ctx + ".battery");
  w.battery.self_discharge_per_year =
      number_field(bat, "self_discharge_per_year", ctx + ".battery");

  for (const json& row : require_array(root, "reference_lifetimes", ctx)) {
    const std::string rctx = ctx + ".reference_lifetimes";
    LifetimeBand band;
    band.label = string_field(row, "label", rctx);
    band.period_s = number_field(row, "period_s", rctx);
    const std::string unit = string_field(row, "unit", rctx);
    double scale = 1.0;
    if (unit == "days") scale = kSecondsPerDay / kSecondsPerYear;
    else if (unit != "years") throw ParseError(rctx + ": unknown unit '" + unit + "'");
    band.min_years = number_field(row, "min", rctx) * scale;
    band.max_years = number_field(row, "max", rctx) * scale;
    w.reference_lifetimes.push_back(std::move(band));
  }
  return w;
}

namespace {

RadioConfig parse_radio(const json& j, const std::string& ctx) {
  const int ldr = int_field(j, "ldr", ctx);
  const int hdr = int_field(j, "hdr", ctx);
  const std::uint16_t address = address_field(j, "address", ctx);
  MlsCode code = default_mls();
  if (j.contains("taps")) {
    std::vector<int> taps;
    for (const json& t : j["taps"]) {
      if (!t.is_number_integer()) throw ParseError(ctx + ".taps: expected integers");
      taps.push_back(t.get<int>());
    }
    const int order = *std::max_element(taps.begin(), taps.end());
    try {
      code = generate_mls(order, taps);
    } catch (const CodeError& e) {
      throw ParseError(ctx + ".taps: " + e.what());
    }
  }
  try {
    return {ldr, hdr, address, std::move(code)};
  } catch (const ConfigError& e) {
    throw ParseError(ctx + ": " + e.what());
  }
}

std::vector<std::uint8_t> parse_payload_hex(const std::string& hex,
                                            const std::string& ctx) {
  if (hex.size() % 2 != 0) throw ParseError(ctx + ": payload hex has odd length");
  std::vector<std::uint8_t> bytes;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    try {
      std::size_t used = 0;
      const int b = std::stoi(hex.substr(i, 2), &used, 16);
      if (used != 2) throw std::invalid_argument(hex);
      bytes.push_back(static_cast<std::uint8_t>(b));
    } catch (const std::exception&) {
      throw ParseError(ctx + ": bad payload hex '" + hex + "'");
    }
  }
  return bytes;
}

}  // namespace

sim::Scenario load_scenario(const std::filesystem::path& file) {
  const json root = load_json(file);
  const std::string ctx = file.filename().string();

  const RadioConfig radio = parse_radio(require(root, "radio", ctx), ctx + ".radio");
  sim::Scenario sc{.seed = 1,
                   .horizon_s = decimal_field(root, "horizon_s", ctx),
                   .link_preset = "field-868",
                   .radio = radio,
                   .options = {},
                   .devices = {},
                   .commands = {}};
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) throw ParseError(ctx + ".seed: expected an unsigned integer");
    sc.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("link_preset")) sc.link_preset = string_field(root, "link_preset", ctx);

  if (root.contains("options")) {
    const json& opt = root["options"];
    const std::string octx = ctx + ".options";
    if (opt.contains("link_mode")) {
      const std::string mode = string_field(opt, "link_mode", octx);
      if (mode == "bernoulli") sc.options.link_mode = sim::LinkMode::Bernoulli;
      else if (mode == "chip-flip") sc.options.link_mode = sim::LinkMode::ChipFlip;
      else if (mode == "forced") sc.options.link_mode = sim::LinkMode::Forced;
      else throw ParseError(octx + ".link_mode: unknown mode '" + mode + "'");
    }
    if (opt.contains("chip_flip_prob"))
      sc.options.chip_flip_prob = number_field(opt, "chip_flip_prob", octx);
    if (opt.contains("detect_threshold"))
      sc.options.detect_threshold = number_field(opt, "detect_threshold", octx);
    if (opt.contains("corruption_mode")) {
      if (!opt["corruption_mode"].is_boolean())
        throw ParseError(octx + ".corruption_mode: expected a boolean");
      sc.options.corruption_mode = opt["corruption_mode"].get<bool>();
    }
  }

  for (const json& d : require_array(root, "devices", ctx)) {
    const std::string dctx = ctx + ".devices";
    sim::DeviceSpec spec;
    if (d.contains("role")) spec.role = string_field(d, "role", dctx);
    spec.position_m = number_field(d, "position_m", dctx);
    if (d.contains("voltage_v")) spec.voltage_v = decimal_field(d, "voltage_v", dctx);
    if (d.contains("radio")) spec.radio = parse_radio(d["radio"], dctx + ".radio");
    sc.devices.push_back(std::move(spec));
  }

  for (const json& c : require_array(root, "commands", ctx)) {
    const std::string cctx = ctx + ".commands";
    sim::CommandSpec cs;
    cs.time_s = decimal_field(c, "time_s", cctx);
    cs.device = int_field(c, "device", cctx);
    if (cs.device < 0 || cs.device >= static_cast<int>(sc.devices.size()))
      throw ParseError(cctx + ": unknown device " + std::to_string(cs.device));

    const std::string kind = string_field(c, "command", cctx);
    if (kind == "WhoAmI") {
      cs.command = sim::WhoAmI{};
    } else if (kind == "SetupWuR") {
      const sim::DeviceSpec& spec = sc.devices[static_cast<std::size_t>(cs.device)];
      cs.command = sim::SetupWuR{spec.radio.value_or(sc.radio)};
    } else if (kind == "SendWuC") {
      sim::SendWuC send;
      send.address = address_field(c, "address", cctx);
      if (c.contains("payload_hex"))
        send.payload = parse_payload_hex(string_field(c, "payload_hex", cctx), cctx);
      if (c.contains("voltage_v")) send.voltage_v = decimal_field(c, "voltage_v", cctx);
      cs.command = std::move(send);
    } else if (kind == "IRQReason") {
      cs.command = sim::IrqReason{};
    } else {
      throw ParseError(cctx + ": unknown command '" + kind + "'");
    }
    sc.commands.push_back(std::move(cs));
  }
  return sc;
}

AppConfig load_app_config(const std::filesystem::path& dir) {
  AppConfig app;
  app.power = load_power_model(dir / "power_tables.json");
  app.reference_transactions = load_reference_transactions(dir / "power_tables.json");
  app.presets = load_link_presets(dir / "link_presets.json");
  app.waketag = load_waketag(dir / "waketag.json");
  return app;
}

}  // namespace wakemod
