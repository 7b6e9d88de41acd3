#pragma once

#include "wakemod/lifetime.hpp"
#include "wakemod/link.hpp"
#include "wakemod/power_tables.hpp"
#include "wakemod/rational.hpp"
#include "wakemod/sim/scenario.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace wakemod {

// A named channel model: physical parameters plus the delivery-curve
// calibration. The logistic midpoint/slope inside `params` are fitted at
// load time from the preset's measured (distance, pdr) anchors, shot at
// cal_tx_power_dbm.
struct LinkPreset {
  LinkParams params;
  double cal_tx_power_dbm = 0.0;
};

// Published whole-transaction figures the cost model must reproduce.
struct ReferenceTransaction {
  std::string name;
  int ldr = 0;
  int hdr = 0;
  int payload_bits = 0;
  Rational voltage_v;
  Rational sender_energy_uj;
  Rational sender_duration_ms;
  Rational receiver_energy_uj;
  Rational receiver_duration_ms;
};

// Published lifetime figure as an acceptance band.
struct LifetimeBand {
  std::string label;
  double period_s = 0.0;  // 0 = updates never fire
  double min_years = 0.0;
  double max_years = 0.0;
};

// The e-paper price-tag demonstrator: its system idle power, display
// refresh energy, the radio settings its updates arrive with, and the coin
// cell it runs from.
struct WakeTagConfig {
  double idle_power_w = 0.0;
  double display_update_j = 0.0;
  int ldr = 0;
  int hdr = 0;
  int payload_bits = 0;
  Battery battery;
  std::vector<LifetimeBand> reference_lifetimes;
};

struct AppConfig {
  PowerModel power;
  std::map<std::string, LinkPreset> presets;
  WakeTagConfig waketag;
  std::vector<ReferenceTransaction> reference_transactions;
};

PowerModel load_power_model(const std::filesystem::path& file);
std::vector<ReferenceTransaction> load_reference_transactions(
    const std::filesystem::path& file);
std::map<std::string, LinkPreset> load_link_presets(const std::filesystem::path& file);
WakeTagConfig load_waketag(const std::filesystem::path& file);
sim::Scenario load_scenario(const std::filesystem::path& file);

// Loads the standard file set (power_tables.json, link_presets.json,
// waketag.json) from a data directory.
AppConfig load_app_config(const std::filesystem::path& dir);

}  // namespace wakemod
