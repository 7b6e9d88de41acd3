#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wakemod {

// Julian year; keeps day and year figures consistent.
inline constexpr double kSecondsPerYear = 365.25 * 86400.0;
inline constexpr double kSecondsPerDay = 86400.0;

struct Battery {
  double capacity_mah = 0.0;
  double nominal_voltage_v = 0.0;
  double self_discharge_per_year = 0.0;  // fraction of capacity lost per year

  double energy_j() const { return capacity_mah * 3.6 * nominal_voltage_v; }
  // Self-discharge as a constant drain, linear in time.
  double self_discharge_w() const {
    return self_discharge_per_year * energy_j() / kSecondsPerYear;
  }
};

// Recurring lump-energy event, rate_hz = 0 means it never fires.
struct DutyEvent {
  std::string label;
  double energy_j = 0.0;
  double rate_hz = 0.0;
};

struct DutyProfile {
  double idle_power_w = 0.0;
  std::vector<DutyEvent> events;
};

// idle power plus sum(energy * rate); excludes battery self-discharge.
double average_power_w(const DutyProfile& profile);

struct LifetimeReport {
  double lifetime_s = 0.0;
  bool infinite = false;
  double average_power_w = 0.0;
  double self_discharge_w = 0.0;
  // Per-source average power: idle first, then one entry per event. Sums to
  // average_power_w.
  std::vector<std::pair<std::string, double>> breakdown_w;

  double lifetime_days() const { return lifetime_s / kSecondsPerDay; }
  double lifetime_years() const { return lifetime_s / kSecondsPerYear; }
};

// lifetime = battery energy / (average power + self-discharge drain). A
// profile with zero total drain reports the infinite sentinel.
LifetimeReport project_lifetime(const Battery& battery, const DutyProfile& profile);

struct LifetimeSweepRow {
  double rate_hz;
  double average_power_w;
  double lifetime_s;
  double lifetime_years;
};

// Lifetime as a function of how often `per_update_j` is spent, on top of
// the base profile.
std::vector<LifetimeSweepRow> lifetime_sweep(const Battery& battery,
                                             const DutyProfile& base,
                                             double per_update_j,
                                             const std::vector<double>& rates_hz);

// Log-spaced grid from lo to hi inclusive; lo and hi must be positive.
std::vector<double> log_spaced(double lo, double hi, int points);

}  // namespace wakemod
