#include "wakemod/lifetime.hpp"

#include "wakemod/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace wakemod {

double average_power_w(const DutyProfile& profile) {
  if (profile.idle_power_w < 0.0) throw ConfigError("idle power must be >= 0");
  double total = profile.idle_power_w;
  for (const DutyEvent& e : profile.events) {
    if (e.energy_j < 0.0 || e.rate_hz < 0.0)
      throw ConfigError("event '" + e.label + "' needs energy >= 0 and rate >= 0");
    total += e.energy_j * e.rate_hz;
  }
  return total;
}

LifetimeReport project_lifetime(const Battery& battery, const DutyProfile& profile) {
  if (battery.capacity_mah <= 0.0 || battery.nominal_voltage_v <= 0.0)
    throw ConfigError("battery needs positive capacity and voltage");
  if (battery.self_discharge_per_year < 0.0)
    throw ConfigError("self-discharge rate must be >= 0");

  LifetimeReport report;
  report.average_power_w = average_power_w(profile);
  report.self_discharge_w = battery.self_discharge_w();
  report.breakdown_w.emplace_back("idle", profile.idle_power_w);
  for (const DutyEvent& e : profile.events)
    report.breakdown_w.emplace_back(e.label, e.energy_j * e.rate_hz);

  const double drain = report.average_power_w + report.self_discharge_w;
  if (drain == 0.0) {
    report.infinite = true;
    report.lifetime_s = std::numeric_limits<double>::infinity();
  } else {
    report.lifetime_s = battery.energy_j() / drain;
  }
  return report;
}

std::vector<LifetimeSweepRow> lifetime_sweep(const Battery& battery,
                                             const DutyProfile& base,
                                             double per_update_j,
                                             const std::vector<double>& rates_hz) {
  if (per_update_j < 0.0) throw ConfigError("per-update energy must be >= 0");
  std::vector<LifetimeSweepRow> rows;
  rows.reserve(rates_hz.size());
  for (double rate : rates_hz) {
    DutyProfile p = base;
    p.events.push_back({"update", per_update_j, rate});
    const LifetimeReport r = project_lifetime(battery, p);
    rows.push_back({rate, r.average_power_w, r.lifetime_s, r.lifetime_years()});
  }
  return rows;
}

std::vector<double> log_spaced(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > 0.0) || hi < lo)
    throw ConfigError("log grid needs 0 < lo <= hi");
  if (points < 2) throw ConfigError("log grid needs at least 2 points");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  const double step = (std::log(hi) - std::log(lo)) / (points - 1);
  for (int i = 0; i < points; ++i) grid.push_back(std::exp(std::log(lo) + step * i));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace wakemod
