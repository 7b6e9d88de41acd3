#include "wakemod/link.hpp"

#include "wakemod/errors.hpp"

#include <cmath>
#include <string>

namespace wakemod {

namespace {

constexpr double kSpeedOfLight = 299'792'458.0;

}  // namespace

double path_loss_db(double distance_m, const LinkParams& p) {
  if (!(distance_m >= p.reference_distance_m))
    throw OutOfRangeError("distance " + std::to_string(distance_m) +
                          " m below the " + std::to_string(p.reference_distance_m) +
                          " m reference");
  const double pl0 = 20.0 * std::log10(4.0 * M_PI * p.reference_distance_m *
                                       p.carrier_freq_hz / kSpeedOfLight);
  return pl0 + 10.0 * p.path_loss_exponent *
                   std::log10(distance_m / p.reference_distance_m);
}

double rssi_dbm(double distance_m, double tx_power_dbm, const LinkParams& p) {
  return tx_power_dbm + p.tx_antenna_gain_dbi + p.rx_antenna_gain_dbi -
         path_loss_db(distance_m, p);
}

double pdr_from_margin(double margin_db, const LinkParams& p) {
  return 1.0 / (1.0 + std::exp(-(margin_db - p.pdr_midpoint_db) / p.pdr_slope_db));
}

double pdr_at_distance(double distance_m, double tx_power_dbm, const LinkParams& p) {
  if (p.max_range_m && distance_m > *p.max_range_m) return 0.0;
  const double margin = link_margin_db(rssi_dbm(distance_m, tx_power_dbm, p), p);
  return pdr_from_margin(margin, p);
}

PdrFit calibrate_pdr(const std::vector<std::pair<double, double>>& anchors) {
  if (anchors.size() < 2)
    throw ConfigError("need at least two (margin, pdr) anchors");
  // logit(pdr) = (margin - midpoint) / slope is linear in the margin, so
  // this is an ordinary least-squares line through (margin, logit) points;
  // with two anchors the line is exact.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [margin, pdr] : anchors) {
    if (!(pdr > 0.0) || !(pdr < 1.0))
      throw ConfigError("anchor pdr " + std::to_string(pdr) +
                        " must lie strictly inside (0, 1)");
    const double y = std::log(pdr / (1.0 - pdr));
    sx += margin;
    sy += y;
    sxx += margin * margin;
    sxy += margin * y;
  }
  const double n = static_cast<double>(anchors.size());
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw ConfigError("anchor margins must be distinct");
  const double a = (n * sxy - sx * sy) / det;  // logit per dB
  const double b = (sy * sxx - sx * sxy) / det;
  if (!(a > 0.0))
    throw ConfigError("anchors do not describe a pdr that improves with margin");
  return {.midpoint_db = -b / a, .slope_db = 1.0 / a};
}

bool deliver(double distance_m, double tx_power_dbm, const LinkParams& p,
             std::mt19937_64& rng) {
  const double pdr = pdr_at_distance(distance_m, tx_power_dbm, p);
  return uniform01(rng) < pdr;
}

bool deliver(double distance_m, double tx_power_dbm, const LinkParams& p,
             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return deliver(distance_m, tx_power_dbm, p, rng);
}

}  // namespace wakemod
