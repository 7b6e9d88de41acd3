#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace wakemod {

// Log-distance channel plus a logistic delivery curve, calibrated against
// measured packet delivery anchors. All link math runs in doubles; the dB
// domain has no exact-arithmetic requirement.
struct LinkParams {
  double carrier_freq_hz = 868.35e6;
  double tx_antenna_gain_dbi = -2.1;
  double rx_antenna_gain_dbi = -2.1;
  double sensitivity_dbm = -72.62;
  double path_loss_exponent = 2.0;
  double reference_distance_m = 1.0;

  // pdr(margin) = 1 / (1 + exp(-(margin - pdr_midpoint_db) / pdr_slope_db))
  double pdr_midpoint_db = 0.0;
  double pdr_slope_db = 1.0;

  // Hard delivery limit seen in the field measurements; beyond it the PDR
  // is zero no matter what the logistic says.
  std::optional<double> max_range_m;
};

// Free-space loss at the reference distance extended with the log-distance
// term: 20 log10(4 pi d0 f / c) + 10 n log10(d / d0), in dB.
double path_loss_db(double distance_m, const LinkParams& p);

double rssi_dbm(double distance_m, double tx_power_dbm, const LinkParams& p);

inline double link_margin_db(double rssi, const LinkParams& p) {
  return rssi - p.sensitivity_dbm;
}

// Logistic curve only; no range cutoff.
double pdr_from_margin(double margin_db, const LinkParams& p);

// Full delivery model: logistic over the distance-derived margin, zero
// beyond max_range_m.
double pdr_at_distance(double distance_m, double tx_power_dbm, const LinkParams& p);

// Fits midpoint and slope so the logistic passes exactly through two
// (margin_db, pdr) anchors, or least-squares through more. Anchor PDRs must
// lie strictly inside (0, 1) and the fit must come out increasing.
struct PdrFit {
  double midpoint_db;
  double slope_db;
};
PdrFit calibrate_pdr(const std::vector<std::pair<double, double>>& anchors);

// One Bernoulli delivery draw. The engine form lets a caller run trial
// sequences; the seed form is a deterministic one-shot.
bool deliver(double distance_m, double tx_power_dbm, const LinkParams& p,
             std::mt19937_64& rng);
bool deliver(double distance_m, double tx_power_dbm, const LinkParams& p,
             std::uint64_t seed);

// Uniform in [0, 1) from the top 53 bits; identical across platforms, which
// keeps seeded runs reproducible everywhere.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace wakemod
