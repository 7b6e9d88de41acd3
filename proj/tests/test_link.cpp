#include <doctest.h>

#include "wakemod/errors.hpp"
#include "wakemod/link.hpp"

#include <cmath>
#include <random>

using namespace wakemod;

namespace {

constexpr double kCalTxDbm = 2.8;

LinkParams calibrated_params() {
  LinkParams p;  // defaults: 868.35 MHz, -2.1 dBi both ends, -72.62 dBm floor
  p.max_range_m = 130.0;
  const double m100 = link_margin_db(rssi_dbm(100.0, kCalTxDbm, p), p);
  const double m130 = link_margin_db(rssi_dbm(130.0, kCalTxDbm, p), p);
  const PdrFit fit = calibrate_pdr({{m100, 0.94}, {m130, 0.11}});
  p.pdr_midpoint_db = fit.midpoint_db;
  p.pdr_slope_db = fit.slope_db;
  return p;
}

}  // namespace

TEST_CASE("free-space reference loss at one metre") {
  const LinkParams p;
  CHECK(path_loss_db(1.0, p) == doctest::Approx(31.22167939433307).epsilon(1e-12));
  // Log-distance: +20 dB per decade at exponent 2.
  CHECK(path_loss_db(10.0, p) - path_loss_db(1.0, p) == doctest::Approx(20.0));
  CHECK(path_loss_db(100.0, p) - path_loss_db(10.0, p) == doctest::Approx(20.0));
  CHECK_THROWS_AS(path_loss_db(0.5, p), OutOfRangeError);
  CHECK_THROWS_AS(path_loss_db(0.0, p), OutOfRangeError);
}

TEST_CASE("received power at 100 m sits at the sensitivity floor") {
  const LinkParams p;
  const double rssi = rssi_dbm(100.0, kCalTxDbm, p);
  CHECK(rssi == doctest::Approx(-72.62167939433307).epsilon(1e-12));
  CHECK(std::abs(rssi - p.sensitivity_dbm) < 0.5);
  CHECK(link_margin_db(rssi, p) == doctest::Approx(rssi + 72.62));
}

TEST_CASE("a steeper path-loss exponent loses power faster") {
  LinkParams p;
  p.path_loss_exponent = 3.0;
  CHECK(path_loss_db(10.0, p) - path_loss_db(1.0, p) == doctest::Approx(30.0));
}

TEST_CASE("calibration reproduces its anchors") {
  const LinkParams p = calibrated_params();
  CHECK(pdr_at_distance(100.0, kCalTxDbm, p) == doctest::Approx(0.94).epsilon(1e-9));
  CHECK(pdr_at_distance(130.0, kCalTxDbm, p) == doctest::Approx(0.11).epsilon(1e-9));

  // Frozen fit, guarding against silent calibration drift.
  CHECK(p.pdr_slope_db == doctest::Approx(0.47061895133494996).epsilon(1e-9));
  CHECK(p.pdr_midpoint_db == doctest::Approx(-1.296604057917952).epsilon(1e-9));
}

TEST_CASE("delivery is strong near the sender and zero past the range limit") {
  const LinkParams p = calibrated_params();
  for (double d : {1.1, 10.0, 25.0, 50.0, 75.0, 100.0})
    CHECK(pdr_at_distance(d, kCalTxDbm, p) >= 0.94);

  CHECK(pdr_at_distance(130.01, kCalTxDbm, p) == 0.0);
  CHECK(pdr_at_distance(150.0, kCalTxDbm, p) == 0.0);
  CHECK(pdr_at_distance(200.0, kCalTxDbm, p) == 0.0);

  LinkParams open = p;
  open.max_range_m.reset();
  CHECK(pdr_at_distance(150.0, kCalTxDbm, open) > 0.0);
  CHECK(pdr_at_distance(150.0, kCalTxDbm, open) < 0.11);
}

TEST_CASE("delivery probability falls monotonically with distance") {
  const LinkParams p = calibrated_params();
  double prev = 1.0;
  for (double d = 1.0; d <= 130.0; d += 1.0) {
    const double pdr = pdr_at_distance(d, kCalTxDbm, p);
    CHECK(pdr <= prev);
    prev = pdr;
  }
}

TEST_CASE("more transmit power means more margin") {
  const LinkParams p = calibrated_params();
  CHECK(pdr_at_distance(120.0, 10.0, p) > pdr_at_distance(120.0, 2.8, p));
}

TEST_CASE("calibration rejects degenerate anchors") {
  CHECK_THROWS_AS(calibrate_pdr({{0.0, 0.94}}), ConfigError);
  CHECK_THROWS_AS(calibrate_pdr({{0.0, 0.0}, {1.0, 0.5}}), ConfigError);
  CHECK_THROWS_AS(calibrate_pdr({{0.0, 0.5}, {1.0, 1.0}}), ConfigError);
  CHECK_THROWS_AS(calibrate_pdr({{1.0, 0.5}, {1.0, 0.9}}), ConfigError);
  // Higher margin with lower delivery cannot fit an increasing curve.
  CHECK_THROWS_AS(calibrate_pdr({{0.0, 0.9}, {1.0, 0.2}}), ConfigError);
}

TEST_CASE("seeded delivery draws are deterministic and match the curve") {
  const LinkParams p = calibrated_params();
  CHECK(deliver(100.0, kCalTxDbm, p, 12345ull) == deliver(100.0, kCalTxDbm, p, 12345ull));

  std::mt19937_64 rng(123);
  int delivered = 0;
  const int trials = 2000;
  for (int i = 0; i < trials; ++i)
    delivered += deliver(100.0, kCalTxDbm, p, rng) ? 1 : 0;
  const double empirical = static_cast<double>(delivered) / trials;
  CHECK(std::abs(empirical - 0.94) < 0.03);  // ~5.6 sigma band

  for (int i = 0; i < 100; ++i) CHECK_FALSE(deliver(150.0, kCalTxDbm, p, rng));
}
