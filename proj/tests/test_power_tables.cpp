#include <doctest.h>

#include "wakemod/errors.hpp"
#include "wakemod/power_tables.hpp"

#include <map>

using namespace wakemod;

namespace {

Rational uW(const char* s) { return rational_from_decimal(s) / 1000000; }
Rational mW(const char* s) { return rational_from_decimal(s) / 1000; }
Rational uJ(const char* s) { return rational_from_decimal(s) / 1000000; }

IdleListenTable published_idle() {
  return IdleListenTable::from_rows({
      {1024, uW("6.88")},
      {2048, uW("10.08")},
      {4096, uW("16.54")},
      {8192, uW("29.41")},
      {16384, uW("55.01")},
      {32768, uW("105.88")},
  });
}

TxTable published_tx() {
  return TxTable::from_rows({
      {rational_from_decimal("1.8"), {rational_from_decimal("2.78"), mW("26.08")}},
      {rational_from_decimal("2.0"), {rational_from_decimal("4.98"), mW("34.46")}},
      {rational_from_decimal("2.5"), {rational_from_decimal("8.32"), mW("58.68")}},
      {rational_from_decimal("2.75"), {rational_from_decimal("9.31"), mW("73.04")}},
      {rational_from_decimal("3.0"), {rational_from_decimal("10.10"), mW("88.44")}},
      {rational_from_decimal("3.3"), {rational_from_decimal("10.92"), mW("108.54")}},
  });
}

}  // namespace

TEST_CASE("idle listening lookups return the published rows") {
  const IdleListenTable idle = published_idle();
  CHECK(idle.power_w(1024) == uW("6.88"));
  CHECK(idle.power_w(4096) == uW("16.54"));
  CHECK(idle.power_w(32768) == uW("105.88"));
  CHECK_THROWS_AS(idle.power_w(512), UnsupportedRateError);
  CHECK_THROWS_AS(idle.power_w(256), UnsupportedRateError);
  CHECK_THROWS_AS(idle.power_w(3000), UnsupportedRateError);
}

TEST_CASE("idle table construction is strict") {
  std::map<int, Rational> rows = published_idle().rows();

  auto missing = rows;
  missing.erase(2048);
  CHECK_THROWS_AS(IdleListenTable::from_rows(missing), ConfigError);

  auto extra = rows;
  extra[512] = uW("3");
  CHECK_THROWS_AS(IdleListenTable::from_rows(extra), ConfigError);

  auto unordered = rows;
  unordered[16384] = uW("200");  // would exceed the 32768 figure
  CHECK_THROWS_AS(IdleListenTable::from_rows(unordered), ConfigError);

  auto negative = rows;
  negative[1024] = uW("-1");
  CHECK_THROWS_AS(IdleListenTable::from_rows(negative), ConfigError);
}

TEST_CASE("transmitter rows are exact and interpolation is linear") {
  const TxTable tx = published_tx();

  const TxTable::Row at18 = tx.at(rational_from_decimal("1.8"));
  CHECK(at18.tx_power_dbm == rational_from_decimal("2.78"));
  CHECK(at18.consumption_w == mW("26.08"));

  const TxTable::Row at30 = tx.at(Rational(3));
  CHECK(at30.tx_power_dbm == rational_from_decimal("10.10"));
  CHECK(at30.consumption_w == mW("88.44"));

  // Midpoint of the 1.8 V and 2.0 V rows, exactly.
  const TxTable::Row at19 = tx.at(rational_from_decimal("1.9"));
  CHECK(at19.tx_power_dbm == rational_from_decimal("3.88"));
  CHECK(at19.consumption_w == mW("30.27"));

  // Interpolation is exact rational arithmetic: 2.9 V sits 2/5 into the
  // 2.75..3.0 gap.
  const TxTable::Row at29 = tx.at(rational_from_decimal("2.9"));
  CHECK(at29.tx_power_dbm ==
        rational_from_decimal("9.31") +
            (rational_from_decimal("10.10") - rational_from_decimal("9.31")) *
                Rational(3, 5));

  CHECK(tx.min_voltage() == rational_from_decimal("1.8"));
  CHECK(tx.max_voltage() == rational_from_decimal("3.3"));
  CHECK_THROWS_AS(tx.at(rational_from_decimal("1.79")), OutOfRangeError);
  CHECK_THROWS_AS(tx.at(rational_from_decimal("3.31")), OutOfRangeError);
  CHECK_THROWS_AS(tx.at(Rational(0)), OutOfRangeError);
}

TEST_CASE("transmitter table needs two strictly increasing rows") {
  CHECK_THROWS_AS(TxTable::from_rows({{Rational(2), {Rational(5), Rational(1, 100)}}}),
                  ConfigError);

  // Consumption not increasing with voltage.
  CHECK_THROWS_AS(TxTable::from_rows({
                      {Rational(2), {Rational(5), Rational(2, 100)}},
                      {Rational(3), {Rational(6), Rational(1, 100)}},
                  }),
                  ConfigError);

  // Emitted power not increasing either.
  CHECK_THROWS_AS(TxTable::from_rows({
                      {Rational(2), {Rational(6), Rational(1, 100)}},
                      {Rational(3), {Rational(5), Rational(2, 100)}},
                  }),
                  ConfigError);
}

TEST_CASE("operation cost table covers all six operations") {
  std::map<AuxOp, AuxOpTable::Cost> rows = {
      {AuxOp::WhoAmI, {uJ("26.59"), rational_from_decimal("0.0159")}},
      {AuxOp::SetupWuR, {rational_from_decimal("0.00114"), rational_from_decimal("0.5642")}},
      {AuxOp::SendWucOverhead, {uJ("106.15"), rational_from_decimal("0.0257")}},
      {AuxOp::IrqReason, {uJ("57.54"), rational_from_decimal("0.0189")}},
      {AuxOp::IrqNoPayload, {uJ("15.88"), rational_from_decimal("0.0074")}},
      {AuxOp::IrqPayload6, {uJ("46.64"), rational_from_decimal("0.0196")}},
  };
  const AuxOpTable aux = AuxOpTable::from_rows(rows);
  CHECK(aux.at(AuxOp::SetupWuR).energy_j == rational_from_decimal("0.00114"));
  CHECK(aux.at(AuxOp::IrqPayload6).duration_s == rational_from_decimal("0.0196"));

  auto incomplete = rows;
  incomplete.erase(AuxOp::IrqReason);
  CHECK_THROWS_AS(AuxOpTable::from_rows(incomplete), ConfigError);

  auto nonpositive = rows;
  nonpositive[AuxOp::WhoAmI].energy_j = Rational(0);
  CHECK_THROWS_AS(AuxOpTable::from_rows(nonpositive), ConfigError);
}

TEST_CASE("operation names match the published table") {
  CHECK(aux_op_name(AuxOp::WhoAmI) == "WhoAmI");
  CHECK(aux_op_name(AuxOp::SetupWuR) == "SetupWuR");
  CHECK(aux_op_name(AuxOp::SendWucOverhead) == "SendWuC_overhead");
  CHECK(aux_op_name(AuxOp::IrqReason) == "IRQReason");
  CHECK(aux_op_name(AuxOp::IrqNoPayload) == "IRQ_no_payload");
  CHECK(aux_op_name(AuxOp::IrqPayload6) == "IRQ_payload6");
}
