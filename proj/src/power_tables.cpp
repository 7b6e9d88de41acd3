#include "wakemod/power_tables.hpp"

#include "wakemod/errors.hpp"

#include <array>
#include <iterator>

namespace wakemod {

IdleListenTable IdleListenTable::from_rows(const std::map<int, Rational>& rows) {
  constexpr std::array<int, 6> required = {1024, 2048, 4096, 8192, 16384, 32768};
  if (rows.size() != required.size())
    throw ConfigError("idle table needs exactly " + std::to_string(required.size()) +
                      " rows, got " + std::to_string(rows.size()));
  for (int rate : required)
    if (!rows.count(rate))
      throw ConfigError("idle table is missing the " + std::to_string(rate) +
                        " bit/s row");
  const Rational* prev = nullptr;
  for (const auto& [rate, power] : rows) {
    if (power <= Rational(0))
      throw ConfigError("idle power at " + std::to_string(rate) + " bit/s not positive");
    if (prev && !(*prev < power))
      throw ConfigError("idle power must increase with rate; violated at " +
                        std::to_string(rate) + " bit/s");
    prev = &power;
  }
  IdleListenTable t;
  t.rows_ = rows;
  return t;
}

const Rational& IdleListenTable::power_w(int rate_bps) const {
  auto it = rows_.find(rate_bps);
  if (it == rows_.end())
    throw UnsupportedRateError("no published idle consumption at " +
                               std::to_string(rate_bps) + " bit/s");
  return it->second;
}

TxTable TxTable::from_rows(const std::map<Rational, Row>& rows) {
  if (rows.size() < 2) throw ConfigError("tx table needs at least 2 rows");
  const Row* prev = nullptr;
  for (const auto& [voltage, row] : rows) {
    if (voltage <= Rational(0))
      throw ConfigError("tx table voltage " + decimal_string(voltage) + " not positive");
    if (row.consumption_w <= Rational(0))
      throw ConfigError("tx consumption at " + decimal_string(voltage) + " V not positive");
    if (prev) {
      if (!(prev->tx_power_dbm < row.tx_power_dbm))
        throw ConfigError("tx power must increase with voltage; violated at " +
                          decimal_string(voltage) + " V");
      if (!(prev->consumption_w < row.consumption_w))
        throw ConfigError("tx consumption must increase with voltage; violated at " +
                          decimal_string(voltage) + " V");
    }
    prev = &row;
  }
  TxTable t;
  t.rows_ = rows;
  return t;
}

TxTable::Row TxTable::at(const Rational& voltage_v) const {
  if (voltage_v < min_voltage() || voltage_v > max_voltage())
    throw OutOfRangeError("supply voltage " + decimal_string(voltage_v) +
                          " V outside characterized range [" +
                          decimal_string(min_voltage()) + ", " +
                          decimal_string(max_voltage()) + "]");
  auto hi = rows_.lower_bound(voltage_v);
  if (hi->first == voltage_v) return hi->second;
  auto lo = std::prev(hi);
  const Rational t = (voltage_v - lo->first) / (hi->first - lo->first);
  return {lo->second.tx_power_dbm +
              t * (hi->second.tx_power_dbm - lo->second.tx_power_dbm),
          lo->second.consumption_w +
              t * (hi->second.consumption_w - lo->second.consumption_w)};
}

const std::string& aux_op_name(AuxOp op) {
  static const std::array<std::string, 6> names = {
      "WhoAmI",       "SetupWuR",     "SendWuC_overhead",
      "IRQReason",    "IRQ_no_payload", "IRQ_payload6"};
  return names[static_cast<std::size_t>(op)];
}

AuxOpTable AuxOpTable::from_rows(const std::map<AuxOp, Cost>& rows) {
  for (AuxOp op : {AuxOp::WhoAmI, AuxOp::SetupWuR, AuxOp::SendWucOverhead,
                   AuxOp::IrqReason, AuxOp::IrqNoPayload, AuxOp::IrqPayload6})
    if (!rows.count(op))
      throw ConfigError("operation table is missing " + aux_op_name(op));
  for (const auto& [op, cost] : rows) {
    if (cost.energy_j <= Rational(0) || cost.duration_s <= Rational(0))
      throw ConfigError("operation " + aux_op_name(op) +
                        " needs positive energy and duration");
  }
  AuxOpTable t;
  t.rows_ = rows;
  return t;
}

const AuxOpTable::Cost& AuxOpTable::at(AuxOp op) const {
  return rows_.at(op);
}

}  // namespace wakemod
