#pragma once

#include "wakemod/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace wakemod {

// Idle-listening consumption per data rate. The module only has published
// figures for 1024..32768 bit/s; construction requires exactly those six
// rows with strictly increasing power.
class IdleListenTable {
 public:
  static IdleListenTable from_rows(const std::map<int, Rational>& power_w_by_rate);

  // Power in W while listening at rate_bps; UnsupportedRateError for rates
  // without a published figure.
  const Rational& power_w(int rate_bps) const;

  const std::map<int, Rational>& rows() const { return rows_; }

 private:
  std::map<int, Rational> rows_;
};

// Transmitter characterization per supply voltage: emitted power in dBm and
// drawn power in W. Queries between grid points interpolate both columns
// linearly; queries outside [min, max] voltage throw OutOfRangeError.
class TxTable {
 public:
  struct Row {
    Rational tx_power_dbm;
    Rational consumption_w;
  };

  static TxTable from_rows(const std::map<Rational, Row>& rows);

  Row at(const Rational& voltage_v) const;

  const std::map<Rational, Row>& rows() const { return rows_; }
  const Rational& min_voltage() const { return rows_.begin()->first; }
  const Rational& max_voltage() const { return rows_.rbegin()->first; }

 private:
  std::map<Rational, Row> rows_;
};

// Host-visible module operations with a fixed measured cost.
enum class AuxOp {
  WhoAmI,
  SetupWuR,
  SendWucOverhead,   // command handling and TX ramp before the first chip
  IrqReason,
  IrqNoPayload,      // receive-side interrupt handling, no payload block
  IrqPayload6,       // receive-side interrupt handling, 6-byte payload
};

const std::string& aux_op_name(AuxOp op);

class AuxOpTable {
 public:
  struct Cost {
    Rational energy_j;
    Rational duration_s;
  };

  static AuxOpTable from_rows(const std::map<AuxOp, Cost>& rows);

  const Cost& at(AuxOp op) const;
  const std::map<AuxOp, Cost>& rows() const { return rows_; }

 private:
  std::map<AuxOp, Cost> rows_;
};

struct PowerModel {
  IdleListenTable idle;
  TxTable tx;
  AuxOpTable aux;
};

}  // namespace wakemod
