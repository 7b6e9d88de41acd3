#pragma once

#include "wakemod/rational.hpp"

#include <string>
#include <vector>

namespace wakemod::sim {

// Continuous draw over [start, end) in a named state.
struct LedgerInterval {
  Rational start;
  Rational end;
  std::string state;
  Rational power_w;

  Rational energy_j() const { return power_w * (end - start); }
};

// Lump energy booked at an instant, for operations the power tables only
// characterize as (energy, duration) pairs.
struct LedgerEntry {
  Rational time;
  std::string op;
  Rational energy_j;
};

// Per-device energy account. Intervals tile [0, finalize horizon] without
// gaps or overlaps: set_state() closes the open interval and opens the next
// one, finalize() closes the last.
class EnergyLedger {
 public:
  EnergyLedger();

  void set_state(const Rational& time, std::string state, const Rational& power_w);
  void add_lump(const Rational& time, std::string op, const Rational& energy_j);
  void finalize(const Rational& horizon);

  bool finalized() const { return finalized_; }
  const std::vector<LedgerInterval>& intervals() const { return intervals_; }
  const std::vector<LedgerEntry>& lumps() const { return lumps_; }

  const std::string& open_state() const { return open_state_; }
  const Rational& open_power_w() const { return open_power_; }

  // Exact totals; valid once finalized.
  Rational total_energy_j() const;
  // Energy accrued in [from, to): interval overlaps are clipped exactly,
  // lumps count when from <= time < to.
  Rational energy_between(const Rational& from, const Rational& to) const;

 private:
  std::vector<LedgerInterval> intervals_;
  std::vector<LedgerEntry> lumps_;
  Rational open_start_{0};
  std::string open_state_ = "shutdown";
  Rational open_power_{0};
  bool finalized_ = false;
};

}  // namespace wakemod::sim
