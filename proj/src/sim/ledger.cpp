#include "wakemod/sim/ledger.hpp"

#include "wakemod/errors.hpp"

#include <algorithm>
#include <utility>

namespace wakemod::sim {

EnergyLedger::EnergyLedger() = default;

void EnergyLedger::set_state(const Rational& time, std::string state,
                             const Rational& power_w) {
  if (finalized_) throw SimError("ledger already finalized");
  if (time < open_start_)
    throw SimError("ledger state change at " + decimal_string(time) +
                   " s precedes the open interval at " + decimal_string(open_start_) +
                   " s");
  if (power_w < Rational(0)) throw SimError("negative power");
  if (time > open_start_) {
    intervals_.push_back({open_start_, time, open_state_, open_power_});
    open_start_ = time;
  }
  // Equal time replaces the open state without a zero-width interval.
  open_state_ = std::move(state);
  open_power_ = power_w;
}

void EnergyLedger::add_lump(const Rational& time, std::string op,
                            const Rational& energy_j) {
  if (finalized_) throw SimError("ledger already finalized");
  if (time < open_start_)
    throw SimError("lump at " + decimal_string(time) + " s precedes the open interval");
  if (energy_j < Rational(0)) throw SimError("negative lump energy");
  lumps_.push_back({time, std::move(op), energy_j});
}

void EnergyLedger::finalize(const Rational& horizon) {
  if (finalized_) throw SimError("ledger already finalized");
  if (horizon < open_start_)
    throw SimError("finalize horizon precedes the open interval");
  if (horizon > open_start_)
    intervals_.push_back({open_start_, horizon, open_state_, open_power_});
  open_start_ = horizon;
  finalized_ = true;
}

Rational EnergyLedger::total_energy_j() const {
  Rational total(0);
  for (const LedgerInterval& iv : intervals_) total += iv.energy_j();
  for (const LedgerEntry& e : lumps_) total += e.energy_j;
  return total;
}

Rational EnergyLedger::energy_between(const Rational& from, const Rational& to) const {
  if (to < from) throw SimError("energy window end precedes start");
  Rational total(0);
  for (const LedgerInterval& iv : intervals_) {
    const Rational lo = std::max(iv.start, from);
    const Rational hi = std::min(iv.end, to);
    if (hi > lo) total += iv.power_w * (hi - lo);
  }
  for (const LedgerEntry& e : lumps_)
    if (from <= e.time && e.time < to) total += e.energy_j;
  return total;
}

}  // namespace wakemod::sim
