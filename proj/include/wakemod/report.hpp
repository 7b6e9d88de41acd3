#pragma once

#include "wakemod/config.hpp"
#include "wakemod/power_tables.hpp"
#include "wakemod/rational.hpp"
#include "wakemod/transaction.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace wakemod {

// Tolerance for reproducing published transaction figures, which are
// rounded to two decimals in their units.
inline constexpr double kReferenceRelTol = 0.005;

// "%.10g" double formatting; stable across runs for CSV diffing.
std::string format_double(double value);

// Value formatted back into the units the tables publish: idle power in µW,
// consumption in mW, operation energy in µJ below 1 mJ and mJ above,
// durations in ms. Exact decimals in, exact decimals out.
std::string format_power_uw(const Rational& power_w);
std::string format_power_mw(const Rational& power_w);
std::string format_energy(const Rational& energy_j);
std::string format_duration_ms(const Rational& duration_s);

// Published-figure view: the same quantities rounded half away from zero to
// two decimals, which is how the characterization write-ups quote them.
std::string format_energy_2dp(const Rational& energy_j);
std::string format_duration_ms_2dp(const Rational& duration_s);

// The three characterization tables, rendered from the loaded model.
void print_power_tables(std::ostream& out, const PowerModel& pm);

// Whole-transaction figures recomputed from the cost model for each
// published configuration, quoted at the published rounding.
void print_derived_transactions(std::ostream& out, const PowerModel& pm,
                                const std::vector<ReferenceTransaction>& refs);

struct ReferenceCheck {
  std::string name;
  double expected;
  double actual;
  bool ok;
};

// Recomputes each published transaction from the cost model and compares at
// kReferenceRelTol. Used both for reporting and as the CLI exit status.
std::vector<ReferenceCheck> check_reference_transactions(
    const PowerModel& pm, const std::vector<ReferenceTransaction>& refs);

void print_reference_checks(std::ostream& out, const std::vector<ReferenceCheck>& checks);

void print_transaction(std::ostream& out, const std::string& title,
                       const TransactionPart& part);

}  // namespace wakemod
