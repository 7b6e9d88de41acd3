#include "wakemod/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>

namespace wakemod {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string format_power_uw(const Rational& power_w) {
  return decimal_string(power_w * Rational(1000000)) + " uW";
}

std::string format_power_mw(const Rational& power_w) {
  return decimal_string(power_w * Rational(1000)) + " mW";
}

std::string format_energy(const Rational& energy_j) {
  if (energy_j >= Rational(1, 1000))
    return decimal_string(energy_j * Rational(1000)) + " mJ";
  return decimal_string(energy_j * Rational(1000000)) + " uJ";
}

std::string format_duration_ms(const Rational& duration_s) {
  return decimal_string(duration_s * Rational(1000)) + " ms";
}

std::string format_energy_2dp(const Rational& energy_j) {
  if (energy_j >= Rational(1, 1000))
    return decimal_string(energy_j * Rational(1000), 2) + " mJ";
  return decimal_string(energy_j * Rational(1000000), 2) + " uJ";
}

std::string format_duration_ms_2dp(const Rational& duration_s) {
  return decimal_string(duration_s * Rational(1000), 2) + " ms";
}

void print_power_tables(std::ostream& out, const PowerModel& pm) {
  out << "Idle listening consumption\n";
  out << "  rate_bps   power\n";
  for (const auto& [rate, power] : pm.idle.rows()) {
    out << "  " << std::left << std::setw(10) << rate << " "
        << format_power_uw(power) << "\n";
  }

  out << "\nTransmitter characterization\n";
  out << "  voltage_v  tx_power    consumption\n";
  for (const auto& [voltage, row] : pm.tx.rows()) {
    out << "  " << std::left << std::setw(10) << decimal_string(voltage) << " "
        << std::setw(11) << (decimal_string(row.tx_power_dbm) + " dBm")
        << " " << format_power_mw(row.consumption_w) << "\n";
  }

  out << "\nOperation costs\n";
  out << "  op                energy      duration\n";
  for (const auto& [op, cost] : pm.aux.rows()) {
    out << "  " << std::left << std::setw(17) << aux_op_name(op) << " "
        << std::setw(11) << format_energy(cost.energy_j) << " "
        << format_duration_ms(cost.duration_s) << "\n";
  }
}

void print_derived_transactions(std::ostream& out, const PowerModel& pm,
                                const std::vector<ReferenceTransaction>& refs) {
  out << "Derived wake-up transactions\n";
  for (const ReferenceTransaction& ref : refs) {
    const RadioConfig cfg(ref.ldr, ref.hdr, 0);
    const TransactionPart sender =
        sender_cost(pm, cfg, ref.payload_bits, ref.voltage_v);
    const TransactionPart receiver = receiver_cost(pm, cfg, ref.payload_bits);
    out << "  " << std::left << std::setw(15) << ref.name << " sender "
        << format_energy_2dp(sender.energy_j) << " / "
        << format_duration_ms_2dp(sender.duration_s) << ", receiver "
        << format_energy_2dp(receiver.energy_j) << " / "
        << format_duration_ms_2dp(receiver.duration_s) << "\n";
  }
}

std::vector<ReferenceCheck> check_reference_transactions(
    const PowerModel& pm, const std::vector<ReferenceTransaction>& refs) {
  std::vector<ReferenceCheck> checks;
  for (const ReferenceTransaction& ref : refs) {
    const RadioConfig cfg(ref.ldr, ref.hdr, 0);
    const TransactionPart sender =
        sender_cost(pm, cfg, ref.payload_bits, ref.voltage_v);
    const TransactionPart receiver = receiver_cost(pm, cfg, ref.payload_bits);

    auto add = [&checks, &ref](const char* what, const Rational& actual,
                               const Rational& expected) {
      const double e = to_double(expected);
      const double a = to_double(actual);
      checks.push_back({ref.name + " " + what, e, a,
                        std::abs(a - e) <= kReferenceRelTol * std::abs(e)});
    };
    const Rational uj(1000000);
    const Rational ms(1000);
    add("sender energy (uJ)", sender.energy_j * uj, ref.sender_energy_uj);
    add("sender duration (ms)", sender.duration_s * ms, ref.sender_duration_ms);
    add("receiver energy (uJ)", receiver.energy_j * uj, ref.receiver_energy_uj);
    add("receiver duration (ms)", receiver.duration_s * ms, ref.receiver_duration_ms);
  }
  return checks;
}

void print_reference_checks(std::ostream& out,
                            const std::vector<ReferenceCheck>& checks) {
  for (const ReferenceCheck& c : checks) {
    out << "  " << (c.ok ? "[ok]  " : "[FAIL] ") << std::left << std::setw(36)
        << c.name << " expected " << format_double(c.expected) << ", got "
        << format_double(c.actual) << "\n";
  }
}

void print_transaction(std::ostream& out, const std::string& title,
                       const TransactionPart& part) {
  out << title << "\n";
  for (const PhaseRow& row : part.breakdown) {
    out << "  " << std::left << std::setw(18) << row.label << " "
        << std::setw(13) << format_duration_ms(row.duration_s);
    if (row.power_w != Rational(0))
      out << " @ " << std::setw(12) << format_power_mw(row.power_w);
    else
      out << "   " << std::setw(14) << "";
    out << " " << format_energy(row.energy_j) << "\n";
  }
  out << "  total: " << format_energy(part.energy_j) << " over "
      << format_duration_ms(part.duration_s) << "\n";
}

}  // namespace wakemod
