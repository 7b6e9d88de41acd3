#include "wakemod/codec.hpp"

#include "wakemod/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace wakemod {

namespace {

void append_bit(ChipStream& s, const MlsCode& code, int rate_bps, bool bit) {
  const Rational d = chip_period(rate_bps);
  for (int k = 0; k < kChipsPerBit; ++k) {
    const bool chip = code.chips[static_cast<std::size_t>(k)] != 0;
    s.push(bit ? chip : !chip, d);
  }
}

}  // namespace

Rational frame_airtime(const RadioConfig& cfg, bool has_payload) {
  Rational t = Rational(kChipsPerBit, cfg.ldr) +
               Rational(kAddressBits * kChipsPerBit, cfg.hdr);
  if (has_payload) t += Rational(kPayloadBits * kChipsPerBit, cfg.hdr);
  return t;
}

ChipStream encode_frame(const WucFrame& frame, const RadioConfig& cfg) {
  ChipStream s;
  append_bit(s, cfg.code, cfg.ldr, true);
  for (int b = kAddressBits - 1; b >= 0; --b)
    append_bit(s, cfg.code, cfg.hdr, ((frame.address() >> b) & 1) != 0);
  if (frame.has_payload()) {
    for (int byte = 0; byte < kPayloadBytes; ++byte)
      for (int b = 7; b >= 0; --b)
        append_bit(s, cfg.code, cfg.hdr,
                   ((frame.payload()[static_cast<std::size_t>(byte)] >> b) & 1) != 0);
  }
  return s;
}

double code_correlation(const ChipStream& stream, const RadioConfig& cfg,
                        const Rational& offset, int rate_bps) {
  int matches = 0;
  for (int k = 0; k < kChipsPerBit; ++k) {
    // Sample at the chip center so exact block alignment is insensitive to
    // boundary ties.
    const Rational t = offset + Rational(2 * k + 1, 2 * rate_bps);
    const bool expected = cfg.code.chips[static_cast<std::size_t>(k)] != 0;
    if (stream.level_at(t) == expected) ++matches;
  }
  return matches / static_cast<double>(kChipsPerBit);
}

std::optional<WucFrame> decode_stream(const ChipStream& stream, const RadioConfig& cfg,
                                      double threshold) {
  if (!(threshold > 0.5) || !(threshold <= 1.0))
    throw ConfigError("detect threshold must lie in (0.5, 1]");

  const Rational total = stream.total_duration();
  const Rational dl = chip_period(cfg.ldr);
  const Rational preamble_len = Rational(kChipsPerBit, cfg.ldr);

  // Slide in whole ldr chips and lock onto the first qualifying offset, so
  // a detectable preamble is never skipped in favor of a later one.
  std::optional<Rational> lock;
  for (Rational off(0); off + preamble_len <= total; off += dl) {
    if (code_correlation(stream, cfg, off, cfg.ldr) >= threshold) {
      lock = off;
      break;
    }
  }
  if (!lock) return std::nullopt;

  const Rational bit_len = Rational(kChipsPerBit, cfg.hdr);
  Rational t = *lock + preamble_len;
  if (total - t < bit_len * kAddressBits)
    throw MalformedFrameError("preamble detected but stream ends before the address");

  auto read_bit = [&](const Rational& at) {
    // >= 0.5 means at least as close to the code as to its complement.
    return code_correlation(stream, cfg, at, cfg.hdr) >= 0.5;
  };

  std::uint16_t address = 0;
  for (int b = 0; b < kAddressBits; ++b) {
    address = static_cast<std::uint16_t>((address << 1) | (read_bit(t) ? 1 : 0));
    t += bit_len;
  }

  if (total - t >= bit_len * kPayloadBits) {
    std::array<std::uint8_t, kPayloadBytes> bytes{};
    for (int byte = 0; byte < kPayloadBytes; ++byte) {
      for (int b = 7; b >= 0; --b) {
        if (read_bit(t))
          bytes[static_cast<std::size_t>(byte)] |= static_cast<std::uint8_t>(1u << b);
        t += bit_len;
      }
    }
    return WucFrame(address, bytes);
  }
  return WucFrame(address);
}

ChipStream chip_flip_noise(const ChipStream& stream, double flip_prob,
                           std::uint64_t seed) {
  if (flip_prob < 0.0 || flip_prob > 1.0)
    throw ConfigError("flip probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  ChipStream out;
  for (const Chip& c : stream.chips()) {
    const bool flip = uniform01() < flip_prob;
    out.push(flip ? !c.on : c.on, c.duration);
  }
  return out;
}

RadioConfig ChipVectorFile::config() const {
  if (taps.empty()) throw ParseError("chip vector: missing taps");
  const int order = *std::max_element(taps.begin(), taps.end());
  return {ldr, hdr, address, generate_mls(order, taps)};
}

WucFrame ChipVectorFile::frame() const {
  if (payload.empty()) return WucFrame(address);
  return {address, payload};
}

namespace {

std::string expect_key(std::istream& in, const std::string& key,
                       const std::filesystem::path& path) {
  std::string line;
  do {
    if (!std::getline(in, line))
      throw ParseError(path.string() + ": missing '" + key + "' line");
  } while (line.empty() || line[0] == '#');
  if (line.rfind(key + " ", 0) != 0)
    throw ParseError(path.string() + ": expected '" + key + "', got '" + line + "'");
  return line.substr(key.size() + 1);
}

int parse_int(const std::string& text, const std::string& key,
              const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path.string() + ": bad " + key + " value '" + text + "'");
  }
}

}  // namespace

ChipVectorFile read_chip_vector(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open chip vector " + path.string());

  ChipVectorFile v;
  v.ldr = parse_int(expect_key(in, "ldr", path), "ldr", path);
  v.hdr = parse_int(expect_key(in, "hdr", path), "hdr", path);
  v.address = static_cast<std::uint16_t>(parse_int(expect_key(in, "address", path),
                                                   "address", path));

  const std::string payload_text = expect_key(in, "payload", path);
  if (payload_text != "-") {
    if (payload_text.size() % 2 != 0)
      throw ParseError(path.string() + ": payload hex has odd length");
    for (std::size_t i = 0; i < payload_text.size(); i += 2)
      v.payload.push_back(static_cast<std::uint8_t>(
          parse_int("0x" + payload_text.substr(i, 2), "payload", path)));
  }

  std::stringstream taps_text(expect_key(in, "taps", path));
  std::string tap;
  while (std::getline(taps_text, tap, ','))
    v.taps.push_back(parse_int(tap, "taps", path));

  const int count = parse_int(expect_key(in, "chips", path), "chips", path);
  std::string line;
  while (static_cast<int>(v.chips.size()) < count && std::getline(in, line)) {
    for (char c : line) {
      if (c == '0' || c == '1')
        v.chips.push_back(static_cast<std::uint8_t>(c - '0'));
      else if (!std::isspace(static_cast<unsigned char>(c)))
        throw ParseError(path.string() + ": chip character '" + std::string(1, c) + "'");
    }
  }
  if (static_cast<int>(v.chips.size()) != count)
    throw ParseError(path.string() + ": expected " + std::to_string(count) +
                     " chips, found " + std::to_string(v.chips.size()));
  return v;
}

void write_chip_vector(const std::filesystem::path& path, const ChipVectorFile& v) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write chip vector " + path.string());
  out << "# wuc chip vector\n";
  out << "ldr " << v.ldr << "\n";
  out << "hdr " << v.hdr << "\n";
  char addr[8];
  std::snprintf(addr, sizeof addr, "0x%04X", v.address);
  out << "address " << addr << "\n";
  out << "payload ";
  if (v.payload.empty()) {
    out << "-";
  } else {
    for (std::uint8_t b : v.payload) {
      char hex[4];
      std::snprintf(hex, sizeof hex, "%02X", b);
      out << hex;
    }
  }
  out << "\n";
  out << "taps ";
  for (std::size_t i = 0; i < v.taps.size(); ++i)
    out << (i ? "," : "") << v.taps[i];
  out << "\n";
  out << "chips " << v.chips.size() << "\n";
  for (std::size_t i = 0; i < v.chips.size(); ++i) {
    out << static_cast<int>(v.chips[i]);
    if (i % 32 == 31 || i + 1 == v.chips.size()) out << "\n";
  }
}

}  // namespace wakemod
