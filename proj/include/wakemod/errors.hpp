#pragma once

#include <stdexcept>
#include <string>

namespace wakemod {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// LFSR / spreading-code construction failures (non-primitive taps, bad seed).
class CodeError : public Error {
 public:
  using Error::Error;
};

// Invalid radio configuration, frame, or scenario parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Data rate without a published idle-listening figure.
class UnsupportedRateError : public Error {
 public:
  using Error::Error;
};

// Supply voltage or distance outside the characterized range.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Preamble detected but the stream ends before the address completes.
class MalformedFrameError : public Error {
 public:
  using Error::Error;
};

// Transmission requested at a chip rate where transmitter auto-shutdown
// can corrupt the message.
class AutoShutdownRiskError : public Error {
 public:
  using Error::Error;
};

// Host command issued without first pulling SDN low.
class NoResponseError : public Error {
 public:
  using Error::Error;
};

// Simulation misuse: scheduling in the past, device mid-transaction.
class SimError : public Error {
 public:
  using Error::Error;
};

// Malformed data, config, or vector files.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace wakemod
