#include "wakemod/sim/device.hpp"

namespace wakemod::sim {

const char* host_command_name(const HostCommand& cmd) {
  struct Namer {
    const char* operator()(const WhoAmI&) const { return "WhoAmI"; }
    const char* operator()(const SetupWuR&) const { return "SetupWuR"; }
    const char* operator()(const SendWuC&) const { return "SendWuC"; }
    const char* operator()(const IrqReason&) const { return "IRQReason"; }
  };
  return std::visit(Namer{}, cmd);
}

}  // namespace wakemod::sim
