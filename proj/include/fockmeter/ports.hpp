#pragma once

namespace fockmeter {

// The two beamsplitter output ports.
enum class OutputPort { C, D };

inline const char* to_string(OutputPort port) { return port == OutputPort::C ? "C" : "D"; }

}  // namespace fockmeter
