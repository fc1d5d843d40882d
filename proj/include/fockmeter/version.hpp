#pragma once

namespace fockmeter {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fockmeter
