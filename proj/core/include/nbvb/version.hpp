#pragma once

namespace nbvb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nbvb
