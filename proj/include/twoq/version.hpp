#pragma once

namespace twoq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace twoq
