#pragma once

#include <string_view>

namespace volcast {

inline constexpr std::string_view kToolName = "volcast";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace volcast
