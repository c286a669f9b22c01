#pragma once

#include <string_view>

namespace pmg {

inline constexpr std::string_view kVersion = "pmgame/0.1.0";

} // namespace pmg
