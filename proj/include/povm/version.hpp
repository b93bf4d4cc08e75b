#pragma once

#include <string_view>

namespace povm {

inline constexpr std::string_view k_version = "0.1.0";

}  // namespace povm
