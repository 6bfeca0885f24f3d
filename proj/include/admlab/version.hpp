#pragma once

#include <array>
#include <string_view>
#include <utility>

namespace admlab {

inline constexpr std::string_view version = "0.4.0";

inline constexpr std::array<std::pair<std::string_view, std::string_view>, 6> module_versions{{
    {"orlicz", "0.4.0"},
    {"spectral", "0.4.0"},
    {"signals", "0.3.1"},
    {"admissibility", "0.4.0"},
    {"certify", "0.4.0"},
    {"cli", "0.2.0"},
}};

}  // namespace admlab
