#pragma once

namespace qwsearch {

inline constexpr const char* kToolName = "qwsearch";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace qwsearch
