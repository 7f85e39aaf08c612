#pragma once

namespace soliton {

inline constexpr const char* kToolName = "soliton";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace soliton
