#pragma once

namespace freeze {

inline constexpr const char* kToolName = "freezeset";
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace freeze
