#pragma once

namespace vcnet {

inline constexpr const char* tool_name = "vcnet";
inline constexpr const char* tool_version = "0.1.0";

}  // namespace vcnet
