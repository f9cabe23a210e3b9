#pragma once

namespace rtprof {

inline constexpr const char* kToolName = "rtprof";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace rtprof
