#pragma once

namespace adlab {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSchemaVersion = "1";

}  // namespace adlab
