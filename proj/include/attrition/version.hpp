#pragma once

namespace attrition {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace attrition
