#pragma once

namespace clab {
inline constexpr const char* kToolVersion = "0.1.0";
}
