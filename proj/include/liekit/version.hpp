#pragma once

namespace liekit {
inline constexpr const char* kVersion = "1.0.0";
}
