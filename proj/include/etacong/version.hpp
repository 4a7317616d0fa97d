#pragma once

namespace etacong {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace etacong
