#pragma once

namespace hstar {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hstar
