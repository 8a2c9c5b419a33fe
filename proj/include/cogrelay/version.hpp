#pragma once

namespace cogrelay {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cogrelay
