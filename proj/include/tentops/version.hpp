#pragma once

namespace tentops {

inline constexpr const char* kVersion = "0.1.0";

}
