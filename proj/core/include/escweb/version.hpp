#pragma once

namespace escweb {

inline constexpr const char* kVersion = "0.1.0";

}
