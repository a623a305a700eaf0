#pragma once

namespace csvortex {

inline constexpr const char* kVersion = "0.1.0";

}
