#pragma once

namespace fedcarbon {

inline constexpr const char* version = "0.1.0";

}
