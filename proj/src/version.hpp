#pragma once

namespace clo {

inline constexpr const char* version_string = "0.1.0";

}
