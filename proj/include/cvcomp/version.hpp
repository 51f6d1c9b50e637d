#pragma once

namespace cvcomp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cvcomp
