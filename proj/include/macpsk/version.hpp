#pragma once

namespace macpsk {

inline constexpr const char* kVersion = "macpsk 0.1.0";

}  // namespace macpsk
