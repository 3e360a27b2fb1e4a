#pragma once

#include <numbers>

// CODATA 2018 values, SI units.
namespace recqed::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double c = 299792458.0;               // m/s
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double e = 1.602176634e-19;           // C
inline constexpr double m_e = 9.1093837015e-31;        // kg
inline constexpr double epsilon0 = 8.8541878128e-12;   // F/m

}  // namespace recqed::constants
