#pragma once

#include <numbers>

namespace vsf {

// Euler's constant, 30 significant digits, rounded to binary64.
inline constexpr double kEulerGamma = 0.577215664901532860606512090082;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFourPiSquared = 4.0 * std::numbers::pi * std::numbers::pi;

}  // namespace vsf
