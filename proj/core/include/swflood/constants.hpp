#pragma once

namespace swflood {

inline constexpr double kGravity = 9.81;     // m/s^2
inline constexpr double kDryDepth = 1e-8;    // depths at or below this are treated as dry [m]
inline constexpr double kSurfaceTol = 1e-12; // absolute tolerance for free-surface solves [m]

}  // namespace swflood
