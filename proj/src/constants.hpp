#pragma once

namespace cqnc {

// CODATA 2018 defined values.
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J/K
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace cqnc
