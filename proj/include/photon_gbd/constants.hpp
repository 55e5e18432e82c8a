// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace photon_gbd::constants {

// SI defining constants (exact since the 2019 redefinition).
inline constexpr double planck_h = 6.62607015e-34;    // J s
inline constexpr double boltzmann_k = 1.380649e-23;   // J / K

}  // namespace photon_gbd::constants
