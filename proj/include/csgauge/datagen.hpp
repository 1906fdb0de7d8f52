#pragma once

#include <cstdint>

#include "csgauge/grid.hpp"

namespace csgauge {

/// Seeded sum of periodised Gaussian packets with plane-wave carriers.
///
/// Packet centres sit at the box centre plus offsets drawn in physical units,
/// so the same seed gives the same physical profile on boxes of different
/// size. The result is band-limited to the dealiasing band.
struct PacketSpec {
    int packets = 2;
    double amplitude = 0.1;   ///< peak modulus of each packet
    double width = 1.0;       ///< Gaussian standard deviation
    double max_carrier = 1.5; ///< carrier wavevector components in [-max, max]
    double spread = 1.0;      ///< centre offsets in [-spread, spread]^2
};

ScalarField gaussian_packets(const Grid2D& grid, const PacketSpec& spec, std::uint64_t seed, bool real_valued);

struct CsdData {
    SpinorField psi0;
    ScalarField a0;
    ScalarField divpot;
};

/// Spinor from `spinor`, real a0 and divpot from `gauge` (amplitudes of zero disable them).
CsdData random_csd_data(const Grid2D& grid, const PacketSpec& spinor, const PacketSpec& gauge, std::uint64_t seed);

struct CshData {
    ScalarField f, g;
    ScalarField a0;
    ScalarField divpot;
};

/// Scalar data (f, g) from `scalar`, gauge data as above. With `zero_mean`
/// the constraint source is made exactly mean-free by adjusting g.
CshData random_csh_data(const Grid2D& grid, const PacketSpec& scalar, const PacketSpec& gauge, std::uint64_t seed,
                        bool zero_mean = true);

}  // namespace csgauge
