#include "csgauge/datagen.hpp"

#include <cmath>
#include <random>

#include "csgauge/csh.hpp"
#include "csgauge/nullforms.hpp"
#include "csgauge/spectral.hpp"

namespace csgauge {

namespace {

// Signed periodic distance from c to x on a circle of length L.
double wrap(double x, double c, double L) {
    double d = std::fmod(x - c, L);
    if (d > 0.5 * L) d -= L;
    if (d < -0.5 * L) d += L;
    return d;
}

}  // namespace

ScalarField gaussian_packets(const Grid2D& grid, const PacketSpec& spec, std::uint64_t seed, bool real_valued) {
    ScalarField f(grid);
    if (spec.amplitude == 0.0 || spec.packets <= 0) return f;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double L = grid.length();
    for (int p = 0; p < spec.packets; ++p) {
        const double c1 = 0.5 * L + spec.spread * unit(rng);
        const double c2 = 0.5 * L + spec.spread * unit(rng);
        const double k1 = spec.max_carrier * unit(rng);
        const double k2 = spec.max_carrier * unit(rng);
        const double phase = std::numbers::pi * unit(rng);
        const double w2 = 2.0 * spec.width * spec.width;
        for (int i1 = 0; i1 < grid.n1(); ++i1)
            for (int i2 = 0; i2 < grid.n2(); ++i2) {
                const double d1 = wrap(grid.x1(i1), c1, L), d2 = wrap(grid.x2(i2), c2, L);
                const double env = spec.amplitude * std::exp(-(d1 * d1 + d2 * d2) / w2);
                const double arg = k1 * d1 + k2 * d2 + phase;
                f.at(i1, i2) += real_valued ? cplx{env * std::cos(arg), 0.0} : std::polar(env, arg);
            }
    }
    f = dealias(f).physical();
    if (real_valued)
        for (auto& z : f.values()) z = {z.real(), 0.0};
    return f;
}

CsdData random_csd_data(const Grid2D& grid, const PacketSpec& spinor, const PacketSpec& gauge, std::uint64_t seed) {
    return CsdData{SpinorField(gaussian_packets(grid, spinor, trial_seed(seed, 0), false),
                               gaussian_packets(grid, spinor, trial_seed(seed, 1), false)),
                   gaussian_packets(grid, gauge, trial_seed(seed, 2), true),
                   gaussian_packets(grid, gauge, trial_seed(seed, 3), true)};
}

CshData random_csh_data(const Grid2D& grid, const PacketSpec& scalar, const PacketSpec& gauge, std::uint64_t seed,
                        bool zero_mean) {
    CshData d{gaussian_packets(grid, scalar, trial_seed(seed, 0), false),
              gaussian_packets(grid, scalar, trial_seed(seed, 1), false),
              gaussian_packets(grid, gauge, trial_seed(seed, 2), true),
              gaussian_packets(grid, gauge, trial_seed(seed, 3), true)};
    if (zero_mean) d.g = csh::zero_mean_velocity(d.f, d.g, d.a0);
    return d;
}

}  // namespace csgauge
