#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "csgauge/grid.hpp"
#include "csgauge/spectral.hpp"

namespace csgauge::testing {

/// Complex Gaussian coefficients on every mode with 0 < |k'| <= kmax (lattice
/// units); the zero mode is included only when `with_zero_mode`. Physical output.
inline ScalarField random_field(const Grid2D& g, std::mt19937_64& rng, double kmax, bool with_zero_mode = false) {
    std::normal_distribution<double> nd;
    ScalarField f(g, Representation::Spectral);
    for (int k1 = 0; k1 < g.n1(); ++k1)
        for (int k2 = 0; k2 < g.n2(); ++k2) {
            const int m1 = Grid2D::wavenumber_index(k1, g.n1()), m2 = Grid2D::wavenumber_index(k2, g.n2());
            const double r = std::hypot(m1, m2);
            const double re = nd(rng), im = nd(rng);
            if (r > kmax || (r == 0.0 && !with_zero_mode)) continue;
            f.at(k1, k2) = {re, im};
        }
    return f.physical();
}

inline SpinorField random_spinor(const Grid2D& g, std::mt19937_64& rng, double kmax, bool with_zero_mode = false) {
    ScalarField a = random_field(g, rng, kmax, with_zero_mode);
    ScalarField b = random_field(g, rng, kmax, with_zero_mode);
    return SpinorField(std::move(a), std::move(b));
}

/// |a - b| / |b| in L2 (0 when both vanish).
inline double rel_diff(const ScalarField& a, const ScalarField& b) {
    const double nb = l2_norm(b);
    const double d = l2_norm(a.physical() - b.physical());
    return nb == 0.0 ? d : d / nb;
}

inline double rel_diff(const SpinorField& a, const SpinorField& b) {
    const double nb = l2_norm(b);
    const double d = l2_norm(a.physical() - b.physical());
    return nb == 0.0 ? d : d / nb;
}

}  // namespace csgauge::testing
