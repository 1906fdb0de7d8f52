#pragma once

#include <utility>
#include <vector>

#include "csgauge/grid.hpp"

namespace csgauge {

enum class Dispersion { Massless, Massive };

/// Dispersion symbol |xi| or <xi> on the grid.
const std::vector<double>& omega_table(const Grid2D& grid, Dispersion d);

/// Half-wave pair of a second-order field, stored spectrally.
///
/// For the massless dispersion |xi|^{-1} does not exist at xi = 0, so the zero
/// mode of phi is split evenly and the zero mode of phi_t is carried in
/// `drift`; under free evolution the zero mode of phi moves as a + drift * t.
struct HalfWaveState {
    ScalarField plus;
    ScalarField minus;
    Dispersion dispersion = Dispersion::Massless;
    cplx drift{0.0, 0.0};
};

/// phi_pm = (phi -+ phi_t / (i omega)) / 2.
HalfWaveState split(const ScalarField& phi, const ScalarField& phit, Dispersion d);
/// (phi, phi_t) with phi_t = -i omega (phi_+ - phi_-) plus the zero-mode drift.
/// Both outputs are spectral.
std::pair<ScalarField, ScalarField> recombine(const HalfWaveState& h);
/// Multiplies the (+/-) component by exp(-+ i t omega) and advances the drift.
HalfWaveState evolve_free(const HalfWaveState& h, double t);

/// Time samples of a one-form source F_mu on the uniform nodes s_k = k t_end / (K-1).
/// t_end may be negative for backward integration.
struct SourceSamples {
    double t_end = 0.0;
    std::vector<std::array<ScalarField, 3>> F;

    int nodes() const noexcept { return static_cast<int>(F.size()); }
    double node_time(int k) const { return t_end * k / (nodes() - 1); }
};

/// Composite Simpson weights for `nodes` equispaced points of spacing h.
/// Throws QuadratureError unless nodes is odd and >= 3.
std::vector<double> simpson_weights(int nodes, double h);

/// -1/2 int_0^t exp(-+ i (t-s)|nabla|) R^mu_pm F_mu(s) ds at t = F.t_end, by composite Simpson.
ScalarField duhamel_divergence(const SourceSamples& F, Sign sign);

/// Half-waves of the solution of box phi = d^mu F_mu at t = F.t_end: the free
/// evolution of the data (phi0, phit0 - F_0(0)) plus the Duhamel term.
HalfWaveState divergence_solution(const ScalarField& phi0, const ScalarField& phit0,
                                  const SourceSamples& F);

/// (phi, phi_t) from half-waves of the divergence form: phi_t = F_0 - i|nabla|(phi_+ - phi_-).
std::pair<ScalarField, ScalarField> recombine_divergence(const HalfWaveState& h, const ScalarField& F0);

/// Independent solve of box phi = d^mu F_mu by the sine-kernel Duhamel formula,
/// with d_t F_0 from fourth-order finite-difference stencils on the sample nodes
/// (one-sided at the window ends). Requires at least 5 nodes.
std::pair<ScalarField, ScalarField> reference_wave_solve(const ScalarField& phi0, const ScalarField& phit0,
                                                         const SourceSamples& F);

/// Klein-Gordon Duhamel term +- i int_0^t exp(-+ i (t-s)<nabla>) F(s) / (2<nabla>) ds,
/// so that (-i d_t +- <nabla>) phi_pm = +- F / (2<nabla>). F sampled as in SourceSamples.
ScalarField duhamel_kg(const std::vector<ScalarField>& F, double t_end, Sign sign);

}  // namespace csgauge
