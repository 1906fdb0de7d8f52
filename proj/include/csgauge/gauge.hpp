#pragma once

#include <array>
#include <vector>

#include "csgauge/diagnostics.hpp"
#include "csgauge/grid.hpp"
#include "csgauge/propagators.hpp"

namespace csgauge {

/// Antisymmetric 3x3 array of fields indexed by lower (mu, nu).
class TwoForm {
public:
    explicit TwoForm(const Grid2D& grid, Representation rep = Representation::Spectral);
    ScalarField& operator()(int mu, int nu) { return c_[static_cast<std::size_t>(3 * mu + nu)]; }
    const ScalarField& operator()(int mu, int nu) const { return c_[static_cast<std::size_t>(3 * mu + nu)]; }

private:
    std::vector<ScalarField> c_;
};

/// coupling * epsilon_{mu nu lambda} J^lambda, spectral. CSD uses -2, CSH +2.
TwoForm two_form_from_current(const std::array<ScalarField, 3>& J, double coupling);

using GaugeHalfWaves = std::array<HalfWaveState, 3>;

/// Half-waves of A_nu from data (a_nu, d_t A_nu) and the source row F_{0 nu} at t = 0.
GaugeHalfWaves gauge_half_waves(const OneForm& a, const OneForm& at, const TwoForm& Nfield);

/// A_nu = A_{nu,+} + A_{nu,-}, physical.
OneForm gauge_field(const GaugeHalfWaves& A);

/// d_t A_nu = N_{0 nu} - i|nabla|(A_{nu,+} - A_{nu,-}) + drift_nu, spectral.
ScalarField gauge_time_derivative(const GaugeHalfWaves& A, int nu, const TwoForm& Nfield);

/// Half-wave right side -1/2 R^mu_sign N_{mu nu}, spectral (zero-mode drift excluded).
ScalarField gauge_half_wave_rhs(const TwoForm& Nfield, int nu, Sign sign);

/// Fills gauge_res, the three curvature residuals |F_{mu nu} - N_{mu nu}| and
/// mean_defect = |mean N_{12}| (all RMS) for the given half-waves and source.
void gauge_diagnostics(const GaugeHalfWaves& A, const TwoForm& Nfield, DiagnosticsRecord& rec);

/// B_pm = R_{pm,1} A_{2,pm} - R_{pm,2} A_{1,pm}, spectral.
ScalarField b_field(const HalfWaveState& A1, const HalfWaveState& A2, Sign sign);

/// sum_pm A^df_l R^l_pm f_pm with A^df the divergence-free Hodge part of (A_1, A_2).
ScalarField df_coupling(const HalfWaveState& A1, const HalfWaveState& A2, const ScalarField& f_plus,
                        const ScalarField& f_minus);

/// sum_{s1,s2} (R^1_{s2} B_{s2} R^2_{s1} f_{s1} - R^2_{s2} B_{s2} R^1_{s1} f_{s1}), spectral.
/// Equals -df_coupling for the same arguments.
ScalarField df_coupling_nullform(const HalfWaveState& A1, const HalfWaveState& A2, const ScalarField& f_plus,
                                 const ScalarField& f_minus);

}  // namespace csgauge
