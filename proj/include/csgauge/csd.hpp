#pragma once

#include <array>
#include <functional>
#include <vector>

#include "csgauge/diagnostics.hpp"
#include "csgauge/gauge.hpp"
#include "csgauge/integrators.hpp"

namespace csgauge::csd {

/// Model switches. `couple_gauge = false` forces A = 0 and freezes it, which
/// leaves the free (massive) Dirac flow.
struct Params {
    double mass = 0.0;
    bool dealias = true;
    bool couple_gauge = true;
};

struct InitialData {
    OneForm a;
    /// |mean of the constraint source| = 2 avg |psi0|^2; the part of the
    /// constraint a periodic a cannot satisfy.
    double mean_defect = 0.0;
};

/// a_0 as given; (a_1, a_2) with curl a = -2 P0(psi0^dagger psi0) plus d_j divpot.
/// With `dealias` the density is band-limited exactly as in the evolution.
InitialData build_initial_data(const SpinorField& psi0, const ScalarField& a0, const ScalarField& divpot,
                               bool dealias = true);

/// Half-wave state. psi_plus/psi_minus are Pi_pm psi (spectral). At xi = 0 both
/// carry psi(0)/2, so Pi_-+ psi_pm = 0 holds only on nonzero modes.
struct State {
    GaugeHalfWaves A;
    SpinorField psi_plus;
    SpinorField psi_minus;
    double time = 0.0;

    const Grid2D& grid() const { return psi_plus.grid(); }
};

/// J^lambda = psi^dagger alpha^lambda psi, dealiased if requested; physical.
std::array<ScalarField, 3> current(const SpinorField& psi, bool dealias);

struct Nonlinearities {
    TwoForm N;        ///< -2 epsilon_{mu nu lambda} J^lambda
    SpinorField M;    ///< -alpha^mu A_mu psi
};
Nonlinearities nonlinearities(const OneForm& A, const SpinorField& psi, bool dealias);

/// State at t = 0 with d_t A_0(0) = d_l a_l and d_t A_j(0) = d_j a_0 + N_{0j}(psi0).
State initial_half_waves(const OneForm& a, const SpinorField& psi0, const Params& params = {});

struct Fields {
    OneForm A;
    OneForm At;
    SpinorField psi;
};
Fields fields(const State& s, const Params& params = {});

DiagnosticsRecord diagnostics(const State& s, const Params& params = {});

/// max over signs of |Pi_-+ psi_pm| / |psi| on the nonzero modes.
double projector_residual(const State& s);

SemilinearProblem make_problem(const State& s, const Params& params);
Packed pack(const State& s);
/// Inverse of pack; drifts are taken from `like`.
State unpack(const Packed& u, const State& like, double time);

using Sampler = std::function<void(const State&, const DiagnosticsRecord&)>;

struct Run {
    State final_state;
    std::vector<DiagnosticsRecord> records;
};
Run evolve(const State& s0, const Params& params, const EvolveOptions& opt, const Sampler& on_sample = {});

/// One Picard iteration on the node trajectory `prev` over [t0, t0 + T]; prev[0] is the data.
std::vector<State> picard_step(const std::vector<State>& prev, const Params& params, double T, int threads = 1);

struct PicardRun {
    PicardResult result;
    IntegralResidual residual;
    std::vector<State> states;
};
/// Runs `iterations` Picard iterations (or to convergence if 0) from the data s0.
PicardRun picard_solve(const State& s0, const Params& params, double T, const PicardOptions& opt, int iterations = 0);

/// psi -> lambda psi(lambda t, lambda x), A -> lambda A(lambda t, lambda x) on the box of side L / lambda
/// with the same node count. lambda must be a power of two and the mass zero.
State rescale(const State& s, double lambda, const Params& params);

/// L2 norm of i d_t psi + i alpha^j d_j psi - m beta psi - M(psi, A) at s.time + 2 stride,
/// with d_t psi from a five-point central difference; each stride uses `substeps` steps.
double dirac_residual(const State& s, const Params& params, double stride, int substeps);

/// dirac_residual of the rescaled state with stride / lambda.
double scaling_residual(const State& s, const Params& params, double lambda, double stride, int substeps);

}  // namespace csgauge::csd
