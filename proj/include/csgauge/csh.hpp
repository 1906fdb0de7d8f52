#pragma once

#include <array>
#include <functional>
#include <vector>

#include "csgauge/diagnostics.hpp"
#include "csgauge/gauge.hpp"
#include "csgauge/integrators.hpp"

namespace csgauge::csh {

/// `compensate_mass = false` drops the +phi term that offsets the artificial
/// mass, leaving the Klein-Gordon flow (box + 1) phi = source.
struct Params {
    bool dealias = true;
    bool couple_gauge = true;
    bool compensate_mass = true;
};

/// 2 Im(conj(f) (g - i a0 f)), the constraint source; dealiased if requested.
ScalarField constraint_source(const ScalarField& f, const ScalarField& g, const ScalarField& a0,
                              bool dealias = true);

/// g + i c f with c chosen so that the constraint source has zero mean
/// (g unchanged when f = 0).
ScalarField zero_mean_velocity(const ScalarField& f, const ScalarField& g, const ScalarField& a0,
                               bool dealias = true);

struct InitialData {
    OneForm a;
    double mean_defect = 0.0;
};

/// a_0 as given; (a_1, a_2) with curl a = P0(constraint source) plus d_j divpot.
InitialData build_initial_data(const ScalarField& f, const ScalarField& g, const ScalarField& a0,
                               const ScalarField& divpot, bool dealias = true);

struct State {
    GaugeHalfWaves A;
    HalfWaveState phi;  ///< massive dispersion
    double time = 0.0;

    const Grid2D& grid() const { return phi.plus.grid(); }
};

/// d_mu phi = sum_pm (pm i) R_{pm,mu} |nabla| phi_pm - sum_pm (pm i) E_mu phi_pm, spectral.
ScalarField derivative(int mu, const HalfWaveState& phi);

/// J^lambda = Im(conj(phi) D^lambda phi) with D = d - i A, indices raised by the
/// metric; physical. Products are dealiased pairwise when requested.
std::array<ScalarField, 3> current(const OneForm& A, const ScalarField& phi, const std::array<ScalarField, 3>& dphi,
                                   bool dealias);

struct Nonlinearities {
    TwoForm N;      ///< 2 epsilon_{mu nu lambda} J^lambda
    ScalarField F;  ///< 2i A^mu d_mu phi + A^mu A_mu phi (+ phi when compensating)
};
Nonlinearities nonlinearities(const OneForm& A, const ScalarField& phi, const std::array<ScalarField, 3>& dphi,
                              const Params& params = {});

/// State at t = 0 with d_t A_0(0) = d_l a_l and d_t A_j(0) = d_j a_0 + N_{0j}(f, g, a).
State initial_half_waves(const OneForm& a, const ScalarField& f, const ScalarField& g, const Params& params = {});

struct Fields {
    OneForm A;
    OneForm At;
    ScalarField phi;
    ScalarField phit;
};
Fields fields(const State& s, const Params& params = {});

/// (1/2) sum_mu |d_mu phi - i A_mu phi|^2 integrated over the box.
double energy(const State& s, const Params& params = {});

/// Box integral of |grad phi|^2 + |phi|^2 + |phi_t|^2, i.e. the quadratic
/// form conserved by the uncompensated free Klein-Gordon flow.
double linear_form(const State& s);

DiagnosticsRecord diagnostics(const State& s, const Params& params = {});

SemilinearProblem make_problem(const State& s, const Params& params);
Packed pack(const State& s);
State unpack(const Packed& u, const State& like, double time);

using Sampler = std::function<void(const State&, const DiagnosticsRecord&)>;

struct Run {
    State final_state;
    std::vector<DiagnosticsRecord> records;
};
Run evolve(const State& s0, const Params& params, const EvolveOptions& opt, const Sampler& on_sample = {});

std::vector<State> picard_step(const std::vector<State>& prev, const Params& params, double T, int threads = 1);

struct PicardRun {
    PicardResult result;
    IntegralResidual residual;
    std::vector<State> states;
};
PicardRun picard_solve(const State& s0, const Params& params, double T, const PicardOptions& opt, int iterations = 0);

/// phi -> lambda^{1/2} phi(lambda t, lambda x), A -> lambda A(lambda t, lambda x) on the box of side
/// L / lambda with the same node count; lambda must be a power of two.
State rescale(const State& s, double lambda);

/// L2 norm of box phi - 2i A^mu d_mu phi - A^mu A_mu phi at s.time + 2 stride, with
/// d_t^2 phi from a five-point central difference; each stride uses `substeps` steps.
double wave_residual(const State& s, const Params& params, double stride, int substeps);

double scaling_residual(const State& s, const Params& params, double lambda, double stride, int substeps);

}  // namespace csgauge::csh
