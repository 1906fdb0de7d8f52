#pragma once

#include <functional>
#include <vector>

#include "csgauge/grid.hpp"

namespace csgauge {

using Packed = std::vector<cplx>;

/// u' = -i diag(omega) u + drift + N(u), on packed spectral coefficients.
///
/// `drift` is a constant forcing that may only be nonzero where omega == 0;
/// it carries the linear-in-time zero modes of massless half-waves.
struct SemilinearProblem {
    std::vector<double> omega;
    Packed drift;
    std::function<void(const Packed& u, Packed& out)> N;
};

/// exp(-i t omega) u
Packed linear_flow(const SemilinearProblem& p, const Packed& u, double t);
/// Solution of the problem with N = 0.
Packed homogeneous(const SemilinearProblem& p, const Packed& u0, double t);
/// One integrating-factor RK4 step of size h (h may be negative).
Packed lawson_rk4_step(const SemilinearProblem& p, const Packed& u, double h);

/// Cumulative integrals C_k = int_0^{t_k} g on uniform nodes of spacing h,
/// fourth order at every node: composite Simpson at even k, Simpson plus the
/// 3/8 rule at odd k >= 3, and a three-point rule at k = 1. Needs >= 3 nodes.
std::vector<Packed> cumulative_integral(const std::vector<Packed>& g, double h);

using Trajectory = std::vector<Packed>;

/// Picard map on a window [0, T] with K uniform nodes:
/// u_k = hom(t_k) + E(t_k) int_0^{t_k} E(-s) N(prev(s)) ds.
/// Throws DivergenceError at the first node where N is non-finite.
Trajectory picard_map(const SemilinearProblem& p, const Packed& u0, double T, const Trajectory& prev,
                      int threads = 1);

/// Same map evaluated with the doubled step on the even nodes only.
Trajectory picard_map_coarse(const SemilinearProblem& p, const Packed& u0, double T, const Trajectory& prev,
                             int threads = 1);

/// max_k |a_k - b_k| / max_k |b_k| with the Euclidean coefficient norm.
double relative_gap(const Trajectory& a, const Trajectory& b);

struct PicardOptions {
    int nodes = 65;
    int max_iterations = 60;
    /// Stop once the successive relative difference drops below this.
    double tolerance = 1e-13;
    int threads = 1;
};

struct PicardResult {
    Trajectory trajectory;               ///< final iterate at the nodes
    std::vector<double> differences;     ///< |u^n - u^{n-1}| / |u^{n-1}| for n = 1, 2, ...
    int iterations = 0;
};

/// Iterates the Picard map from u^0 = hom, `iterations` times if positive,
/// otherwise until the tolerance or max_iterations is reached.
PicardResult picard_iterate(const SemilinearProblem& p, const Packed& u0, double T, const PicardOptions& opt,
                            int iterations = 0);

/// Residual |Phi(u) - u| / |u| of the integral equation and the Richardson
/// estimate |Phi_h(u) - Phi_2h(u)| / (15 |u|) of its quadrature error, both
/// over the even nodes.
struct IntegralResidual {
    double residual = 0.0;
    double quadrature_tolerance = 0.0;
};
IntegralResidual integral_residual(const SemilinearProblem& p, const Packed& u0, double T, const Trajectory& u,
                                   int threads = 1);

enum class Scheme { Picard, ExponentialIntegrator };

/// Time stepping: `steps` steps of size dt (negative dt runs backward).
/// The Picard scheme advances in windows of picard.nodes - 1 steps, so steps
/// must be a multiple of that.
struct EvolveOptions {
    double dt = 1.0 / 1024.0;
    int steps = 0;
    Scheme scheme = Scheme::ExponentialIntegrator;
    int sample_every = 1;
    PicardOptions picard;
};

/// Advances u0 from time t0 and calls sample(u, t) at t0, after every
/// sample_every steps and after the last step. Throws DivergenceError with the
/// last time at which the state was finite; the Picard scheme also throws it
/// when a window fails to converge.
Packed evolve_packed(const SemilinearProblem& p, const Packed& u0, double t0, const EvolveOptions& opt,
                     const std::function<void(const Packed&, double)>& sample);

}  // namespace csgauge
