#pragma once

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "csgauge/spacetime.hpp"

namespace csgauge {

/// Largest lattice extent accepted by the direct convolution.
inline constexpr int kNullformLatticeCap = 16;

/// Smaller angle between two plane vectors in [0, pi]; 0 if either is zero.
double angle(double a1, double a2, double b1, double b2);

/// Abstract bilinear null form B^ell_{s1,s2}: the space-time convolution of the
/// Fourier moduli of f1 and f2 weighted by angle(s1 xi1, s2 xi2)^ell.
///
/// Multi-component inputs enter through their Euclidean modulus. The output is
/// a one-component spectral field with real nonnegative values.
SpaceTimeField abstract_nullform(double ell, Sign s1, Sign s2, const SpaceTimeField& f1,
                                 const SpaceTimeField& f2);

/// R^mu_{s1} f1 R^nu_{s2} f2 - R^nu_{s1} f1 R^mu_{s2} f2, Riesz transforms per time slice.
SpaceTimeField nullform_Nmunu(int mu, int nu, Sign s1, Sign s2, const SpaceTimeField& f1,
                              const SpaceTimeField& f2);
/// R_{s1,mu} f1 R^mu_{s2} f2 summed over mu, indices lowered with diag(1,-1,-1).
SpaceTimeField nullform_N0(Sign s1, Sign s2, const SpaceTimeField& f1, const SpaceTimeField& f2);
/// (Pi_{s1} psi1)^dagger (Pi_{-s2} alpha^mu Pi_{s2} psi2) for two-component inputs.
SpaceTimeField spinor_nullform(Sign s1, Sign s2, const SpaceTimeField& psi1,
                               const SpaceTimeField& psi2, int mu);

/// Pointwise complex conjugate (physical representation).
SpaceTimeField conjugate(const SpaceTimeField& f);

enum class NullFormKind { N01, N02, N12, N0, Spinor0, Spinor1, Spinor2 };

std::string to_string(NullFormKind kind);
std::vector<NullFormKind> all_nullform_kinds();
/// Angle order of the dominating abstract form: 2 for N0, 1 otherwise.
double dominating_order(NullFormKind kind);
bool is_spinor(NullFormKind kind);

/// Evaluates the concrete form and its dominating abstract form on one input pair.
/// For the spinor form the conjugated first input is a half-wave of the opposite
/// sign, so the comparison form is B^1_{-s1,s2}(conj psi1, psi2).
struct FormPair {
    SpaceTimeField form;      ///< spectral
    SpaceTimeField dominant;  ///< spectral, real nonnegative
    /// (sum |FT f1|)(sum |FT f2|), a bound on every plain-convolution coefficient.
    double scale = 0.0;
};
FormPair evaluate_form(NullFormKind kind, Sign s1, Sign s2, const SpaceTimeField& f1,
                       const SpaceTimeField& f2);

/// sup over lattice modes of |form| / dominant with 0/0 read as 0. A mode
/// where the dominant form vanishes but the concrete form does not yields +inf.
double dominance_ratio(const FormPair& pair);

/// Random spectral input: complex Gaussian coefficients on `active` randomly
/// chosen modes (all modes if active <= 0), never on the zero spatial frequency
/// or on a spatial Nyquist wavenumber.
SpaceTimeField random_input(int nt, double tlength, const Grid2D& grid, int ncomp, int active,
                            std::mt19937_64& rng);

struct DominanceResult {
    NullFormKind kind;
    Sign s1, s2;
    double ell;
    int trials;
    double sup_ratio;
    std::uint64_t argmax_seed;
};

struct DominanceSetup {
    int nt = 8;
    int n = 8;
    double tlength = 2.0 * std::numbers::pi;
    double length = 2.0 * std::numbers::pi;
    int trials = 1000;
    std::uint64_t seed = 1;
    int threads = 1;
};

/// Sampled sup of the dominance ratio; trial i draws its inputs from seed
/// `trial_seed(setup.seed, i)`.
DominanceResult run_dominance(NullFormKind kind, Sign s1, Sign s2, const DominanceSetup& setup);
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial);

/// sup |Pi(xi1) Pi(-xi2) z| / (|z| angle(xi1, xi2)) over random samples, 0/0 read as 0.
double projector_angle_probe(int samples, std::uint64_t seed);

/// sup of angle(s1 xi1, s2 xi2) (min <xi_i>)^{1/2} / (<|tau0|-|xi0|> + <tau1 + s1|xi1|> +
/// <tau2 + s2|xi2|>)^{1/2}; with on_cone the taus are placed at tau_i = -s_i |xi_i|.
double angle_bound_probe(int samples, std::uint64_t seed, Sign s1, Sign s2, bool on_cone);

void write_dominance_csv(std::ostream& os, const std::vector<DominanceResult>& rows);

}  // namespace csgauge
