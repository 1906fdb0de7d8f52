#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "csgauge/grid.hpp"

namespace csgauge {

/// Per-mode lookup tables for one grid; immutable once built.
struct SpectralTables {
    explicit SpectralTables(const Grid2D& grid);

    Grid2D grid;
    std::vector<double> xi1, xi2;
    std::vector<double> abs;          ///< |xi|
    std::vector<double> bracket;      ///< (1 + |xi|^2)^{1/2}
    std::vector<double> unit1, unit2; ///< xi_j / |xi|, zero at xi = 0
    std::vector<double> keep;         ///< 1 inside the 2/3 band, else 0
};

/// Shared tables for `grid`; built on first use and safe for concurrent lookup.
std::shared_ptr<const SpectralTables> tables_for(const Grid2D& grid);

using Symbol = std::function<cplx(double xi1, double xi2)>;

/// Multiplies each Fourier coefficient by symbol(xi). The result keeps the
/// representation of `f`. Throws MultiplierSingularityError on non-finite
/// symbol values.
ScalarField apply_multiplier(const ScalarField& f, const Symbol& symbol);

/// Multiplies by a precomputed per-mode table (same grid ordering).
ScalarField apply_table(const ScalarField& f, const std::vector<double>& table);
ScalarField apply_table(const ScalarField& f, const std::vector<cplx>& table);

/// Symbol of the modified Riesz transform R^mu_sign: -1 for mu = 0 and
/// -sign * xi_j / |xi| for mu = j, with value 0 at xi = 0.
double riesz_symbol(int mu, Sign sign, double xi1, double xi2);
/// Symbol of the error operator: <xi> - |xi| for mu = 0, zero otherwise.
double err_symbol(int mu, double xi1, double xi2);

ScalarField riesz(int mu, Sign sign, const ScalarField& f);
ScalarField abs_nabla(const ScalarField& f);
ScalarField bracket_nabla(const ScalarField& f);
ScalarField err_op(int mu, const ScalarField& f);
/// Spatial derivative d/dx_j, j in {1, 2}.
ScalarField partial(int j, const ScalarField& f);
/// Zeroes every mode with |xi_j| > (2/3) xi_Nyquist on either axis.
ScalarField dealias(const ScalarField& f);
/// Removes the zero mode.
ScalarField zero_mean(const ScalarField& f);

/// d1 a2 - d2 a1
ScalarField curl(const ScalarField& a1, const ScalarField& a2);
/// -d1 a1 - d2 a2, i.e. the contraction d^j a_j with the (+,-,-) metric.
ScalarField divergence(const ScalarField& a1, const ScalarField& a2);

struct VectorPair {
    ScalarField v1, v2;
};

struct HodgeParts {
    VectorPair df;    ///< divergence-free, zero mean
    VectorPair cf;    ///< curl-free, zero mean
    VectorPair mean;  ///< constant part (the zero mode)
};

/// Splits (a1, a2) into divergence-free, curl-free and constant parts.
/// Results are in spectral representation and sum to the input exactly.
HodgeParts hodge_decompose(const ScalarField& a1, const ScalarField& a2);

/// Divergence-free field with the given zero-mean curl: (-Delta)^{-1}(d2 c, -d1 c).
VectorPair curl_preimage(const ScalarField& c);

}  // namespace csgauge
