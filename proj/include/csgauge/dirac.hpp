#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "csgauge/grid.hpp"

namespace csgauge {

using Matrix2C = Eigen::Matrix2cd;
using Vector2C = Eigen::Vector2cd;

enum class MatrixKind { Sigma1, Sigma2, Sigma3, Gamma0, Gamma1, Gamma2, Alpha0, Alpha1, Alpha2, Beta };

/// Exact constant matrices: gamma^0 = sigma^3, gamma^1 = i sigma^2,
/// gamma^2 = -i sigma^1, alpha^0 = Id, alpha^j = sigma^j, beta = gamma^0.
Matrix2C matrix(MatrixKind kind);
Matrix2C sigma(int j);  ///< j in {1,2,3}
Matrix2C gamma(int mu);
Matrix2C alpha(int mu);
Matrix2C beta();

/// Minkowski metric eta = diag(1, -1, -1).
constexpr double eta(int mu, int nu) noexcept { return mu != nu ? 0.0 : (mu == 0 ? 1.0 : -1.0); }

/// Levi-Civita symbol with epsilon_{012} = 1.
int epsilon(int mu, int nu, int lambda) noexcept;

/// Pi(sign * xi) = (Id + sign * xi_j alpha^j / |xi|) / 2; Id/2 at xi = 0.
Matrix2C projection_matrix(Sign sign, double xi1, double xi2);

/// Per-mode table of Pi_sign(xi) on a grid.
class ProjectionSymbol {
public:
    ProjectionSymbol(const Grid2D& grid, Sign sign);
    const Grid2D& grid() const noexcept { return grid_; }
    Sign sign() const noexcept { return sign_; }
    const Matrix2C& operator[](std::size_t mode) const { return mats_[mode]; }

private:
    Grid2D grid_;
    Sign sign_;
    std::vector<Matrix2C> mats_;
};

std::shared_ptr<const ProjectionSymbol> projection_for(const Grid2D& grid, Sign sign);

/// Pi_sign psi; the result has the representation of the input.
SpinorField project(Sign sign, const SpinorField& psi);

/// Applies a constant 2x2 matrix pointwise (valid in either representation).
SpinorField apply_matrix(const Matrix2C& m, const SpinorField& psi);

/// Riesz transform R^mu_sign applied to both spinor components.
SpinorField riesz(int mu, Sign sign, const SpinorField& psi);

/// L2 norm of alpha^mu Pi psi - (Pi' alpha^mu Pi psi - R^mu Pi psi), Pi = Pi_sign,
/// Pi' = Pi_{-sign}. Meaningful for psi without a zero mode.
double commutator_residual(Sign sign, int mu, const SpinorField& psi);

/// Pointwise psi^dagger M chi, physical representation.
ScalarField bilinear(const SpinorField& psi, const Matrix2C& m, const SpinorField& chi);

/// Dirac adjoint contraction psi-bar chi = psi^dagger gamma^0 chi.
ScalarField dirac_adjoint_product(const SpinorField& psi, const SpinorField& chi);

}  // namespace csgauge
