#include "csgauge/dirac.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "csgauge/errors.hpp"
#include "csgauge/spectral.hpp"

namespace csgauge {

namespace {
const cplx I{0.0, 1.0};

Matrix2C make(cplx a, cplx b, cplx c, cplx d) {
    Matrix2C m;
    m << a, b, c, d;
    return m;
}
}  // namespace

Matrix2C matrix(MatrixKind kind) {
    switch (kind) {
        case MatrixKind::Sigma1: return make(0.0, 1.0, 1.0, 0.0);
        case MatrixKind::Sigma2: return make(0.0, -I, I, 0.0);
        case MatrixKind::Sigma3: return make(1.0, 0.0, 0.0, -1.0);
        case MatrixKind::Gamma0: return matrix(MatrixKind::Sigma3);
        case MatrixKind::Gamma1: return I * matrix(MatrixKind::Sigma2);
        case MatrixKind::Gamma2: return -I * matrix(MatrixKind::Sigma1);
        case MatrixKind::Alpha0: return Matrix2C::Identity();
        case MatrixKind::Alpha1: return matrix(MatrixKind::Sigma1);
        case MatrixKind::Alpha2: return matrix(MatrixKind::Sigma2);
        case MatrixKind::Beta: return matrix(MatrixKind::Gamma0);
    }
    throw InputError("unknown matrix kind");
}

Matrix2C sigma(int j) {
    switch (j) {
        case 1: return matrix(MatrixKind::Sigma1);
        case 2: return matrix(MatrixKind::Sigma2);
        case 3: return matrix(MatrixKind::Sigma3);
    }
    throw InputError("sigma index must be 1, 2 or 3");
}

Matrix2C gamma(int mu) {
    switch (mu) {
        case 0: return matrix(MatrixKind::Gamma0);
        case 1: return matrix(MatrixKind::Gamma1);
        case 2: return matrix(MatrixKind::Gamma2);
    }
    throw InputError("gamma index must be 0, 1 or 2");
}

Matrix2C alpha(int mu) {
    switch (mu) {
        case 0: return matrix(MatrixKind::Alpha0);
        case 1: return matrix(MatrixKind::Alpha1);
        case 2: return matrix(MatrixKind::Alpha2);
    }
    throw InputError("alpha index must be 0, 1 or 2");
}

Matrix2C beta() { return matrix(MatrixKind::Beta); }

int epsilon(int mu, int nu, int lambda) noexcept {
    if (mu == nu || nu == lambda || mu == lambda) return 0;
    // Even permutations of (0,1,2) are cyclic shifts.
    return ((nu - mu + 3) % 3 == 1) ? 1 : -1;
}

Matrix2C projection_matrix(Sign sign, double xi1, double xi2) {
    const double r = std::hypot(xi1, xi2);
    Matrix2C p = 0.5 * Matrix2C::Identity();
    if (r == 0.0) return p;
    const double s = 0.5 * sgn(sign) / r;
    p += (s * xi1) * matrix(MatrixKind::Alpha1) + (s * xi2) * matrix(MatrixKind::Alpha2);
    return p;
}

ProjectionSymbol::ProjectionSymbol(const Grid2D& grid, Sign sign)
    : grid_(grid), sign_(sign), mats_(grid.size()) {
    for (int k1 = 0; k1 < grid.n1(); ++k1)
        for (int k2 = 0; k2 < grid.n2(); ++k2)
            mats_[grid.index(k1, k2)] = projection_matrix(sign, grid.xi1(k1), grid.xi2(k2));
}

std::shared_ptr<const ProjectionSymbol> projection_for(const Grid2D& grid, Sign sign) {
    static std::mutex m;
    static std::map<std::tuple<int, int, double, int>, std::shared_ptr<const ProjectionSymbol>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_tuple(grid.n1(), grid.n2(), grid.length(), static_cast<int>(sign));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto p = std::make_shared<const ProjectionSymbol>(grid, sign);
    cache.emplace(key, p);
    return p;
}

SpinorField project(Sign sign, const SpinorField& psi) {
    const auto table = projection_for(psi.grid(), sign);
    SpinorField s = psi.spectral();
    for (std::size_t i = 0; i < s.c[0].size(); ++i) {
        const Matrix2C& p = (*table)[i];
        const cplx u = s.c[0][i], v = s.c[1][i];
        s.c[0][i] = p(0, 0) * u + p(0, 1) * v;
        s.c[1][i] = p(1, 0) * u + p(1, 1) * v;
    }
    if (psi.rep() == Representation::Physical) {
        s.c[0].make_physical();
        s.c[1].make_physical();
    }
    return s;
}

SpinorField apply_matrix(const Matrix2C& m, const SpinorField& psi) {
    SpinorField out = psi;
    for (std::size_t i = 0; i < out.c[0].size(); ++i) {
        const cplx u = psi.c[0][i], v = psi.c[1][i];
        out.c[0][i] = m(0, 0) * u + m(0, 1) * v;
        out.c[1][i] = m(1, 0) * u + m(1, 1) * v;
    }
    return out;
}

SpinorField riesz(int mu, Sign sign, const SpinorField& psi) {
    return SpinorField(riesz(mu, sign, psi.c[0]), riesz(mu, sign, psi.c[1]));
}

double commutator_residual(Sign sign, int mu, const SpinorField& psi) {
    const SpinorField p = project(sign, psi.spectral());
    SpinorField lhs = apply_matrix(alpha(mu), p);
    SpinorField rhs = project(flip(sign), apply_matrix(alpha(mu), p));
    rhs -= riesz(mu, sign, p);
    lhs -= rhs;
    return l2_norm(lhs);
}

ScalarField bilinear(const SpinorField& psi, const Matrix2C& m, const SpinorField& chi) {
    require_same_grid(psi.grid(), chi.grid(), "spinor bilinear");
    const SpinorField a = psi.physical(), b = chi.physical();
    ScalarField out(psi.grid());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const cplx b0 = m(0, 0) * b.c[0][i] + m(0, 1) * b.c[1][i];
        const cplx b1 = m(1, 0) * b.c[0][i] + m(1, 1) * b.c[1][i];
        out[i] = std::conj(a.c[0][i]) * b0 + std::conj(a.c[1][i]) * b1;
    }
    return out;
}

ScalarField dirac_adjoint_product(const SpinorField& psi, const SpinorField& chi) {
    return bilinear(psi, gamma(0), chi);
}

}  // namespace csgauge
