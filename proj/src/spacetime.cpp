#include "csgauge/spacetime.hpp"

#include <cmath>
#include <numbers>
#include <span>

#include "csgauge/errors.hpp"
#include "csgauge/fft.hpp"

namespace csgauge {

SpaceTimeField::SpaceTimeField(int nt, double tlength, const Grid2D& grid, int ncomp,
                               Representation rep)
    : nt_(nt), tlength_(tlength), grid_(grid), ncomp_(ncomp), rep_(rep) {
    if (nt < 2 || nt % 2 != 0) throw InputError("time lattice size must be even and >= 2");
    if (!(tlength > 0.0)) throw InputError("time length must be positive");
    if (ncomp < 1) throw InputError("component count must be positive");
    values_.assign(static_cast<std::size_t>(ncomp) * slice_size(), cplx{0.0, 0.0});
}

double SpaceTimeField::tau(int kt) const noexcept {
    return 2.0 * std::numbers::pi / tlength_ * Grid2D::wavenumber_index(kt, nt_);
}

SpaceTimeField SpaceTimeField::spectral() const {
    if (is_spectral()) return *this;
    SpaceTimeField out(nt_, tlength_, grid_, ncomp_, Representation::Spectral);
    for (int c = 0; c < ncomp_; ++c) {
        std::span<const cplx> in(values_.data() + c * slice_size(), slice_size());
        std::span<cplx> o(out.values_.data() + c * slice_size(), slice_size());
        fft::forward3d(nt_, grid_.n1(), grid_.n2(), in, o);
    }
    return out;
}

SpaceTimeField SpaceTimeField::physical() const {
    if (!is_spectral()) return *this;
    SpaceTimeField out(nt_, tlength_, grid_, ncomp_, Representation::Physical);
    for (int c = 0; c < ncomp_; ++c) {
        std::span<const cplx> in(values_.data() + c * slice_size(), slice_size());
        std::span<cplx> o(out.values_.data() + c * slice_size(), slice_size());
        fft::inverse3d(nt_, grid_.n1(), grid_.n2(), in, o);
    }
    return out;
}

SpaceTimeField SpaceTimeField::spectral_modulus() const {
    const SpaceTimeField s = spectral();
    SpaceTimeField out(nt_, tlength_, grid_, 1, Representation::Spectral);
    for (std::size_t i = 0; i < slice_size(); ++i) {
        double acc = 0.0;
        for (int c = 0; c < ncomp_; ++c) acc += std::norm(s.values_[c * slice_size() + i]);
        out.values_[i] = std::sqrt(acc);
    }
    return out;
}

double l2_norm(const SpaceTimeField& f) {
    double acc = 0.0;
    for (const auto& v : f.raw()) acc += std::norm(v);
    const double volume = f.tlength() * f.grid().area();
    const double weight = f.is_spectral() ? volume : volume / static_cast<double>(f.slice_size());
    return std::sqrt(acc * weight);
}

}  // namespace csgauge
