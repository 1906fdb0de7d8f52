#pragma once

#include <vector>

#include "csgauge/grid.hpp"

namespace csgauge {

/// Complex field on an nt x n1 x n2 space-time lattice with ncomp components.
///
/// The time axis is periodic with period `tlength`; the temporal frequency of
/// index k is (2 pi / tlength) k' with k' in {-nt/2+1, ..., nt/2}. The spectral
/// representation uses the same 1/(nt n1 n2) forward scaling as Grid2D fields.
class SpaceTimeField {
public:
    SpaceTimeField(int nt, double tlength, const Grid2D& grid, int ncomp = 1,
                   Representation rep = Representation::Physical);

    int nt() const noexcept { return nt_; }
    double tlength() const noexcept { return tlength_; }
    const Grid2D& grid() const noexcept { return grid_; }
    int ncomp() const noexcept { return ncomp_; }
    Representation rep() const noexcept { return rep_; }
    bool is_spectral() const noexcept { return rep_ == Representation::Spectral; }

    std::size_t slice_size() const noexcept { return static_cast<std::size_t>(nt_) * grid_.size(); }
    std::size_t index(int c, int it, int i1, int i2) const noexcept {
        return static_cast<std::size_t>(c) * slice_size() +
               static_cast<std::size_t>(it) * grid_.size() + grid_.index(i1, i2);
    }
    cplx& at(int c, int it, int i1, int i2) { return values_[index(c, it, i1, i2)]; }
    const cplx& at(int c, int it, int i1, int i2) const { return values_[index(c, it, i1, i2)]; }
    std::vector<cplx>& raw() noexcept { return values_; }
    const std::vector<cplx>& raw() const noexcept { return values_; }

    double dt() const noexcept { return tlength_ / nt_; }
    double tau(int kt) const noexcept;

    SpaceTimeField spectral() const;
    SpaceTimeField physical() const;

    /// Pointwise |FT| over components: sqrt(sum_c |f_c|^2) per lattice point,
    /// returned as a one-component spectral field.
    SpaceTimeField spectral_modulus() const;

    bool same_lattice(const SpaceTimeField& o) const noexcept {
        return nt_ == o.nt_ && tlength_ == o.tlength_ && grid_ == o.grid_;
    }

private:
    int nt_;
    double tlength_;
    Grid2D grid_;
    int ncomp_;
    Representation rep_;
    std::vector<cplx> values_;
};

/// Space-time L2 norm, computed in either representation.
double l2_norm(const SpaceTimeField& f);

}  // namespace csgauge
