#include "csgauge/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csgauge/errors.hpp"
#include "csgauge/fft.hpp"

namespace csgauge {

Grid2D::Grid2D(int n1, int n2, double length) : n1_(n1), n2_(n2), length_(length) {
    if (n1 < 8 || n2 < 8 || n1 % 2 != 0 || n2 % 2 != 0)
        throw InputError("grid sizes must be even and >= 8, got " + std::to_string(n1) + "x" +
                         std::to_string(n2));
    if (!(length > 0.0) || !std::isfinite(length)) throw InputError("grid length must be positive");
}

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* what) {
    if (a != b) throw ShapeError(std::string("grid mismatch in ") + what);
}

ScalarField::ScalarField(const Grid2D& grid, Representation rep)
    : grid_(grid), values_(grid.size(), cplx{0.0, 0.0}), rep_(rep) {}

ScalarField::ScalarField(const Grid2D& grid, std::vector<cplx> values, Representation rep)
    : grid_(grid), values_(std::move(values)), rep_(rep) {
    if (values_.size() != grid_.size()) throw ShapeError("value array does not match grid");
}

ScalarField ScalarField::from_function(const Grid2D& grid,
                                       const std::function<cplx(double, double)>& f) {
    ScalarField out(grid);
    for (int i1 = 0; i1 < grid.n1(); ++i1)
        for (int i2 = 0; i2 < grid.n2(); ++i2) out.at(i1, i2) = f(grid.x1(i1), grid.x2(i2));
    return out;
}

ScalarField& ScalarField::make_spectral() {
    if (rep_ == Representation::Physical) {
        fft::forward2d(grid_.n1(), grid_.n2(), values_, values_);
        rep_ = Representation::Spectral;
    }
    return *this;
}

ScalarField& ScalarField::make_physical() {
    if (rep_ == Representation::Spectral) {
        fft::inverse2d(grid_.n1(), grid_.n2(), values_, values_);
        rep_ = Representation::Physical;
    }
    return *this;
}

ScalarField ScalarField::spectral() const {
    if (is_spectral()) return *this;
    ScalarField out(grid_, Representation::Spectral);
    fft::forward2d(grid_.n1(), grid_.n2(), values_, out.values_);
    return out;
}

ScalarField ScalarField::physical() const {
    if (!is_spectral()) return *this;
    ScalarField out(grid_, Representation::Physical);
    fft::inverse2d(grid_.n1(), grid_.n2(), values_, out.values_);
    return out;
}

namespace {
void match(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "field arithmetic");
    if (a.rep() != b.rep()) throw ShapeError("representation mismatch in field arithmetic");
}
}  // namespace

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    match(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    match(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

ScalarField& ScalarField::operator*=(cplx c) {
    for (auto& v : values_) v *= c;
    return *this;
}

ScalarField& ScalarField::axpy(cplx c, const ScalarField& o) {
    match(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += c * o.values_[i];
    return *this;
}

void ScalarField::set_zero() { std::fill(values_.begin(), values_.end(), cplx{0.0, 0.0}); }

double ScalarField::imag_ratio() const {
    const ScalarField p = physical();
    double mi = 0.0, mm = 0.0;
    for (const auto& v : p.values_) {
        mi = std::max(mi, std::abs(v.imag()));
        mm = std::max(mm, std::abs(v));
    }
    return mm == 0.0 ? 0.0 : mi / mm;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(cplx c, ScalarField a) { return a *= c; }

ScalarField pointwise(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "pointwise product");
    ScalarField pa = a.physical();
    const ScalarField pb = b.physical();
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    return pa;
}

ScalarField pointwise_conj(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "pointwise product");
    ScalarField pa = a.physical();
    const ScalarField pb = b.physical();
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] = std::conj(pa[i]) * pb[i];
    return pa;
}

cplx inner(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f.grid(), g.grid(), "inner product");
    const Grid2D& gr = f.grid();
    if (f.rep() == g.rep()) {
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < f.size(); ++i) s += std::conj(f[i]) * g[i];
        return s * (f.is_spectral() ? gr.area() : gr.cell_area());
    }
    return inner(f.spectral(), g.spectral());
}

double l2_norm(const ScalarField& f) { return std::sqrt(std::max(0.0, inner(f, f).real())); }

double rms_norm(const ScalarField& f) { return l2_norm(f) / f.grid().length(); }

cplx mean(const ScalarField& f) {
    if (f.is_spectral()) return f[0];
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i];
    return s / static_cast<double>(f.size());
}

SpinorField::SpinorField(ScalarField c0, ScalarField c1) : c{std::move(c0), std::move(c1)} {
    require_same_grid(c[0].grid(), c[1].grid(), "spinor components");
    if (c[0].rep() != c[1].rep()) throw ShapeError("spinor components differ in representation");
}

SpinorField& SpinorField::operator+=(const SpinorField& o) {
    c[0] += o.c[0];
    c[1] += o.c[1];
    return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& o) {
    c[0] -= o.c[0];
    c[1] -= o.c[1];
    return *this;
}

SpinorField& SpinorField::operator*=(cplx s) {
    c[0] *= s;
    c[1] *= s;
    return *this;
}

SpinorField& SpinorField::axpy(cplx s, const SpinorField& o) {
    c[0].axpy(s, o.c[0]);
    c[1].axpy(s, o.c[1]);
    return *this;
}

SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }

cplx inner(const SpinorField& f, const SpinorField& g) {
    return inner(f.c[0], g.c[0]) + inner(f.c[1], g.c[1]);
}

double l2_norm(const SpinorField& f) { return std::sqrt(std::max(0.0, inner(f, f).real())); }

OneForm::OneForm(ScalarField a0, ScalarField a1, ScalarField a2)
    : a{std::move(a0), std::move(a1), std::move(a2)} {
    require_same_grid(a[0].grid(), a[1].grid(), "one-form components");
    require_same_grid(a[0].grid(), a[2].grid(), "one-form components");
}

}  // namespace csgauge
