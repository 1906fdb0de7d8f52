#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace csgauge {

using cplx = std::complex<double>;

enum class Sign : int { Plus = 1, Minus = -1 };

constexpr double sgn(Sign s) noexcept { return s == Sign::Plus ? 1.0 : -1.0; }
constexpr Sign flip(Sign s) noexcept { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

/// Periodic box [0,L)^2 sampled on n1 x n2 points.
///
/// Storage is row-major with the x1 index slowest. Frequency index k maps
/// to the wavenumber (2 pi / L) * k' with k' in {-n/2+1, ..., n/2}.
class Grid2D {
public:
    Grid2D(int n1, int n2, double length);

    int n1() const noexcept { return n1_; }
    int n2() const noexcept { return n2_; }
    double length() const noexcept { return length_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(n1_) * n2_; }
    double dx1() const noexcept { return length_ / n1_; }
    double dx2() const noexcept { return length_ / n2_; }
    /// Area of one grid cell; the quadrature weight of the physical L2 product.
    double cell_area() const noexcept { return dx1() * dx2(); }
    double area() const noexcept { return length_ * length_; }

    std::size_t index(int i1, int i2) const noexcept {
        return static_cast<std::size_t>(i1) * n2_ + i2;
    }
    double x1(int i1) const noexcept { return i1 * dx1(); }
    double x2(int i2) const noexcept { return i2 * dx2(); }

    /// Signed integer frequency of index k on an axis with n points.
    static int wavenumber_index(int k, int n) noexcept { return k <= n / 2 ? k : k - n; }
    /// Inverse of wavenumber_index, wrapping periodically.
    static int index_of_wavenumber(int m, int n) noexcept { return ((m % n) + n) % n; }

    double xi1(int k1) const noexcept { return dk() * wavenumber_index(k1, n1_); }
    double xi2(int k2) const noexcept { return dk() * wavenumber_index(k2, n2_); }
    double dk() const noexcept { return 2.0 * std::numbers::pi / length_; }
    double xi_nyquist1() const noexcept { return dk() * (n1_ / 2); }
    double xi_nyquist2() const noexcept { return dk() * (n2_ / 2); }

    bool operator==(const Grid2D& o) const noexcept {
        return n1_ == o.n1_ && n2_ == o.n2_ && length_ == o.length_;
    }
    bool operator!=(const Grid2D& o) const noexcept { return !(*this == o); }

private:
    int n1_;
    int n2_;
    double length_;
};

enum class Representation : std::uint8_t { Physical = 0, Spectral = 1 };

/// Complex grid function tagged with its representation.
///
/// Spectral values are Fourier coefficients with the 1/(n1 n2) factor on the
/// forward transform, so that f(x) = sum_k fhat_k e^{i xi_k . x}.
class ScalarField {
public:
    explicit ScalarField(const Grid2D& grid, Representation rep = Representation::Physical);
    ScalarField(const Grid2D& grid, std::vector<cplx> values, Representation rep);

    static ScalarField from_function(const Grid2D& grid,
                                     const std::function<cplx(double, double)>& f);

    const Grid2D& grid() const noexcept { return grid_; }
    Representation rep() const noexcept { return rep_; }
    bool is_spectral() const noexcept { return rep_ == Representation::Spectral; }
    std::size_t size() const noexcept { return values_.size(); }

    cplx& operator[](std::size_t i) { return values_[i]; }
    const cplx& operator[](std::size_t i) const { return values_[i]; }
    cplx& at(int i1, int i2) { return values_[grid_.index(i1, i2)]; }
    const cplx& at(int i1, int i2) const { return values_[grid_.index(i1, i2)]; }
    std::span<cplx> values() noexcept { return values_; }
    std::span<const cplx> values() const noexcept { return values_; }
    std::vector<cplx>& raw() noexcept { return values_; }
    const std::vector<cplx>& raw() const noexcept { return values_; }

    ScalarField spectral() const;
    ScalarField physical() const;
    ScalarField& make_spectral();
    ScalarField& make_physical();

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(cplx c);
    /// this += c * o
    ScalarField& axpy(cplx c, const ScalarField& o);
    void set_zero();

    /// max |Im f| / max |f| in physical representation (0 for the zero field).
    double imag_ratio() const;
    double max_abs() const;
    bool all_finite() const;

private:
    Grid2D grid_;
    std::vector<cplx> values_;
    Representation rep_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(cplx c, ScalarField a);

/// Pointwise product of two fields, computed in physical space.
ScalarField pointwise(const ScalarField& a, const ScalarField& b);
/// Pointwise conj(a) * b.
ScalarField pointwise_conj(const ScalarField& a, const ScalarField& b);

/// Grid L2 inner product <f,g> = integral of conj(f) g; representation independent.
cplx inner(const ScalarField& f, const ScalarField& g);
double l2_norm(const ScalarField& f);
/// L2 norm divided by the square root of the box area.
double rms_norm(const ScalarField& f);
/// Mean value over the box.
cplx mean(const ScalarField& f);

struct SpinorField {
    std::array<ScalarField, 2> c;

    explicit SpinorField(const Grid2D& grid, Representation rep = Representation::Physical)
        : c{ScalarField(grid, rep), ScalarField(grid, rep)} {}
    SpinorField(ScalarField c0, ScalarField c1);

    const Grid2D& grid() const noexcept { return c[0].grid(); }
    Representation rep() const noexcept { return c[0].rep(); }
    SpinorField spectral() const { return SpinorField(c[0].spectral(), c[1].spectral()); }
    SpinorField physical() const { return SpinorField(c[0].physical(), c[1].physical()); }
    SpinorField& operator+=(const SpinorField& o);
    SpinorField& operator-=(const SpinorField& o);
    SpinorField& operator*=(cplx s);
    SpinorField& axpy(cplx s, const SpinorField& o);
};

SpinorField operator+(SpinorField a, const SpinorField& b);
SpinorField operator-(SpinorField a, const SpinorField& b);
cplx inner(const SpinorField& f, const SpinorField& g);
double l2_norm(const SpinorField& f);

struct OneForm {
    std::array<ScalarField, 3> a;

    explicit OneForm(const Grid2D& grid, Representation rep = Representation::Physical)
        : a{ScalarField(grid, rep), ScalarField(grid, rep), ScalarField(grid, rep)} {}
    OneForm(ScalarField a0, ScalarField a1, ScalarField a2);

    const Grid2D& grid() const noexcept { return a[0].grid(); }
    ScalarField& operator[](int mu) { return a[static_cast<std::size_t>(mu)]; }
    const ScalarField& operator[](int mu) const { return a[static_cast<std::size_t>(mu)]; }
};

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* what);

}  // namespace csgauge
