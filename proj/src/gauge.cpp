#include "csgauge/gauge.hpp"

#include <cmath>

#include "csgauge/dirac.hpp"
#include "csgauge/spectral.hpp"

namespace csgauge {

TwoForm::TwoForm(const Grid2D& grid, Representation rep) : c_(9, ScalarField(grid, rep)) {}

TwoForm two_form_from_current(const std::array<ScalarField, 3>& J, double coupling) {
    TwoForm N(J[0].grid());
    std::array<ScalarField, 3> Jh{J[0].spectral(), J[1].spectral(), J[2].spectral()};
    for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu)
            for (int la = 0; la < 3; ++la) {
                const int e = epsilon(mu, nu, la);
                if (e != 0) N(mu, nu).axpy(coupling * e, Jh[la]);
            }
    return N;
}

GaugeHalfWaves gauge_half_waves(const OneForm& a, const OneForm& at, const TwoForm& Nfield) {
    auto make = [&](int nu) {
        ScalarField v = at[nu].spectral();
        v -= Nfield(0, nu).spectral();
        return split(a[nu], v, Dispersion::Massless);
    };
    return {make(0), make(1), make(2)};
}

OneForm gauge_field(const GaugeHalfWaves& A) {
    auto sum = [](const HalfWaveState& h) {
        ScalarField s = h.plus.spectral();
        s += h.minus.spectral();
        return s.make_physical();
    };
    return OneForm(sum(A[0]), sum(A[1]), sum(A[2]));
}

ScalarField gauge_time_derivative(const GaugeHalfWaves& A, int nu, const TwoForm& Nfield) {
    ScalarField d = A[nu].plus.spectral();
    d -= A[nu].minus.spectral();
    const auto tab = tables_for(d.grid());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] *= cplx{0.0, -tab->abs[i]};
    d[0] += A[nu].drift;
    d += Nfield(0, nu).spectral();
    return d;
}

ScalarField gauge_half_wave_rhs(const TwoForm& Nfield, int nu, Sign sign) {
    const ScalarField n0 = Nfield(0, nu).spectral(), n1 = Nfield(1, nu).spectral(), n2 = Nfield(2, nu).spectral();
    const auto tab = tables_for(n0.grid());
    const double s = sgn(sign);
    ScalarField out(n0.grid(), Representation::Spectral);
    // -1/2 R^mu N_mu with R^0 = -1, R^j = -s xi_j / |xi|
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 0.5 * (n0[i] + s * (tab->unit1[i] * n1[i] + tab->unit2[i] * n2[i]));
    return out;
}

void gauge_diagnostics(const GaugeHalfWaves& A, const TwoForm& Nfield, DiagnosticsRecord& rec) {
    const OneForm a = gauge_field(A);
    ScalarField gauge = gauge_time_derivative(A, 0, Nfield);
    gauge += divergence(a[1], a[2]).spectral();
    rec.gauge_res = rms_norm(gauge);
    for (int j = 1; j <= 2; ++j) {
        ScalarField r = gauge_time_derivative(A, j, Nfield);
        r -= partial(j, a[0]).spectral();
        r -= Nfield(0, j).spectral();
        (j == 1 ? rec.F01_res : rec.F02_res) = rms_norm(r);
    }
    ScalarField r12 = curl(a[1], a[2]).spectral();
    r12 -= Nfield(1, 2).spectral();
    rec.F12_res = rms_norm(r12);
    rec.mean_defect = std::abs(mean(Nfield(1, 2)));
}

ScalarField b_field(const HalfWaveState& A1, const HalfWaveState& A2, Sign sign) {
    const ScalarField x1 = (sign == Sign::Plus ? A1.plus : A1.minus).spectral();
    const ScalarField x2 = (sign == Sign::Plus ? A2.plus : A2.minus).spectral();
    // R_{s,j} = -R^j_s
    ScalarField b = riesz(2, sign, x1);
    b -= riesz(1, sign, x2);
    return b;
}

ScalarField df_coupling(const HalfWaveState& A1, const HalfWaveState& A2, const ScalarField& f_plus,
                        const ScalarField& f_minus) {
    const HodgeParts h = hodge_decompose(A1.plus.spectral() + A1.minus.spectral(),
                                         A2.plus.spectral() + A2.minus.spectral());
    ScalarField out(f_plus.grid());
    for (Sign s : {Sign::Plus, Sign::Minus}) {
        const ScalarField& f = s == Sign::Plus ? f_plus : f_minus;
        out += pointwise(h.df.v1, riesz(1, s, f));
        out += pointwise(h.df.v2, riesz(2, s, f));
    }
    return out.make_spectral();
}

ScalarField df_coupling_nullform(const HalfWaveState& A1, const HalfWaveState& A2, const ScalarField& f_plus,
                                 const ScalarField& f_minus) {
    ScalarField out(f_plus.grid());
    for (Sign s2 : {Sign::Plus, Sign::Minus}) {
        const ScalarField B = b_field(A1, A2, s2);
        for (Sign s1 : {Sign::Plus, Sign::Minus}) {
            const ScalarField& f = s1 == Sign::Plus ? f_plus : f_minus;
            out += pointwise(riesz(1, s2, B), riesz(2, s1, f));
            out -= pointwise(riesz(2, s2, B), riesz(1, s1, f));
        }
    }
    return out.make_spectral();
}

}  // namespace csgauge
