#include "csgauge/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "csgauge/errors.hpp"
#include "csgauge/spectral.hpp"

namespace csgauge {

const std::vector<double>& omega_table(const Grid2D& grid, Dispersion d) {
    // The returned reference must outlive the call, so keep the owning pointer.
    static std::mutex m;
    static std::map<std::tuple<int, int, double>, std::shared_ptr<const SpectralTables>> keep;
    auto t = tables_for(grid);
    {
        std::lock_guard<std::mutex> lock(m);
        keep.emplace(std::make_tuple(grid.n1(), grid.n2(), grid.length()), t);
    }
    return d == Dispersion::Massless ? t->abs : t->bracket;
}

HalfWaveState split(const ScalarField& phi, const ScalarField& phit, Dispersion d) {
    require_same_grid(phi.grid(), phit.grid(), "split");
    const ScalarField p = phi.spectral(), v = phit.spectral();
    const auto& w = omega_table(phi.grid(), d);
    HalfWaveState h{ScalarField(phi.grid(), Representation::Spectral),
                    ScalarField(phi.grid(), Representation::Spectral), d, cplx{0.0, 0.0}};
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (w[i] == 0.0) {
            h.plus[i] = 0.5 * p[i];
            h.minus[i] = 0.5 * p[i];
            h.drift = v[i];
            continue;
        }
        // phi_t / (i omega)
        const cplx q = v[i] / cplx{0.0, w[i]};
        h.plus[i] = 0.5 * (p[i] - q);
        h.minus[i] = 0.5 * (p[i] + q);
    }
    return h;
}

std::pair<ScalarField, ScalarField> recombine(const HalfWaveState& h) {
    const auto& w = omega_table(h.plus.grid(), h.dispersion);
    ScalarField phi = h.plus.spectral();
    const ScalarField minus = h.minus.spectral();
    ScalarField phit(phi.grid(), Representation::Spectral);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        phit[i] = cplx{0.0, -w[i]} * (phi[i] - minus[i]);
        if (w[i] == 0.0) phit[i] += h.drift;
        phi[i] += minus[i];
    }
    return {std::move(phi), std::move(phit)};
}

HalfWaveState evolve_free(const HalfWaveState& h, double t) {
    const auto& w = omega_table(h.plus.grid(), h.dispersion);
    HalfWaveState out{h.plus.spectral(), h.minus.spectral(), h.dispersion, h.drift};
    for (std::size_t i = 0; i < w.size(); ++i) {
        const cplx e = std::polar(1.0, -t * w[i]);
        out.plus[i] *= e;
        out.minus[i] *= std::conj(e);
        if (w[i] == 0.0) {
            out.plus[i] += 0.5 * h.drift * t;
            out.minus[i] += 0.5 * h.drift * t;
        }
    }
    return out;
}

std::vector<double> simpson_weights(int nodes, double h) {
    if (nodes < 3 || nodes % 2 == 0)
        throw QuadratureError("composite Simpson needs an odd node count >= 3, got " + std::to_string(nodes));
    std::vector<double> w(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) {
        const double c = (k == 0 || k == nodes - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        w[k] = c * h / 3.0;
    }
    return w;
}

namespace {

void check_samples(const SourceSamples& F) {
    if (F.F.empty()) throw InputError("source samples are empty; F_0(0) is required");
    const Grid2D& g = F.F.front()[0].grid();
    for (const auto& s : F.F)
        for (const auto& c : s) require_same_grid(g, c.grid(), "source samples");
}

// First-derivative weights at x0 for the nodes x (Fornberg's recursion).
std::vector<double> derivative_weights(double x0, const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(2, 0.0));
    double c1 = 1.0, c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min<std::size_t>(i, 1);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = c[i][1];
    return w;
}

}  // namespace

ScalarField duhamel_divergence(const SourceSamples& F, Sign sign) {
    check_samples(F);
    const int K = F.nodes();
    const double t = F.t_end;
    const auto wts = simpson_weights(K, K > 1 ? t / (K - 1) : 0.0);
    const Grid2D& g = F.F.front()[0].grid();
    const auto tab = tables_for(g);
    const double s = sgn(sign);
    ScalarField out(g, Representation::Spectral);
    for (int k = 0; k < K; ++k) {
        const double tk = F.node_time(k);
        const ScalarField f0 = F.F[k][0].spectral(), f1 = F.F[k][1].spectral(), f2 = F.F[k][2].spectral();
        for (std::size_t i = 0; i < g.size(); ++i) {
            // R^mu F_mu = -F_0 - s (xi_j / |xi|) F_j
            const cplx rf = -f0[i] - s * (tab->unit1[i] * f1[i] + tab->unit2[i] * f2[i]);
            out[i] += wts[k] * std::polar(1.0, -s * (t - tk) * tab->abs[i]) * rf;
        }
    }
    out *= -0.5;
    return out;
}

HalfWaveState divergence_solution(const ScalarField& phi0, const ScalarField& phit0, const SourceSamples& F) {
    check_samples(F);
    ScalarField v = phit0.spectral();
    v -= F.F.front()[0].spectral();
    HalfWaveState h = evolve_free(split(phi0, v, Dispersion::Massless), F.t_end);
    h.plus += duhamel_divergence(F, Sign::Plus);
    h.minus += duhamel_divergence(F, Sign::Minus);
    return h;
}

std::pair<ScalarField, ScalarField> recombine_divergence(const HalfWaveState& h, const ScalarField& F0) {
    auto [phi, phit] = recombine(h);
    phit += F0.spectral();
    return {std::move(phi), std::move(phit)};
}

std::pair<ScalarField, ScalarField> reference_wave_solve(const ScalarField& phi0, const ScalarField& phit0,
                                                         const SourceSamples& F) {
    check_samples(F);
    const int K = F.nodes();
    if (K < 5) throw QuadratureError("reference solve needs at least 5 nodes");
    const double t = F.t_end;
    const double h = t / (K - 1);
    const auto wts = simpson_weights(K, h);
    const Grid2D& g = phi0.grid();
    const auto tab = tables_for(g);

    std::vector<ScalarField> f0;
    f0.reserve(K);
    for (int k = 0; k < K; ++k) f0.push_back(F.F[k][0].spectral());
    // d_t F_0 at node k by polynomial differentiation on a stencil of up to
    // kStencil nodes, centred where possible and shifted inward at the ends.
    constexpr int kStencil = 9;
    const int width = std::min(K, kStencil);
    std::vector<int> first(K);
    std::vector<std::vector<double>> dw(K);
    for (int k = 0; k < K; ++k) {
        first[k] = std::clamp(k - width / 2, 0, K - width);
        std::vector<double> xs(width);
        for (int j = 0; j < width; ++j) xs[j] = (first[k] + j - k) * h;
        dw[k] = derivative_weights(0.0, xs);
    }
    auto dF0 = [&](int k, std::size_t i) -> cplx {
        cplx acc = 0.0;
        for (int j = 0; j < width; ++j) acc += dw[k][j] * f0[first[k] + j][i];
        return acc;
    };
    auto sinc_kernel = [](double x, double w) { return w == 0.0 ? x : std::sin(x * w) / w; };

    const ScalarField p0 = phi0.spectral(), v0 = phit0.spectral();
    ScalarField phi(g, Representation::Spectral), phit(g, Representation::Spectral);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w = tab->abs[i];
        phi[i] = std::cos(t * w) * p0[i] + sinc_kernel(t, w) * v0[i];
        phit[i] = -w * std::sin(t * w) * p0[i] + std::cos(t * w) * v0[i];
    }
    for (int k = 0; k < K; ++k) {
        const double tk = F.node_time(k);
        const ScalarField f1 = F.F[k][1].spectral(), f2 = F.F[k][2].spectral();
        for (std::size_t i = 0; i < g.size(); ++i) {
            // d^mu F_mu = d_t F_0 - d_j F_j
            const cplx G = dF0(k, i) - cplx{0.0, tab->xi1[i]} * f1[i] - cplx{0.0, tab->xi2[i]} * f2[i];
            const double w = tab->abs[i];
            phi[i] += wts[k] * sinc_kernel(t - tk, w) * G;
            phit[i] += wts[k] * std::cos((t - tk) * w) * G;
        }
    }
    return {std::move(phi), std::move(phit)};
}

ScalarField duhamel_kg(const std::vector<ScalarField>& F, double t_end, Sign sign) {
    if (F.empty()) throw InputError("source samples are empty");
    const int K = static_cast<int>(F.size());
    const auto wts = simpson_weights(K, t_end / (K - 1));
    const Grid2D& g = F.front().grid();
    const auto tab = tables_for(g);
    const double s = sgn(sign);
    ScalarField out(g, Representation::Spectral);
    for (int k = 0; k < K; ++k) {
        const double tk = t_end * k / (K - 1);
        const ScalarField f = F[k].spectral();
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double w = tab->bracket[i];
            out[i] += wts[k] * std::polar(1.0, -s * (t_end - tk) * w) * f[i] / (2.0 * w);
        }
    }
    out *= cplx{0.0, s};
    return out;
}

}  // namespace csgauge
