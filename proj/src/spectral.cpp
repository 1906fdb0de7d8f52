#include "csgauge/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "csgauge/errors.hpp"

namespace csgauge {

SpectralTables::SpectralTables(const Grid2D& g) : grid(g) {
    const std::size_t n = g.size();
    xi1.resize(n);
    xi2.resize(n);
    abs.resize(n);
    bracket.resize(n);
    unit1.resize(n);
    unit2.resize(n);
    keep.resize(n);
    const double cut1 = (2.0 / 3.0) * g.xi_nyquist1();
    const double cut2 = (2.0 / 3.0) * g.xi_nyquist2();
    for (int k1 = 0; k1 < g.n1(); ++k1) {
        for (int k2 = 0; k2 < g.n2(); ++k2) {
            const std::size_t i = g.index(k1, k2);
            const double a = g.xi1(k1), b = g.xi2(k2);
            const double r = std::hypot(a, b);
            xi1[i] = a;
            xi2[i] = b;
            abs[i] = r;
            bracket[i] = std::sqrt(1.0 + r * r);
            unit1[i] = r > 0.0 ? a / r : 0.0;
            unit2[i] = r > 0.0 ? b / r : 0.0;
            keep[i] = (std::abs(a) > cut1 || std::abs(b) > cut2) ? 0.0 : 1.0;
        }
    }
}

std::shared_ptr<const SpectralTables> tables_for(const Grid2D& grid) {
    static std::mutex m;
    static std::map<std::tuple<int, int, double>, std::shared_ptr<const SpectralTables>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_tuple(grid.n1(), grid.n2(), grid.length());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto t = std::make_shared<const SpectralTables>(grid);
    cache.emplace(key, t);
    return t;
}

ScalarField apply_multiplier(const ScalarField& f, const Symbol& symbol) {
    const Grid2D& g = f.grid();
    std::vector<cplx> table(g.size());
    for (int k1 = 0; k1 < g.n1(); ++k1) {
        for (int k2 = 0; k2 < g.n2(); ++k2) {
            const cplx v = symbol(g.xi1(k1), g.xi2(k2));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw MultiplierSingularityError("multiplier symbol is not finite at xi = (" +
                                                 std::to_string(g.xi1(k1)) + ", " +
                                                 std::to_string(g.xi2(k2)) + ")");
            table[g.index(k1, k2)] = v;
        }
    }
    return apply_table(f, table);
}

namespace {
template <class T>
ScalarField apply_any(const ScalarField& f, const std::vector<T>& table) {
    if (table.size() != f.size()) throw ShapeError("multiplier table does not match grid");
    ScalarField s = f.spectral();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= table[i];
    if (!f.is_spectral()) s.make_physical();
    return s;
}
}  // namespace

ScalarField apply_table(const ScalarField& f, const std::vector<double>& table) {
    return apply_any(f, table);
}

ScalarField apply_table(const ScalarField& f, const std::vector<cplx>& table) {
    return apply_any(f, table);
}

double riesz_symbol(int mu, Sign sign, double xi1, double xi2) {
    if (mu == 0) return -1.0;
    const double r = std::hypot(xi1, xi2);
    if (r == 0.0) return 0.0;
    if (mu == 1) return -sgn(sign) * xi1 / r;
    if (mu == 2) return -sgn(sign) * xi2 / r;
    throw InputError("Riesz index must be 0, 1 or 2");
}

double err_symbol(int mu, double xi1, double xi2) {
    if (mu < 0 || mu > 2) throw InputError("error operator index must be 0, 1 or 2");
    if (mu != 0) return 0.0;
    const double r2 = xi1 * xi1 + xi2 * xi2;
    // <xi> - |xi| = 1 / (<xi> + |xi|), free of cancellation at large |xi|.
    return 1.0 / (std::sqrt(1.0 + r2) + std::sqrt(r2));
}

ScalarField riesz(int mu, Sign sign, const ScalarField& f) {
    const auto t = tables_for(f.grid());
    if (mu == 0) return cplx{-1.0, 0.0} * f;
    if (mu != 1 && mu != 2) throw InputError("Riesz index must be 0, 1 or 2");
    std::vector<double> sym(mu == 1 ? t->unit1 : t->unit2);
    const double s = -sgn(sign);
    for (auto& v : sym) v *= s;
    return apply_table(f, sym);
}

ScalarField abs_nabla(const ScalarField& f) { return apply_table(f, tables_for(f.grid())->abs); }

ScalarField bracket_nabla(const ScalarField& f) {
    return apply_table(f, tables_for(f.grid())->bracket);
}

ScalarField err_op(int mu, const ScalarField& f) {
    return apply_multiplier(f, [mu](double a, double b) { return cplx{err_symbol(mu, a, b), 0.0}; });
}

ScalarField partial(int j, const ScalarField& f) {
    if (j != 1 && j != 2) throw InputError("spatial derivative index must be 1 or 2");
    const auto t = tables_for(f.grid());
    const auto& xi = j == 1 ? t->xi1 : t->xi2;
    std::vector<cplx> sym(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) sym[i] = cplx{0.0, xi[i]};
    return apply_table(f, sym);
}

ScalarField dealias(const ScalarField& f) { return apply_table(f, tables_for(f.grid())->keep); }

ScalarField zero_mean(const ScalarField& f) {
    ScalarField s = f.spectral();
    s[0] = 0.0;
    if (!f.is_spectral()) s.make_physical();
    return s;
}

ScalarField curl(const ScalarField& a1, const ScalarField& a2) {
    require_same_grid(a1.grid(), a2.grid(), "curl");
    ScalarField c = partial(1, a2.spectral());
    c -= partial(2, a1.spectral());
    return c;
}

ScalarField divergence(const ScalarField& a1, const ScalarField& a2) {
    require_same_grid(a1.grid(), a2.grid(), "divergence");
    ScalarField d = partial(1, a1.spectral());
    d += partial(2, a2.spectral());
    d *= -1.0;
    return d;
}

HodgeParts hodge_decompose(const ScalarField& a1, const ScalarField& a2) {
    require_same_grid(a1.grid(), a2.grid(), "hodge_decompose");
    const Grid2D& g = a1.grid();
    const auto t = tables_for(g);
    const ScalarField s1 = a1.spectral(), s2 = a2.spectral();
    HodgeParts h{{ScalarField(g, Representation::Spectral), ScalarField(g, Representation::Spectral)},
                 {ScalarField(g, Representation::Spectral), ScalarField(g, Representation::Spectral)},
                 {ScalarField(g, Representation::Spectral), ScalarField(g, Representation::Spectral)}};
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i == 0) {
            h.mean.v1[0] = s1[0];
            h.mean.v2[0] = s2[0];
            continue;
        }
        const double u1 = t->unit1[i], u2 = t->unit2[i];
        // Projection onto xi (curl-free) and its complement (divergence-free).
        const cplx along = u1 * s1[i] + u2 * s2[i];
        h.cf.v1[i] = u1 * along;
        h.cf.v2[i] = u2 * along;
        h.df.v1[i] = s1[i] - h.cf.v1[i];
        h.df.v2[i] = s2[i] - h.cf.v2[i];
    }
    return h;
}

VectorPair curl_preimage(const ScalarField& c) {
    const Grid2D& g = c.grid();
    const auto t = tables_for(g);
    const ScalarField s = c.spectral();
    VectorPair out{ScalarField(g, Representation::Spectral), ScalarField(g, Representation::Spectral)};
    for (std::size_t i = 1; i < g.size(); ++i) {
        const double r2 = t->abs[i] * t->abs[i];
        out.v1[i] = cplx{0.0, t->xi2[i]} * s[i] / r2;
        out.v2[i] = cplx{0.0, -t->xi1[i]} * s[i] / r2;
    }
    return out;
}

}  // namespace csgauge
