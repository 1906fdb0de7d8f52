#include "csgauge/nullforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <tuple>

#include "csgauge/csv.hpp"
#include "csgauge/dirac.hpp"
#include "csgauge/errors.hpp"
#include "csgauge/parallel.hpp"
#include "csgauge/spectral.hpp"

namespace csgauge {

double angle(double a1, double a2, double b1, double b2) {
    if ((a1 == 0.0 && a2 == 0.0) || (b1 == 0.0 && b2 == 0.0)) return 0.0;
    return std::atan2(std::abs(a1 * b2 - a2 * b1), a1 * b1 + a2 * b2);
}

namespace {

void require_lattice(const SpaceTimeField& a, const SpaceTimeField& b) {
    if (!a.same_lattice(b)) throw ShapeError("space-time lattices differ");
}

void require_cap(const SpaceTimeField& f) {
    if (f.nt() > kNullformLatticeCap || f.grid().n1() > kNullformLatticeCap ||
        f.grid().n2() > kNullformLatticeCap)
        throw InputError("lattice exceeds the direct-convolution cap of " +
                         std::to_string(kNullformLatticeCap) + " points per axis");
}

// Spatial mode k2 = k0 - k1 (periodic) for every pair (k0, k1).
struct PairTable {
    std::vector<std::size_t> sub;
};

std::shared_ptr<const PairTable> pair_table(const Grid2D& g) {
    static std::mutex m;
    static std::map<std::pair<int, int>, std::shared_ptr<const PairTable>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(g.n1(), g.n2());
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto t = std::make_shared<PairTable>();
    const std::size_t ns = g.size();
    t->sub.resize(ns * ns);
    for (int a1 = 0; a1 < g.n1(); ++a1)
        for (int a2 = 0; a2 < g.n2(); ++a2)
            for (int b1 = 0; b1 < g.n1(); ++b1)
                for (int b2 = 0; b2 < g.n2(); ++b2) {
                    const int c1 = Grid2D::index_of_wavenumber(a1 - b1, g.n1());
                    const int c2 = Grid2D::index_of_wavenumber(a2 - b2, g.n2());
                    t->sub[g.index(a1, a2) * ns + g.index(b1, b2)] = g.index(c1, c2);
                }
    cache.emplace(key, t);
    return t;
}

// angle(s1 xi_a, s2 xi_b) for every pair of spatial modes (a, b).
std::shared_ptr<const std::vector<double>> angle_table(const Grid2D& g, Sign s1, Sign s2) {
    static std::mutex m;
    static std::map<std::tuple<int, int, double, int, int>, std::shared_ptr<const std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_tuple(g.n1(), g.n2(), g.length(), static_cast<int>(s1), static_cast<int>(s2));
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto t = std::make_shared<std::vector<double>>();
    const std::size_t ns = g.size();
    t->resize(ns * ns);
    const auto tab = tables_for(g);
    for (std::size_t a = 0; a < ns; ++a)
        for (std::size_t b = 0; b < ns; ++b)
            (*t)[a * ns + b] = angle(sgn(s1) * tab->xi1[a], sgn(s1) * tab->xi2[a],
                                     sgn(s2) * tab->xi1[b], sgn(s2) * tab->xi2[b]);
    cache.emplace(key, t);
    return t;
}

// Multiplies every time slice of a spectral field by a spatial symbol table.
SpaceTimeField apply_spatial(const SpaceTimeField& f, const std::vector<double>& table) {
    SpaceTimeField s = f.spectral();
    const std::size_t ns = f.grid().size();
    for (std::size_t i = 0; i < s.raw().size(); ++i) s.raw()[i] *= table[i % ns];
    return s;
}

std::vector<double> riesz_table(const Grid2D& g, int mu, Sign sign) {
    const auto tab = tables_for(g);
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = riesz_symbol(mu, sign, tab->xi1[i], tab->xi2[i]);
    return out;
}

// Physical-space product of two one-component fields, returned spectral.
SpaceTimeField product(const SpaceTimeField& a, const SpaceTimeField& b) {
    SpaceTimeField pa = a.physical();
    const SpaceTimeField pb = b.physical();
    for (std::size_t i = 0; i < pa.raw().size(); ++i) pa.raw()[i] *= pb.raw()[i];
    return pa.spectral();
}

void require_scalar(const SpaceTimeField& f) {
    if (f.ncomp() != 1) throw ShapeError("scalar null form needs one-component inputs");
}

}  // namespace

SpaceTimeField abstract_nullform(double ell, Sign s1, Sign s2, const SpaceTimeField& f1,
                                 const SpaceTimeField& f2) {
    require_lattice(f1, f2);
    require_cap(f1);
    const Grid2D& g = f1.grid();
    const int nt = f1.nt();
    const std::size_t ns = g.size();
    const SpaceTimeField m1 = f1.spectral_modulus();
    const SpaceTimeField m2 = f2.spectral_modulus();
    const auto pairs = pair_table(g);
    const auto angles = angle_table(g, s1, s2);

    std::vector<char> live1(ns, 0), live2(ns, 0);
    for (int t = 0; t < nt; ++t)
        for (std::size_t k = 0; k < ns; ++k) {
            if (m1.raw()[t * ns + k].real() != 0.0) live1[k] = 1;
            if (m2.raw()[t * ns + k].real() != 0.0) live2[k] = 1;
        }

    SpaceTimeField out(nt, f1.tlength(), g, 1, Representation::Spectral);
    std::vector<double> acc(static_cast<std::size_t>(nt));
    for (std::size_t k0 = 0; k0 < ns; ++k0) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t k1 = 0; k1 < ns; ++k1) {
            if (!live1[k1]) continue;
            const std::size_t k2 = pairs->sub[k0 * ns + k1];
            if (!live2[k2]) continue;
            const double a = (*angles)[k1 * ns + k2];
            if (ell < 0.0 && a == 0.0)
                throw SingularWeightError("negative angle order at a collinear mode pair");
            const double w = ell == 0.0 ? 1.0 : std::pow(a, ell);
            if (w == 0.0) continue;
            for (int t0 = 0; t0 < nt; ++t0) {
                double s = 0.0;
                for (int t1 = 0; t1 < nt; ++t1) {
                    const int t2 = (t0 - t1 + nt) % nt;
                    s += m1.raw()[t1 * ns + k1].real() * m2.raw()[t2 * ns + k2].real();
                }
                acc[t0] += w * s;
            }
        }
        for (int t0 = 0; t0 < nt; ++t0) out.raw()[t0 * ns + k0] = acc[t0];
    }
    return out;
}

SpaceTimeField nullform_Nmunu(int mu, int nu, Sign s1, Sign s2, const SpaceTimeField& f1,
                              const SpaceTimeField& f2) {
    require_lattice(f1, f2);
    require_scalar(f1);
    require_scalar(f2);
    const Grid2D& g = f1.grid();
    if (mu == nu) return SpaceTimeField(f1.nt(), f1.tlength(), g, 1, Representation::Spectral);
    SpaceTimeField a = product(apply_spatial(f1, riesz_table(g, mu, s1)), apply_spatial(f2, riesz_table(g, nu, s2)));
    const SpaceTimeField b =
        product(apply_spatial(f1, riesz_table(g, nu, s1)), apply_spatial(f2, riesz_table(g, mu, s2)));
    for (std::size_t i = 0; i < a.raw().size(); ++i) a.raw()[i] -= b.raw()[i];
    return a;
}

SpaceTimeField nullform_N0(Sign s1, Sign s2, const SpaceTimeField& f1, const SpaceTimeField& f2) {
    require_lattice(f1, f2);
    require_scalar(f1);
    require_scalar(f2);
    const Grid2D& g = f1.grid();
    SpaceTimeField out(f1.nt(), f1.tlength(), g, 1, Representation::Spectral);
    for (int mu = 0; mu < 3; ++mu) {
        const SpaceTimeField term =
            product(apply_spatial(f1, riesz_table(g, mu, s1)), apply_spatial(f2, riesz_table(g, mu, s2)));
        const double lower = eta(mu, mu);
        for (std::size_t i = 0; i < out.raw().size(); ++i) out.raw()[i] += lower * term.raw()[i];
    }
    return out;
}

namespace {
// Applies a per-spatial-mode 2x2 matrix to a two-component spectral field.
template <class MatFn>
SpaceTimeField apply_spinor_symbol(const SpaceTimeField& psi, MatFn&& mat) {
    SpaceTimeField s = psi.spectral();
    const std::size_t ns = psi.grid().size(), slice = psi.slice_size();
    for (std::size_t i = 0; i < slice; ++i) {
        const Matrix2C m = mat(i % ns);
        const cplx u = s.raw()[i], v = s.raw()[slice + i];
        s.raw()[i] = m(0, 0) * u + m(0, 1) * v;
        s.raw()[slice + i] = m(1, 0) * u + m(1, 1) * v;
    }
    return s;
}
}  // namespace

SpaceTimeField spinor_nullform(Sign s1, Sign s2, const SpaceTimeField& psi1,
                               const SpaceTimeField& psi2, int mu) {
    require_lattice(psi1, psi2);
    if (psi1.ncomp() != 2 || psi2.ncomp() != 2) throw ShapeError("spinor null form needs two-component inputs");
    const Grid2D& g = psi1.grid();
    const auto p1 = projection_for(g, s1);
    const auto p2 = projection_for(g, s2);
    const auto q2 = projection_for(g, flip(s2));
    const Matrix2C a = alpha(mu);
    const SpaceTimeField u = apply_spinor_symbol(psi1, [&](std::size_t k) { return (*p1)[k]; }).physical();
    const SpaceTimeField v =
        apply_spinor_symbol(psi2, [&](std::size_t k) -> Matrix2C { return (*q2)[k] * a * (*p2)[k]; }).physical();
    SpaceTimeField out(psi1.nt(), psi1.tlength(), g, 1, Representation::Physical);
    const std::size_t slice = psi1.slice_size();
    for (std::size_t i = 0; i < slice; ++i)
        out.raw()[i] = std::conj(u.raw()[i]) * v.raw()[i] + std::conj(u.raw()[slice + i]) * v.raw()[slice + i];
    return out.spectral();
}

SpaceTimeField conjugate(const SpaceTimeField& f) {
    SpaceTimeField p = f.physical();
    for (auto& v : p.raw()) v = std::conj(v);
    return p;
}

std::string to_string(NullFormKind kind) {
    switch (kind) {
        case NullFormKind::N01: return "N01";
        case NullFormKind::N02: return "N02";
        case NullFormKind::N12: return "N12";
        case NullFormKind::N0: return "N0";
        case NullFormKind::Spinor0: return "spinor0";
        case NullFormKind::Spinor1: return "spinor1";
        case NullFormKind::Spinor2: return "spinor2";
    }
    return "unknown";
}

std::vector<NullFormKind> all_nullform_kinds() {
    return {NullFormKind::N01, NullFormKind::N02, NullFormKind::N12, NullFormKind::N0,
            NullFormKind::Spinor0, NullFormKind::Spinor1, NullFormKind::Spinor2};
}

double dominating_order(NullFormKind kind) { return kind == NullFormKind::N0 ? 2.0 : 1.0; }

bool is_spinor(NullFormKind kind) {
    return kind == NullFormKind::Spinor0 || kind == NullFormKind::Spinor1 || kind == NullFormKind::Spinor2;
}

namespace {

FormPair evaluate_form_unscaled(NullFormKind kind, Sign s1, Sign s2, const SpaceTimeField& f1,
                       const SpaceTimeField& f2) {
    const double ell = dominating_order(kind);
    switch (kind) {
        case NullFormKind::N01:
            return {nullform_Nmunu(0, 1, s1, s2, f1, f2), abstract_nullform(ell, s1, s2, f1, f2)};
        case NullFormKind::N02:
            return {nullform_Nmunu(0, 2, s1, s2, f1, f2), abstract_nullform(ell, s1, s2, f1, f2)};
        case NullFormKind::N12:
            return {nullform_Nmunu(1, 2, s1, s2, f1, f2), abstract_nullform(ell, s1, s2, f1, f2)};
        case NullFormKind::N0:
            return {nullform_N0(s1, s2, f1, f2), abstract_nullform(ell, s1, s2, f1, f2)};
        case NullFormKind::Spinor0:
        case NullFormKind::Spinor1:
        case NullFormKind::Spinor2: {
            const int mu = kind == NullFormKind::Spinor0 ? 0 : (kind == NullFormKind::Spinor1 ? 1 : 2);
            return {spinor_nullform(s1, s2, f1, f2, mu), abstract_nullform(ell, flip(s1), s2, conjugate(f1), f2)};
        }
    }
    throw InputError("unknown null form");
}

double spectral_l1(const SpaceTimeField& f) {
    const SpaceTimeField m = f.spectral_modulus();
    double sum = 0.0;
    for (const auto& v : m.raw()) sum += v.real();
    return sum;
}

}  // namespace

FormPair evaluate_form(NullFormKind kind, Sign s1, Sign s2, const SpaceTimeField& f1,
                       const SpaceTimeField& f2) {
    FormPair p = evaluate_form_unscaled(kind, s1, s2, f1, f2);
    p.scale = spectral_l1(f1) * spectral_l1(f2);
    return p;
}

double dominance_ratio(const FormPair& pair) {
    const auto& form = pair.form.raw();
    const auto& dom = pair.dominant.raw();
    double max_form = 0.0, max_dom = 0.0;
    for (const auto& v : form) max_form = std::max(max_form, std::abs(v));
    for (const auto& v : dom) max_dom = std::max(max_dom, v.real());
    // Zero tests are relative to the input scale (or, without one, to the
    // largest coefficient): transform roundoff leaves ~1e-16 residue where the
    // exact form vanishes.
    const double form_zero = 1e-12 * (pair.scale > 0.0 ? pair.scale : std::max(max_form, max_dom));
    const double dom_zero = 1e-12 * max_dom;
    double sup = 0.0;
    for (std::size_t i = 0; i < form.size(); ++i) {
        const double f = std::abs(form[i]);
        const double d = dom[i].real();
        if (d <= dom_zero) {
            if (f > form_zero) return std::numeric_limits<double>::infinity();
            continue;
        }
        sup = std::max(sup, f / d);
    }
    return sup;
}

SpaceTimeField random_input(int nt, double tlength, const Grid2D& grid, int ncomp, int active,
                            std::mt19937_64& rng) {
    SpaceTimeField f(nt, tlength, grid, ncomp, Representation::Spectral);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t ns = grid.size();
    const std::size_t slice = f.slice_size();
    // Nyquist wavenumbers alias with their negatives, which makes the angle of a
    // conjugated mode ambiguous; inputs avoid them along with the zero frequency.
    auto usable = [&](std::size_t i) {
        const std::size_t m = i % ns;
        const int k1 = static_cast<int>(m / static_cast<std::size_t>(grid.n2()));
        const int k2 = static_cast<int>(m % static_cast<std::size_t>(grid.n2()));
        return m != 0 && k1 != grid.n1() / 2 && k2 != grid.n2() / 2;
    };
    if (active <= 0) {
        for (int c = 0; c < ncomp; ++c)
            for (std::size_t i = 0; i < slice; ++i) {
                const cplx v{gauss(rng), gauss(rng)};
                if (usable(i)) f.raw()[c * slice + i] = v;
            }
        return f;
    }
    std::uniform_int_distribution<std::size_t> pick(0, slice - 1);
    for (int a = 0; a < active; ++a) {
        std::size_t i = pick(rng);
        while (!usable(i)) i = pick(rng);
        for (int c = 0; c < ncomp; ++c) f.raw()[c * slice + i] = cplx{gauss(rng), gauss(rng)};
    }
    return f;
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) {
    // splitmix64 finalizer over (base, trial).
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

DominanceResult run_dominance(NullFormKind kind, Sign s1, Sign s2, const DominanceSetup& setup) {
    const Grid2D grid(setup.n, setup.n, setup.length);
    const int ncomp = is_spinor(kind) ? 2 : 1;
    std::vector<double> ratios(static_cast<std::size_t>(setup.trials), 0.0);
    parallel_for(ratios.size(), setup.threads, [&](std::size_t i) {
        std::mt19937_64 rng(trial_seed(setup.seed, i));
        // Sparse inputs probe individual mode pairs, dense ones probe cancellation.
        static constexpr int kActive[] = {1, 2, 3, 8, 0};
        const int active = kActive[i % 5];
        const SpaceTimeField f1 = random_input(setup.nt, setup.tlength, grid, ncomp, active, rng);
        const SpaceTimeField f2 = random_input(setup.nt, setup.tlength, grid, ncomp, active, rng);
        ratios[i] = dominance_ratio(evaluate_form(kind, s1, s2, f1, f2));
    });
    DominanceResult r{kind, s1, s2, dominating_order(kind), setup.trials, 0.0, trial_seed(setup.seed, 0)};
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (ratios[i] > r.sup_ratio || std::isnan(ratios[i])) {
            r.sup_ratio = ratios[i];
            r.argmax_seed = trial_seed(setup.seed, i);
        }
    }
    return r;
}

double projector_angle_probe(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double sup = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double a1 = gauss(rng), a2 = gauss(rng);
        double b1 = gauss(rng), b2 = gauss(rng);
        if (i % 10 == 0) {
            b1 = a1;
            b2 = a2;
        } else if (i % 10 == 1) {
            // Nearly collinear pairs probe the small-angle regime.
            const double eps = std::pow(10.0, -1.0 - 7.0 * std::uniform_real_distribution<double>(0, 1)(rng));
            const double scale = std::exp(gauss(rng));
            b1 = scale * (a1 - eps * a2);
            b2 = scale * (a2 + eps * a1);
        }
        Vector2C z(cplx{gauss(rng), gauss(rng)}, cplx{gauss(rng), gauss(rng)});
        const Vector2C w = projection_matrix(Sign::Plus, a1, a2) * projection_matrix(Sign::Minus, b1, b2) * z;
        const double ang = angle(a1, a2, b1, b2);
        if (ang == 0.0) continue;  // 0/0 convention
        sup = std::max(sup, w.norm() / (z.norm() * ang));
    }
    return sup;
}

double angle_bound_probe(int samples, std::uint64_t seed, Sign s1, Sign s2, bool on_cone) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto br = [](double x) { return std::sqrt(1.0 + x * x); };
    double sup = 0.0;
    for (int i = 0; i < samples; ++i) {
        // Log-uniform magnitudes over [1e-2, 1e3], uniform directions.
        auto vec = [&](double& x, double& y) {
            const double r = std::pow(10.0, -2.0 + 5.0 * unit(rng));
            const double th = 2.0 * std::numbers::pi * unit(rng);
            x = r * std::cos(th);
            y = r * std::sin(th);
        };
        double x1, y1, x2, y2;
        vec(x1, y1);
        vec(x2, y2);
        const double n1 = std::hypot(x1, y1), n2 = std::hypot(x2, y2);
        double t1 = -sgn(s1) * n1, t2 = -sgn(s2) * n2;
        if (!on_cone) {
            t1 += gauss(rng) * std::pow(10.0, 3.0 * unit(rng) - 1.0);
            t2 += gauss(rng) * std::pow(10.0, 3.0 * unit(rng) - 1.0);
        }
        const double t0 = t1 + t2;
        const double n0 = std::hypot(x1 + x2, y1 + y2);
        const double ang = angle(sgn(s1) * x1, sgn(s1) * y1, sgn(s2) * x2, sgn(s2) * y2);
        const double denom = br(std::abs(t0) - n0) + br(t1 + sgn(s1) * n1) + br(t2 + sgn(s2) * n2);
        sup = std::max(sup, ang * std::sqrt(std::min(br(n1), br(n2)) / denom));
    }
    return sup;
}

void write_dominance_csv(std::ostream& os, const std::vector<DominanceResult>& rows) {
    os << "form,signs,l,trials,sup_ratio,argmax_input_seed\n";
    for (const auto& r : rows) {
        os << to_string(r.kind) << ',' << (r.s1 == Sign::Plus ? '+' : '-') << (r.s2 == Sign::Plus ? '+' : '-')
           << ',' << format_double(r.ell) << ',' << r.trials << ',' << format_double(r.sup_ratio) << ','
           << r.argmax_seed << '\n';
    }
}

}  // namespace csgauge
