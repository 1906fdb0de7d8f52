#include "csgauge/csh.hpp"

#include <cmath>

#include "csgauge/dirac.hpp"
#include "csgauge/errors.hpp"
#include "csgauge/spectral.hpp"

namespace csgauge::csh {

namespace {

constexpr double kCoupling = 2.0;
constexpr int kBlocks = 8;  // A_{nu,+}, A_{nu,-} for nu = 0..2, then phi_+, phi_-

ScalarField maybe_dealias(const ScalarField& f, bool on) { return on ? dealias(f.spectral()) : f.spectral(); }

ScalarField block(const Packed& u, const Grid2D& g, int b) {
    const std::size_t n = g.size();
    return ScalarField(g, std::vector<cplx>(u.begin() + b * n, u.begin() + (b + 1) * n), Representation::Spectral);
}

void put(Packed& u, int b, const ScalarField& f) {
    const ScalarField s = f.spectral();
    std::copy(s.raw().begin(), s.raw().end(), u.begin() + b * s.size());
}

ScalarField imag_part(ScalarField f) {
    f.make_physical();
    for (auto& z : f.values()) z = {z.imag(), 0.0};
    return f;
}

// Dealiased product in physical representation.
ScalarField product(const ScalarField& a, const ScalarField& b, bool on) {
    return maybe_dealias(pointwise(a, b), on).make_physical();
}

std::array<ScalarField, 3> all_derivatives(const HalfWaveState& phi) {
    return {derivative(0, phi).make_physical(), derivative(1, phi).make_physical(),
            derivative(2, phi).make_physical()};
}

ScalarField phi_of(const HalfWaveState& h) { return (h.plus.spectral() + h.minus.spectral()).make_physical(); }

}  // namespace

ScalarField constraint_source(const ScalarField& f, const ScalarField& g, const ScalarField& a0, bool dealias_on) {
    const ScalarField fg = maybe_dealias(pointwise_conj(f, g), dealias_on).make_physical();
    const ScalarField rho = maybe_dealias(pointwise_conj(f, f), dealias_on).make_physical();
    ScalarField s = imag_part(fg);
    s -= product(a0, rho, dealias_on);
    s *= 2.0;
    return s;
}

ScalarField zero_mean_velocity(const ScalarField& f, const ScalarField& g, const ScalarField& a0, bool dealias_on) {
    const double m = mean(pointwise_conj(f, f)).real();
    if (m == 0.0) return g;
    const cplx c = -mean(constraint_source(f, g, a0, dealias_on)).real() / (2.0 * m);
    ScalarField out = g.physical();
    out.axpy(cplx{0.0, 1.0} * c, f.physical());
    return out;
}

InitialData build_initial_data(const ScalarField& f, const ScalarField& g, const ScalarField& a0,
                               const ScalarField& divpot, bool dealias_on) {
    require_same_grid(f.grid(), g.grid(), "build_initial_data");
    require_same_grid(f.grid(), a0.grid(), "build_initial_data");
    require_same_grid(f.grid(), divpot.grid(), "build_initial_data");
    ScalarField source = constraint_source(f, g, a0, dealias_on).spectral();
    const double defect = std::abs(source[0]);
    source[0] = 0.0;
    VectorPair df = curl_preimage(source);
    ScalarField a1 = df.v1.spectral() + partial(1, divpot.spectral());
    ScalarField a2 = df.v2.spectral() + partial(2, divpot.spectral());
    return InitialData{OneForm(a0.physical(), a1.make_physical(), a2.make_physical()), defect};
}

ScalarField derivative(int mu, const HalfWaveState& phi) {
    const ScalarField p = phi.plus.spectral(), m = phi.minus.spectral();
    const auto tab = tables_for(p.grid());
    ScalarField out(p.grid(), Representation::Spectral);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double x1 = tab->xi1[i], x2 = tab->xi2[i];
        const double e = err_symbol(mu, x1, x2);
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            const cplx si{0.0, sgn(s)};
            // R_{s,mu} = eta_{mu mu} R^mu_s
            const double r = eta(mu, mu) * riesz_symbol(mu, s, x1, x2);
            out[i] += (si * r * tab->abs[i] - si * e) * (s == Sign::Plus ? p[i] : m[i]);
        }
    }
    return out;
}

std::array<ScalarField, 3> current(const OneForm& A, const ScalarField& phi, const std::array<ScalarField, 3>& dphi,
                                   bool dealias_on) {
    const ScalarField rho = maybe_dealias(pointwise_conj(phi, phi), dealias_on).make_physical();
    std::array<ScalarField, 3> J{ScalarField(phi.grid()), ScalarField(phi.grid()), ScalarField(phi.grid())};
    for (int la = 0; la < 3; ++la) {
        // Im(conj(phi) d^la phi) - A^la |phi|^2 with d^la = eta d_la, A^la = eta A_la
        ScalarField j = imag_part(maybe_dealias(pointwise_conj(phi, dphi[la]), dealias_on));
        j -= product(A[la], rho, dealias_on);
        j *= eta(la, la);
        J[la] = std::move(j);
    }
    return J;
}

Nonlinearities nonlinearities(const OneForm& A, const ScalarField& phi, const std::array<ScalarField, 3>& dphi,
                              const Params& params) {
    const bool d = params.dealias;
    ScalarField adphi(phi.grid()), aa(phi.grid());
    for (int mu = 0; mu < 3; ++mu) {
        adphi.axpy(eta(mu, mu), product(A[mu], dphi[mu], d));
        aa.axpy(eta(mu, mu), product(A[mu], A[mu], d));
    }
    ScalarField F = product(aa, phi, d);
    F.axpy(cplx{0.0, 2.0}, adphi);
    if (params.compensate_mass) F += phi.physical();
    return Nonlinearities{two_form_from_current(current(A, phi, dphi, d), kCoupling), std::move(F)};
}

State initial_half_waves(const OneForm& a, const ScalarField& f, const ScalarField& g, const Params& params) {
    const Grid2D& grid = f.grid();
    const std::array<ScalarField, 3> dphi{g.physical(), partial(1, f).physical(), partial(2, f).physical()};
    const TwoForm N = two_form_from_current(current(a, f.physical(), dphi, params.dealias), kCoupling);
    OneForm at(grid, Representation::Spectral);
    at[0] = (-1.0 * divergence(a[1], a[2])).spectral();
    for (int j = 1; j <= 2; ++j) at[j] = partial(j, a[0].spectral()) + N(0, j).spectral();
    State s{gauge_half_waves(a, at, N), split(f, g, Dispersion::Massive), 0.0};
    if (!params.couple_gauge)
        for (auto& h : s.A) {
            h.plus.set_zero();
            h.minus.set_zero();
            h.drift = 0.0;
        }
    return s;
}

Fields fields(const State& s, const Params& params) {
    const OneForm A = gauge_field(s.A);
    const ScalarField phi = phi_of(s.phi);
    const auto dphi = all_derivatives(s.phi);
    const TwoForm N = two_form_from_current(current(A, phi, dphi, params.dealias), kCoupling);
    OneForm At(s.grid());
    for (int nu = 0; nu < 3; ++nu) At[nu] = gauge_time_derivative(s.A, nu, N).make_physical();
    return Fields{A, At, phi, dphi[0]};
}

double energy(const State& s, const Params& params) {
    const OneForm A = params.couple_gauge ? gauge_field(s.A) : OneForm(s.grid());
    const ScalarField phi = phi_of(s.phi);
    const auto dphi = all_derivatives(s.phi);
    double e = 0.0;
    for (int mu = 0; mu < 3; ++mu) {
        ScalarField d = dphi[mu];
        d.axpy(cplx{0.0, -1.0}, product(A[mu], phi, params.dealias));
        const double n = l2_norm(d);
        e += 0.5 * n * n;
    }
    return e;
}

double linear_form(const State& s) {
    const auto [phi, phit] = recombine(s.phi);
    const auto tab = tables_for(s.grid());
    double sum = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double b = tab->bracket[i];
        sum += b * b * std::norm(phi[i]) + std::norm(phit[i]);
    }
    return s.grid().area() * sum;
}

DiagnosticsRecord diagnostics(const State& s, const Params& params) {
    const OneForm A = gauge_field(s.A);
    const ScalarField phi = phi_of(s.phi);
    const auto dphi = all_derivatives(s.phi);
    const TwoForm N = two_form_from_current(current(A, phi, dphi, params.dealias), kCoupling);
    DiagnosticsRecord r;
    r.t = s.time;
    r.conserved = energy(s, params);
    gauge_diagnostics(s.A, N, r);
    return r;
}

Packed pack(const State& s) {
    const std::size_t n = s.grid().size();
    Packed u(kBlocks * n);
    for (int nu = 0; nu < 3; ++nu) {
        put(u, 2 * nu, s.A[nu].plus);
        put(u, 2 * nu + 1, s.A[nu].minus);
    }
    put(u, 6, s.phi.plus);
    put(u, 7, s.phi.minus);
    return u;
}

State unpack(const Packed& u, const State& like, double time) {
    const Grid2D& g = like.grid();
    if (u.size() != kBlocks * g.size()) throw ShapeError("packed CSH state has the wrong size");
    State s = like;
    for (int nu = 0; nu < 3; ++nu) {
        s.A[nu].plus = block(u, g, 2 * nu);
        s.A[nu].minus = block(u, g, 2 * nu + 1);
    }
    s.phi.plus = block(u, g, 6);
    s.phi.minus = block(u, g, 7);
    s.time = time;
    return s;
}

SemilinearProblem make_problem(const State& s, const Params& params) {
    const Grid2D g = s.grid();
    const std::size_t n = g.size();
    const auto tab = tables_for(g);
    SemilinearProblem p;
    p.omega.resize(kBlocks * n);
    for (int b = 0; b < kBlocks; ++b) {
        const double sign = b % 2 == 0 ? 1.0 : -1.0;
        const auto& w = b < 6 ? tab->abs : tab->bracket;
        for (std::size_t i = 0; i < n; ++i) p.omega[b * n + i] = sign * w[i];
    }
    p.drift.assign(kBlocks * n, cplx{0.0, 0.0});
    if (params.couple_gauge)
        for (int nu = 0; nu < 3; ++nu) {
            p.drift[2 * nu * n] = 0.5 * s.A[nu].drift;
            p.drift[(2 * nu + 1) * n] = 0.5 * s.A[nu].drift;
        }
    const State like = s;
    p.N = [g, params, like, tab](const Packed& u, Packed& out) {
        const State st = unpack(u, like, 0.0);
        const OneForm A = params.couple_gauge ? gauge_field(st.A) : OneForm(g);
        const ScalarField phi = phi_of(st.phi);
        const Nonlinearities nl = nonlinearities(A, phi, all_derivatives(st.phi), params);
        std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
        if (params.couple_gauge)
            for (int nu = 0; nu < 3; ++nu) {
                put(out, 2 * nu, gauge_half_wave_rhs(nl.N, nu, Sign::Plus));
                put(out, 2 * nu + 1, gauge_half_wave_rhs(nl.N, nu, Sign::Minus));
            }
        // d_t phi_pm gets +- i F / (2 <nabla>)
        const ScalarField F = nl.F.spectral();
        ScalarField fp(g, Representation::Spectral);
        for (std::size_t i = 0; i < fp.size(); ++i) fp[i] = cplx{0.0, 1.0} * F[i] / (2.0 * tab->bracket[i]);
        put(out, 6, fp);
        fp *= -1.0;
        put(out, 7, fp);
    };
    return p;
}

Run evolve(const State& s0, const Params& params, const EvolveOptions& opt, const Sampler& on_sample) {
    const SemilinearProblem p = make_problem(s0, params);
    Run run{s0, {}};
    const Packed end = evolve_packed(p, pack(s0), s0.time, opt, [&](const Packed& u, double t) {
        const State st = unpack(u, s0, t);
        run.records.push_back(diagnostics(st, params));
        if (on_sample) on_sample(st, run.records.back());
    });
    run.final_state = unpack(end, s0, s0.time + opt.steps * opt.dt);
    return run;
}

std::vector<State> picard_step(const std::vector<State>& prev, const Params& params, double T, int threads) {
    if (prev.empty()) throw InputError("Picard step needs a trajectory");
    const SemilinearProblem p = make_problem(prev.front(), params);
    Trajectory tr;
    for (const auto& s : prev) tr.push_back(pack(s));
    const Trajectory next = picard_map(p, tr.front(), T, tr, threads);
    std::vector<State> out;
    const double t0 = prev.front().time;
    for (std::size_t k = 0; k < next.size(); ++k)
        out.push_back(unpack(next[k], prev.front(), t0 + T * k / (next.size() - 1)));
    return out;
}

PicardRun picard_solve(const State& s0, const Params& params, double T, const PicardOptions& opt, int iterations) {
    const SemilinearProblem p = make_problem(s0, params);
    const Packed u0 = pack(s0);
    PicardRun r;
    r.result = picard_iterate(p, u0, T, opt, iterations);
    r.residual = integral_residual(p, u0, T, r.result.trajectory, opt.threads);
    for (std::size_t k = 0; k < r.result.trajectory.size(); ++k)
        r.states.push_back(unpack(r.result.trajectory[k], s0, s0.time + T * k / (opt.nodes - 1)));
    return r;
}

State rescale(const State& s, double lambda) {
    int e = 0;
    if (!(lambda > 0.0) || std::frexp(lambda, &e) != 0.5)
        throw InputError("scaling factor must be a power of two, got " + std::to_string(lambda));
    const Grid2D g(s.grid().n1(), s.grid().n2(), s.grid().length() / lambda);
    auto move = [&](const ScalarField& f, double c) {
        ScalarField out(g, f.spectral().raw(), Representation::Spectral);
        out *= c;
        return out;
    };
    State r = s;
    for (int nu = 0; nu < 3; ++nu) {
        r.A[nu].plus = move(s.A[nu].plus, lambda);
        r.A[nu].minus = move(s.A[nu].minus, lambda);
        r.A[nu].drift = s.A[nu].drift * lambda * lambda;
    }
    const auto [phi, phit] = recombine(s.phi);
    r.phi = split(move(phi, std::sqrt(lambda)), move(phit, lambda * std::sqrt(lambda)), Dispersion::Massive);
    r.time = s.time / lambda;
    return r;
}

double wave_residual(const State& s, const Params& params, double stride, int substeps) {
    if (substeps < 1) throw InputError("substeps must be positive");
    EvolveOptions opt;
    opt.dt = stride / substeps;
    opt.steps = 4 * substeps;
    opt.sample_every = substeps;
    std::vector<State> samples;
    evolve(s, params, opt, [&](const State& st, const DiagnosticsRecord&) { samples.push_back(st); });
    std::vector<ScalarField> phi;
    for (const auto& st : samples) phi.push_back(st.phi.plus.spectral() + st.phi.minus.spectral());
    ScalarField box = phi[2];
    box *= -30.0;
    box.axpy(-1.0, phi[0]);
    box.axpy(-1.0, phi[4]);
    box.axpy(16.0, phi[1]);
    box.axpy(16.0, phi[3]);
    box *= 1.0 / (12.0 * stride * stride);
    const auto tab = tables_for(s.grid());
    const ScalarField& c = phi[2];
    for (std::size_t i = 0; i < box.size(); ++i) box[i] += tab->abs[i] * tab->abs[i] * c[i];

    const State& mid = samples[2];
    const OneForm A = params.couple_gauge ? gauge_field(mid.A) : OneForm(mid.grid());
    Params p = params;
    p.compensate_mass = false;
    const Nonlinearities nl = nonlinearities(A, c.physical(), all_derivatives(mid.phi), p);
    box -= nl.F.spectral();
    return l2_norm(box);
}

double scaling_residual(const State& s, const Params& params, double lambda, double stride, int substeps) {
    return wave_residual(rescale(s, lambda), params, stride / lambda, substeps);
}

}  // namespace csgauge::csh
