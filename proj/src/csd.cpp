#include "csgauge/csd.hpp"

#include <cmath>

#include "csgauge/dirac.hpp"
#include "csgauge/errors.hpp"
#include "csgauge/spectral.hpp"

namespace csgauge::csd {

namespace {

constexpr double kCoupling = -2.0;
constexpr int kBlocks = 10;  // A_{nu,+}, A_{nu,-} for nu = 0..2, then psi_+ and psi_- components

ScalarField maybe_dealias(const ScalarField& f, bool on) { return on ? dealias(f.spectral()) : f.spectral(); }

ScalarField block(const Packed& u, const Grid2D& g, int b) {
    const std::size_t n = g.size();
    return ScalarField(g, std::vector<cplx>(u.begin() + b * n, u.begin() + (b + 1) * n), Representation::Spectral);
}

void put(Packed& u, int b, const ScalarField& f) {
    const ScalarField s = f.spectral();
    std::copy(s.raw().begin(), s.raw().end(), u.begin() + b * s.size());
}

SpinorField sum(const SpinorField& a, const SpinorField& b) { return a.spectral() + b.spectral(); }

// -alpha^mu A_mu psi, pointwise in physical space.
SpinorField coupling_term(const OneForm& A, const SpinorField& psi) {
    const SpinorField p = psi.physical();
    const OneForm a(A[0].physical(), A[1].physical(), A[2].physical());
    SpinorField out(p.grid());
    const Matrix2C al[3] = {alpha(0), alpha(1), alpha(2)};
    for (std::size_t i = 0; i < out.c[0].size(); ++i) {
        const Matrix2C m = a[0][i] * al[0] + a[1][i] * al[1] + a[2][i] * al[2];
        const cplx u = p.c[0][i], v = p.c[1][i];
        out.c[0][i] = -(m(0, 0) * u + m(0, 1) * v);
        out.c[1][i] = -(m(1, 0) * u + m(1, 1) * v);
    }
    return out;
}

OneForm zero_form(const Grid2D& g) { return OneForm(g); }

}  // namespace

InitialData build_initial_data(const SpinorField& psi0, const ScalarField& a0, const ScalarField& divpot,
                               bool dealias_on) {
    require_same_grid(psi0.grid(), a0.grid(), "build_initial_data");
    require_same_grid(psi0.grid(), divpot.grid(), "build_initial_data");
    const ScalarField rho = bilinear(psi0, alpha(0), psi0);
    ScalarField source = -2.0 * maybe_dealias(rho, dealias_on);
    const double defect = std::abs(source[0]);
    source[0] = 0.0;
    VectorPair df = curl_preimage(source);
    ScalarField a1 = df.v1.spectral() + partial(1, divpot.spectral());
    ScalarField a2 = df.v2.spectral() + partial(2, divpot.spectral());
    return InitialData{OneForm(a0.physical(), a1.make_physical(), a2.make_physical()), defect};
}

std::array<ScalarField, 3> current(const SpinorField& psi, bool dealias_on) {
    std::array<ScalarField, 3> J{ScalarField(psi.grid()), ScalarField(psi.grid()), ScalarField(psi.grid())};
    for (int la = 0; la < 3; ++la) J[la] = maybe_dealias(bilinear(psi, alpha(la), psi), dealias_on).make_physical();
    return J;
}

Nonlinearities nonlinearities(const OneForm& A, const SpinorField& psi, bool dealias_on) {
    SpinorField M = coupling_term(A, psi);
    M = SpinorField(maybe_dealias(M.c[0], dealias_on).make_physical(),
                    maybe_dealias(M.c[1], dealias_on).make_physical());
    return Nonlinearities{two_form_from_current(current(psi, dealias_on), kCoupling), std::move(M)};
}

State initial_half_waves(const OneForm& a, const SpinorField& psi0, const Params& params) {
    const Grid2D& g = psi0.grid();
    const TwoForm N = two_form_from_current(current(psi0, params.dealias), kCoupling);
    OneForm at(g, Representation::Spectral);
    at[0] = (-1.0 * divergence(a[1], a[2])).spectral();
    for (int j = 1; j <= 2; ++j) at[j] = partial(j, a[0].spectral()) + N(0, j).spectral();
    State s{gauge_half_waves(a, at, N), project(Sign::Plus, psi0.spectral()), project(Sign::Minus, psi0.spectral()),
            0.0};
    if (!params.couple_gauge)
        for (auto& h : s.A) {
            h.plus.set_zero();
            h.minus.set_zero();
            h.drift = 0.0;
        }
    return s;
}

Fields fields(const State& s, const Params& params) {
    const SpinorField psi = sum(s.psi_plus, s.psi_minus).physical();
    const TwoForm N = two_form_from_current(current(psi, params.dealias), kCoupling);
    const OneForm A = gauge_field(s.A);
    OneForm At(s.grid());
    for (int nu = 0; nu < 3; ++nu) At[nu] = gauge_time_derivative(s.A, nu, N).make_physical();
    return Fields{A, At, psi};
}

DiagnosticsRecord diagnostics(const State& s, const Params& params) {
    const SpinorField psi = sum(s.psi_plus, s.psi_minus);
    const TwoForm N = two_form_from_current(current(psi, params.dealias), kCoupling);
    DiagnosticsRecord r;
    r.t = s.time;
    const double q = l2_norm(psi);
    r.conserved = q * q;
    gauge_diagnostics(s.A, N, r);
    return r;
}

double projector_residual(const State& s) {
    auto nonzero = [](SpinorField f) {
        f.c[0][0] = 0.0;
        f.c[1][0] = 0.0;
        return f;
    };
    const double scale = l2_norm(sum(s.psi_plus, s.psi_minus));
    if (scale == 0.0) return 0.0;
    const double rp = l2_norm(nonzero(project(Sign::Minus, s.psi_plus.spectral())));
    const double rm = l2_norm(nonzero(project(Sign::Plus, s.psi_minus.spectral())));
    return std::max(rp, rm) / scale;
}

Packed pack(const State& s) {
    const std::size_t n = s.grid().size();
    Packed u(kBlocks * n);
    for (int nu = 0; nu < 3; ++nu) {
        put(u, 2 * nu, s.A[nu].plus);
        put(u, 2 * nu + 1, s.A[nu].minus);
    }
    put(u, 6, s.psi_plus.c[0]);
    put(u, 7, s.psi_plus.c[1]);
    put(u, 8, s.psi_minus.c[0]);
    put(u, 9, s.psi_minus.c[1]);
    return u;
}

State unpack(const Packed& u, const State& like, double time) {
    const Grid2D& g = like.grid();
    if (u.size() != kBlocks * g.size()) throw ShapeError("packed CSD state has the wrong size");
    State s = like;
    for (int nu = 0; nu < 3; ++nu) {
        s.A[nu].plus = block(u, g, 2 * nu);
        s.A[nu].minus = block(u, g, 2 * nu + 1);
    }
    s.psi_plus = SpinorField(block(u, g, 6), block(u, g, 7));
    s.psi_minus = SpinorField(block(u, g, 8), block(u, g, 9));
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
        const double sign = (b < 6 ? b % 2 == 0 : b < 8) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n; ++i) p.omega[b * n + i] = sign * tab->abs[i];
    }
    p.drift.assign(kBlocks * n, cplx{0.0, 0.0});
    if (params.couple_gauge)
        for (int nu = 0; nu < 3; ++nu) {
            p.drift[2 * nu * n] = 0.5 * s.A[nu].drift;
            p.drift[(2 * nu + 1) * n] = 0.5 * s.A[nu].drift;
        }
    const State like = s;
    p.N = [g, n, params, like](const Packed& u, Packed& out) {
        const State st = unpack(u, like, 0.0);
        const SpinorField psi = sum(st.psi_plus, st.psi_minus);
        const OneForm A = params.couple_gauge ? gauge_field(st.A) : zero_form(g);
        const Nonlinearities nl = nonlinearities(A, psi, params.dealias);
        std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
        if (params.couple_gauge)
            for (int nu = 0; nu < 3; ++nu) {
                put(out, 2 * nu, gauge_half_wave_rhs(nl.N, nu, Sign::Plus));
                put(out, 2 * nu + 1, gauge_half_wave_rhs(nl.N, nu, Sign::Minus));
            }
        const SpinorField M = nl.M.spectral();
        for (Sign sg : {Sign::Plus, Sign::Minus}) {
            SpinorField r = project(sg, M);
            if (params.mass != 0.0) r.axpy(params.mass, apply_matrix(beta(), sg == Sign::Plus ? st.psi_minus : st.psi_plus));
            r *= cplx{0.0, -1.0};
            const int b = sg == Sign::Plus ? 6 : 8;
            put(out, b, r.c[0]);
            put(out, b + 1, r.c[1]);
        }
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

State rescale(const State& s, double lambda, const Params& params) {
    int e = 0;
    if (!(lambda > 0.0) || std::frexp(lambda, &e) != 0.5)
        throw InputError("scaling factor must be a power of two, got " + std::to_string(lambda));
    if (params.mass != 0.0) throw InputError("scaling covariance requires zero mass");
    const Grid2D g(s.grid().n1(), s.grid().n2(), s.grid().length() / lambda);
    auto move = [&](const ScalarField& f, double c) {
        const ScalarField sp = f.spectral();
        ScalarField out(g, sp.raw(), Representation::Spectral);
        out *= c;
        return out;
    };
    State r{s.A, SpinorField(g), SpinorField(g), s.time / lambda};
    for (int nu = 0; nu < 3; ++nu) {
        r.A[nu].plus = move(s.A[nu].plus, lambda);
        r.A[nu].minus = move(s.A[nu].minus, lambda);
        r.A[nu].drift = s.A[nu].drift * lambda * lambda;
    }
    r.psi_plus = SpinorField(move(s.psi_plus.c[0], lambda), move(s.psi_plus.c[1], lambda));
    r.psi_minus = SpinorField(move(s.psi_minus.c[0], lambda), move(s.psi_minus.c[1], lambda));
    return r;
}

double dirac_residual(const State& s, const Params& params, double stride, int substeps) {
    if (substeps < 1) throw InputError("substeps must be positive");
    EvolveOptions opt;
    opt.dt = stride / substeps;
    opt.steps = 4 * substeps;
    opt.sample_every = substeps;
    std::vector<State> samples;
    evolve(s, params, opt, [&](const State& st, const DiagnosticsRecord&) { samples.push_back(st); });
    std::vector<SpinorField> psi;
    for (const auto& st : samples) psi.push_back(sum(st.psi_plus, st.psi_minus));
    SpinorField dt = psi[0];
    dt -= psi[4];
    dt.axpy(-8.0, psi[1]);
    dt.axpy(8.0, psi[3]);
    dt *= 1.0 / (12.0 * stride);

    const State& c = samples[2];
    const OneForm A = params.couple_gauge ? gauge_field(c.A) : zero_form(c.grid());
    const Nonlinearities nl = nonlinearities(A, psi[2], params.dealias);
    SpinorField r = dt;
    r *= cplx{0.0, 1.0};
    for (int j = 1; j <= 2; ++j) {
        const SpinorField dj(partial(j, psi[2].c[0]), partial(j, psi[2].c[1]));
        r.axpy(cplx{0.0, 1.0}, apply_matrix(alpha(j), dj));
    }
    r.axpy(-params.mass, apply_matrix(beta(), psi[2]));
    r -= nl.M.spectral();
    return l2_norm(r);
}

double scaling_residual(const State& s, const Params& params, double lambda, double stride, int substeps) {
    return dirac_residual(rescale(s, lambda, params), params, stride / lambda, substeps);
}

}  // namespace csgauge::csd
