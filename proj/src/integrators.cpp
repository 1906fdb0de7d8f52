#include "csgauge/integrators.hpp"

#include <cmath>

#include "csgauge/errors.hpp"
#include "csgauge/parallel.hpp"

namespace csgauge {

namespace {

bool finite(const Packed& u) {
    for (const cplx& z : u)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double norm(const Packed& u) {
    double s = 0.0;
    for (const cplx& z : u) s += std::norm(z);
    return std::sqrt(s);
}

// a += c * b
void axpy(Packed& a, cplx c, const Packed& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

Packed eval_N(const SemilinearProblem& p, const Packed& u) {
    Packed out(u.size());
    p.N(u, out);
    if (!p.drift.empty()) axpy(out, 1.0, p.drift);
    return out;
}

void require_nodes(int K) {
    if (K < 3 || K % 2 == 0)
        throw QuadratureError("Picard windows need an odd node count >= 3, got " + std::to_string(K));
}

}  // namespace

Packed linear_flow(const SemilinearProblem& p, const Packed& u, double t) {
    Packed out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::polar(1.0, -t * p.omega[i]) * u[i];
    return out;
}

Packed homogeneous(const SemilinearProblem& p, const Packed& u0, double t) {
    Packed out = linear_flow(p, u0, t);
    if (!p.drift.empty()) axpy(out, t, p.drift);
    return out;
}

Packed lawson_rk4_step(const SemilinearProblem& p, const Packed& u, double h) {
    const Packed k1 = eval_N(p, u);

    Packed ua = u;
    axpy(ua, 0.5 * h, k1);
    ua = linear_flow(p, ua, 0.5 * h);
    const Packed k2 = eval_N(p, ua);

    Packed ub = linear_flow(p, u, 0.5 * h);
    axpy(ub, 0.5 * h, k2);
    const Packed k3 = eval_N(p, ub);

    Packed uc = linear_flow(p, u, h);
    axpy(uc, h, linear_flow(p, k3, 0.5 * h));
    const Packed k4 = eval_N(p, uc);

    Packed mid = k2;
    axpy(mid, 1.0, k3);
    Packed out = linear_flow(p, u, h);
    axpy(out, h / 6.0, linear_flow(p, k1, h));
    axpy(out, h / 3.0, linear_flow(p, mid, 0.5 * h));
    axpy(out, h / 6.0, k4);
    return out;
}

std::vector<Packed> cumulative_integral(const std::vector<Packed>& g, double h) {
    const int K = static_cast<int>(g.size());
    if (K < 3) throw QuadratureError("cumulative quadrature needs at least 3 nodes");
    const std::size_t n = g.front().size();
    std::vector<Packed> C(K, Packed(n));
    // C at even nodes by running composite Simpson.
    for (int k = 2; k < K; k += 2) {
        C[k] = C[k - 2];
        axpy(C[k], h / 3.0, g[k - 2]);
        axpy(C[k], 4.0 * h / 3.0, g[k - 1]);
        axpy(C[k], h / 3.0, g[k]);
    }
    for (std::size_t i = 0; i < n; ++i) C[1][i] = h * (5.0 * g[0][i] + 8.0 * g[1][i] - g[2][i]) / 12.0;
    for (int k = 3; k < K; k += 2) {
        C[k] = C[k - 3];
        for (std::size_t i = 0; i < n; ++i)
            C[k][i] += 3.0 * h / 8.0 * (g[k - 3][i] + 3.0 * g[k - 2][i] + 3.0 * g[k - 1][i] + g[k][i]);
    }
    return C;
}

namespace {

Trajectory picard_on_nodes(const SemilinearProblem& p, const Packed& u0, double T, const Trajectory& prev,
                           int stride, int threads) {
    const int K = static_cast<int>(prev.size());
    require_nodes(K);
    const int Kc = (K - 1) / stride + 1;
    if (Kc < 3) throw QuadratureError("coarse Picard map needs at least 5 fine nodes");
    const double h = T * stride / (K - 1);
    std::vector<Packed> g(Kc);
    std::vector<int> bad(Kc, 0);
    parallel_for(static_cast<std::size_t>(Kc), threads, [&](std::size_t j) {
        const double s = h * static_cast<double>(j);
        Packed nv(u0.size());
        p.N(prev[j * stride], nv);
        if (!finite(nv)) {
            bad[j] = 1;
            return;
        }
        g[j] = linear_flow(p, nv, -s);
    });
    for (int j = 0; j < Kc; ++j)
        if (bad[j])
            throw DivergenceError("non-finite nonlinearity in Picard iteration", h * j, j > 0 ? h * (j - 1) : 0.0);
    const auto C = cumulative_integral(g, h);
    Trajectory out(Kc);
    for (int j = 0; j < Kc; ++j) {
        const double t = h * j;
        out[j] = homogeneous(p, u0, t);
        axpy(out[j], 1.0, linear_flow(p, C[j], t));
    }
    return out;
}

}  // namespace

Trajectory picard_map(const SemilinearProblem& p, const Packed& u0, double T, const Trajectory& prev, int threads) {
    return picard_on_nodes(p, u0, T, prev, 1, threads);
}

Trajectory picard_map_coarse(const SemilinearProblem& p, const Packed& u0, double T, const Trajectory& prev,
                             int threads) {
    if ((prev.size() - 1) % 4 != 0)
        throw QuadratureError("coarse Picard map needs (nodes - 1) divisible by 4");
    return picard_on_nodes(p, u0, T, prev, 2, threads);
}

double relative_gap(const Trajectory& a, const Trajectory& b) {
    if (a.size() != b.size()) throw ShapeError("trajectories have different node counts");
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        Packed d = a[k];
        axpy(d, -1.0, b[k]);
        num = std::max(num, norm(d));
        den = std::max(den, norm(b[k]));
    }
    return den == 0.0 ? num : num / den;
}

PicardResult picard_iterate(const SemilinearProblem& p, const Packed& u0, double T, const PicardOptions& opt,
                            int iterations) {
    require_nodes(opt.nodes);
    PicardResult r;
    r.trajectory.resize(opt.nodes);
    for (int k = 0; k < opt.nodes; ++k) r.trajectory[k] = homogeneous(p, u0, T * k / (opt.nodes - 1));
    const int limit = iterations > 0 ? iterations : opt.max_iterations;
    for (int n = 1; n <= limit; ++n) {
        Trajectory next = picard_map(p, u0, T, r.trajectory, opt.threads);
        const double d = relative_gap(next, r.trajectory);
        r.differences.push_back(d);
        r.trajectory = std::move(next);
        r.iterations = n;
        if (iterations <= 0 && d < opt.tolerance) break;
    }
    return r;
}

IntegralResidual integral_residual(const SemilinearProblem& p, const Packed& u0, double T, const Trajectory& u,
                                   int threads) {
    const Trajectory fine = picard_map(p, u0, T, u, threads);
    const Trajectory coarse = picard_map_coarse(p, u0, T, u, threads);
    Trajectory fine_even, u_even;
    for (std::size_t k = 0; k < u.size(); k += 2) {
        fine_even.push_back(fine[k]);
        u_even.push_back(u[k]);
    }
    IntegralResidual r;
    r.residual = relative_gap(fine_even, u_even);
    r.quadrature_tolerance = relative_gap(fine_even, coarse) / 15.0;
    return r;
}

Packed evolve_packed(const SemilinearProblem& p, const Packed& u0, double t0, const EvolveOptions& opt,
                     const std::function<void(const Packed&, double)>& sample) {
    if (opt.steps < 0) throw InputError("steps must be nonnegative");
    if (opt.sample_every < 1) throw InputError("sample_every must be positive");
    auto emit = [&](const Packed& u, int k) {
        if (sample && (k % opt.sample_every == 0 || k == opt.steps)) sample(u, t0 + k * opt.dt);
    };
    Packed u = u0;
    emit(u, 0);
    if (opt.scheme == Scheme::ExponentialIntegrator) {
        for (int k = 0; k < opt.steps; ++k) {
            Packed next = lawson_rk4_step(p, u, opt.dt);
            if (!finite(next))
                throw DivergenceError("non-finite state in time stepping", t0 + (k + 1) * opt.dt, t0 + k * opt.dt);
            u = std::move(next);
            emit(u, k + 1);
        }
        return u;
    }
    const int window = opt.picard.nodes - 1;
    require_nodes(opt.picard.nodes);
    if (opt.steps % window != 0)
        throw InputError("Picard scheme needs steps to be a multiple of nodes - 1 = " + std::to_string(window));
    for (int w = 0; w < opt.steps / window; ++w) {
        const double ts = t0 + w * window * opt.dt;
        PicardResult r;
        try {
            r = picard_iterate(p, u, window * opt.dt, opt.picard);
        } catch (const DivergenceError& e) {
            throw DivergenceError(e.what(), ts + e.bad_time(), ts);
        }
        const double last = r.differences.empty() ? 0.0 : r.differences.back();
        if (!(last < opt.picard.tolerance))
            throw DivergenceError("Picard iteration did not converge (last relative difference " +
                                      std::to_string(last) + ")",
                                  ts + window * opt.dt, ts);
        for (int k = 1; k <= window; ++k) emit(r.trajectory[k], w * window + k);
        u = r.trajectory.back();
    }
    return u;
}

}  // namespace csgauge
