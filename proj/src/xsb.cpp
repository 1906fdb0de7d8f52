#include "csgauge/xsb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "csgauge/csv.hpp"
#include "csgauge/errors.hpp"
#include "csgauge/nullforms.hpp"
#include "csgauge/parallel.hpp"

namespace csgauge::xsb {

namespace {

double xi_abs(const Grid2D& g, int k1, int k2) { return std::hypot(g.xi1(k1), g.xi2(k2)); }

template <class Weight>
double weighted_norm(const SpaceTimeField& f, Weight w) {
    const SpaceTimeField m = f.spectral_modulus();
    const Grid2D& g = m.grid();
    double sum = 0.0;
    for (int kt = 0; kt < m.nt(); ++kt) {
        const double tau = m.tau(kt);
        for (int k1 = 0; k1 < g.n1(); ++k1)
            for (int k2 = 0; k2 < g.n2(); ++k2) {
                const double a = std::abs(m.at(0, kt, k1, k2));
                if (a == 0.0) continue;
                const double wt = w(tau, xi_abs(g, k1, k2));
                sum += wt * wt * a * a;
            }
    }
    return std::sqrt(sum * m.tlength() * g.area());
}

double snap(double m) { return std::abs(m) <= kBoundarySnap ? 0.0 : m; }

}  // namespace

double xsb_norm(const SpaceTimeField& f, double s, double b, Sign sign) {
    const double sg = sgn(sign);
    return weighted_norm(f, [&](double tau, double x) {
        return std::pow(1.0 + x, s) * std::pow(1.0 + std::abs(tau + sg * x), b);
    });
}

double hsb_norm(const SpaceTimeField& f, double s, double b) {
    return weighted_norm(f, [&](double tau, double x) {
        return std::pow(1.0 + x, s) * std::pow(1.0 + std::abs(std::abs(tau) - x), b);
    });
}

InclusionMargins inclusion_check(const SpaceTimeField& f, double s, double b, Sign sign) {
    if (b < 0.0) throw InputError("inclusion chain needs b >= 0");
    const Grid2D& g = f.grid();
    const double sg = sgn(sign);
    InclusionMargins m;
    for (int kt = 0; kt < f.nt(); ++kt) {
        const double tau = f.tau(kt);
        for (int k1 = 0; k1 < g.n1(); ++k1)
            for (int k2 = 0; k2 < g.n2(); ++k2) {
                const double x = xi_abs(g, k1, k2);
                const double mx = 1.0 + std::abs(tau + sg * x);
                const double mh = 1.0 + std::abs(std::abs(tau) - x);
                // The common (1+|xi|)^s factor cancels in every ratio.
                const double wx = std::pow(mx, b), wh = std::pow(mh, b);
                const double wh_neg = std::pow(mh, -b), wx_neg = std::pow(mx, -b);
                m.weight_ratio[0] = std::max(m.weight_ratio[0], wh / wx);
                m.weight_ratio[1] = std::max(m.weight_ratio[1], wh_neg / wh);
                m.weight_ratio[2] = std::max(m.weight_ratio[2], wx_neg / wh_neg);
            }
    }
    const double nx = xsb_norm(f, s, b, sign), nh = hsb_norm(f, s, b);
    const double nhn = hsb_norm(f, s, -b), nxn = xsb_norm(f, s, -b, sign);
    auto ratio = [](double a, double c) { return c == 0.0 ? (a == 0.0 ? 0.0 : INFINITY) : a / c; };
    m.norm_ratio = {ratio(nh, nx), ratio(nhn, nh), ratio(nxn, nhn)};
    return m;
}

const std::array<std::string_view, kConditionCount>& condition_labels() {
    static const std::array<std::string_view, kConditionCount> labels = {
        "b0+b1+b2 > 1/2",
        "b0+b1+b2 >= max(b0,b1,b2)",
        "s0+s1+s2 > 3/2-(b0+b1+b2)",
        "s0+s1+s2 > 1-min(b0+b1,b1+b2,b2+b0)",
        "s0+s1+s2 > 1/2-min(b0,b1,b2)",
        "s0+s1+s2 > 3/4",
        "(s0+b0)+2s1+2s2 > 1",
        "2s0+(s1+b1)+2s2 > 1",
        "2s0+2s1+(s2+b2) > 1",
        "s0+s1+s2 >= max(s0,s1,s2)",
        "b0+s1+s2 >= 0",
        "s0+b1+s2 >= 0",
        "s0+s1+b2 >= 0",
    };
    return labels;
}

ConditionReport check_product_conditions(const SbTriple& t) {
    const double S = t.s0 + t.s1 + t.s2, B = t.b0 + t.b1 + t.b2;
    ConditionReport r;
    r.triple = t;
    r.margins = {
        B - 0.5,
        B - std::max({t.b0, t.b1, t.b2}),
        S - (1.5 - B),
        S - (1.0 - std::min({t.b0 + t.b1, t.b1 + t.b2, t.b2 + t.b0})),
        S - (0.5 - std::min({t.b0, t.b1, t.b2})),
        S - 0.75,
        (t.s0 + t.b0) + 2.0 * t.s1 + 2.0 * t.s2 - 1.0,
        2.0 * t.s0 + (t.s1 + t.b1) + 2.0 * t.s2 - 1.0,
        2.0 * t.s0 + 2.0 * t.s1 + (t.s2 + t.b2) - 1.0,
        S - std::max({t.s0, t.s1, t.s2}),
        t.b0 + t.s1 + t.s2,
        t.s0 + t.b1 + t.s2,
        t.s0 + t.s1 + t.b2,
    };
    static constexpr std::array<bool, kConditionCount> strict = {true, false, true,  true,  true,  true, true,
                                                                 true, true,  false, false, false, false};
    for (int i = 0; i < kConditionCount; ++i) {
        const double m = snap(r.margins[i]);
        r.margins[i] = m;
        const bool ok = strict[i] ? m > 0.0 : m >= 0.0;
        if (!ok) r.violated.push_back({i + 1, m});
    }
    r.pass = r.violated.empty();
    return r;
}

std::string_view to_string(ReductionList l) {
    switch (l) {
        case ReductionList::CsdForward: return "csd-forward";
        case ReductionList::CsdDual: return "csd-dual";
        case ReductionList::CshError: return "csh-error";
        case ReductionList::CshForward: return "csh-forward";
        case ReductionList::CshDual: return "csh-dual";
        case ReductionList::CshCubic: return "csh-cubic";
    }
    return "unknown";
}

ReductionList parse_list(std::string_view id) {
    for (auto l : {ReductionList::CsdForward, ReductionList::CsdDual, ReductionList::CshError,
                   ReductionList::CshForward, ReductionList::CshDual, ReductionList::CshCubic})
        if (to_string(l) == id) return l;
    throw InputError("unknown reduction list id '" + std::string(id) + "'");
}

std::string_view to_string(System s) { return s == System::CSD ? "csd" : "csh"; }

System parse_system(std::string_view id) {
    if (id == "csd") return System::CSD;
    if (id == "csh") return System::CSH;
    throw InputError("unknown system '" + std::string(id) + "' (expected csd or csh)");
}

namespace {

struct Pair {
    double s, b;
};

// Display form: output space H^{out} on the left, inputs on the right.
SbTriple from_display(Pair out, Pair in1, Pair in2, std::string label) {
    return SbTriple{-out.s, -out.b, in1.s, in1.b, in2.s, in2.b, std::move(label)};
}

}  // namespace

std::vector<SbTriple> reduction_triples(ReductionList list, double s, double b, double e) {
    const std::string tag(to_string(list));
    auto label = [&](int i) { return tag + "/" + std::to_string(i); };
    std::vector<SbTriple> t;
    switch (list) {
        case ReductionList::CsdForward:
            t = {from_display({s, b - 0.5 + e}, {s + 0.5, b}, {s, b}, label(1)),
                 from_display({s, b - 1 + e}, {s + 0.5, b - 0.5}, {s, b}, label(2)),
                 from_display({s, b - 1 + e}, {s + 0.5, b}, {s, b - 0.5}, label(3))};
            break;
        case ReductionList::CsdDual:
            t = {from_display({-s, -b + 0.5}, {s + 0.5, b}, {-s, 1 - b - e}, label(1)),
                 from_display({-s, -b + 0.5}, {s, b}, {-s + 0.5, 1 - b - e}, label(2)),
                 from_display({-s, -b}, {s + 0.5, b - 0.5}, {-s, 1 - b - e}, label(3)),
                 from_display({-s, -b}, {s, b - 0.5}, {-s + 0.5, 1 - b - e}, label(4)),
                 from_display({-s, -b}, {s + 0.5, b}, {-s, 0.5 - b - e}, label(5)),
                 from_display({-s, -b}, {s, b}, {-s + 0.5, 0.5 - b - e}, label(6))};
            break;
        case ReductionList::CshError:
            t = {from_display({s, 1 - b}, {s + 0.5, b}, {s + 0.5, b}, label(1)),
                 from_display({s - 0.5, 1 - b}, {s, b}, {s + 0.5, b}, label(2))};
            break;
        case ReductionList::CshForward:
            t = {from_display({s - 0.5, b - 0.5 + e}, {s + 0.5, b}, {s - 0.5, b}, label(1)),
                 from_display({s - 0.5, b - 0.5 + e}, {s, b}, {s, b}, label(2)),
                 from_display({s - 0.5, b - 1 + e}, {s + 0.5, b - 0.5}, {s - 0.5, b}, label(3)),
                 from_display({s - 0.5, b - 1 + e}, {s, b - 0.5}, {s, b}, label(4)),
                 from_display({s - 0.5, b - 1 + e}, {s + 0.5, b}, {s - 0.5, b - 0.5}, label(5))};
            break;
        case ReductionList::CshDual:
            t = {from_display({-s - 0.5, -b + 0.5}, {-s + 0.5, 1 - b + e}, {s - 0.5, b}, label(1)),
                 from_display({-s - 0.5, -b + 0.5}, {-s, 1 - b + e}, {s, b}, label(2)),
                 from_display({-s - 0.5, -b}, {-s + 0.5, 0.5 - b + e}, {s - 0.5, b}, label(3)),
                 from_display({-s - 0.5, -b}, {-s, 0.5 - b + e}, {s, b}, label(4)),
                 from_display({-s - 0.5, -b}, {-s + 0.5, 1 - b + e}, {s - 0.5, b - 0.5}, label(5)),
                 from_display({-s - 0.5, -b}, {-s, 1 - b + e}, {s, b - 0.5}, label(6))};
            break;
        case ReductionList::CshCubic:
            // Two lines, each factored through an intermediate H^{s,0} product.
            t = {from_display({s, b - 1 + e}, {s + 0.5, b}, {s, 0}, label(1) + "a"),
                 from_display({s, 0}, {s + 0.5, b}, {s, b}, label(1) + "b"),
                 from_display({s - 0.5, b - 1 + e}, {s, 0}, {s, b}, label(2) + "a"),
                 from_display({s, 0}, {s, b}, {s + 0.5, b}, label(2) + "b")};
            break;
    }
    return t;
}

std::vector<ReductionList> lists_for(System sys) {
    if (sys == System::CSD) return {ReductionList::CsdForward, ReductionList::CsdDual};
    return {ReductionList::CshError, ReductionList::CshForward, ReductionList::CshDual, ReductionList::CshCubic};
}

std::vector<SbTriple> system_triples(System sys, double s, double b, double eps0) {
    std::vector<SbTriple> all;
    for (auto l : lists_for(sys)) {
        auto t = reduction_triples(l, s, b, eps0);
        all.insert(all.end(), t.begin(), t.end());
    }
    return all;
}

SbTriple dualize(const SbTriple& t) {
    return SbTriple{t.s2, t.b2, t.s1, t.b1, t.s0, t.b0, t.label.empty() ? t.label : t.label + "'"};
}

bool printed_region(System sys, double s, double b) {
    auto gt = [](double lhs, double rhs) { return snap(lhs - rhs) > 0.0; };
    if (!(gt(b, 0.5) && gt(1.0, b))) return false;
    if (sys == System::CSD) return gt(s, std::max({0.25, b / 2 - 0.25, 1 - b, b / 3}));
    return snap(s) >= 0.0 && gt(s, std::max({0.25, b - 0.5, 1 - b, b / 3}));
}

ScanResult scan_region(const ScanSetup& setup) {
    if (setup.resolution < 64) throw InputError("scan resolution must be at least 64 points per axis");
    if (!(setup.s_max > setup.s_min) || !(setup.b_max > setup.b_min)) throw InputError("scan ranges are empty");
    const int R = setup.resolution;
    ScanResult r;
    r.setup = setup;
    r.cells.resize(static_cast<std::size_t>(R) * R);
    parallel_for(static_cast<std::size_t>(R), resolve_threads(setup.threads), [&](std::size_t i) {
        const double s = setup.s_min + (setup.s_max - setup.s_min) * static_cast<double>(i) / (R - 1);
        for (int j = 0; j < R; ++j) {
            const double b = setup.b_min + (setup.b_max - setup.b_min) * j / (R - 1);
            ScanCell c{s, b, snap(b - 0.5) > 0.0 && snap(1.0 - b) > 0.0, printed_region(setup.system, s, b), INFINITY};
            for (const auto& t : system_triples(setup.system, s, b, setup.eps0)) {
                const ConditionReport rep = check_product_conditions(t);
                c.feasible = c.feasible && rep.pass;
                for (double m : rep.margins) c.margin_min = std::min(c.margin_min, m);
            }
            r.cells[i * R + j] = c;
        }
    });
    for (const auto& c : r.cells) {
        r.feasible_count += c.feasible;
        r.printed_count += c.printed;
        r.symmetric_difference += c.feasible != c.printed;
    }
    return r;
}

void write_scan_csv(std::ostream& os, const ScanResult& r) {
    os << "s,b,feasible,printed_region,margin_min\n";
    for (const auto& c : r.cells)
        os << format_double(c.s) << ',' << format_double(c.b) << ',' << (c.feasible ? 1 : 0) << ','
           << (c.printed ? 1 : 0) << ',' << format_double(c.margin_min) << '\n';
}

void write_report_jsonl(std::ostream& os, const ConditionReport& r, std::string_view context) {
    nlohmann::ordered_json j;
    if (!context.empty()) j["context"] = std::string(context);
    j["label"] = r.triple.label;
    j["triple"] = {r.triple.s0, r.triple.b0, r.triple.s1, r.triple.b1, r.triple.s2, r.triple.b2};
    j["pass"] = r.pass;
    j["margins"] = r.margins;
    auto v = nlohmann::ordered_json::array();
    for (const auto& x : r.violated)
        v.push_back({{"id", x.id}, {"condition", std::string(condition_labels()[x.id - 1])}, {"margin", x.margin}});
    j["violated"] = v;
    os << j.dump() << '\n';
}

double bilinear_ratio_probe(const SbTriple& t, int nt, int n, int trials, std::uint64_t seed) {
    const Grid2D g(n, n, 2.0 * std::numbers::pi);
    double sup = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(trial)));
        std::normal_distribution<double> nd;
        auto draw = [&] {
            SpaceTimeField f(nt, 2.0 * std::numbers::pi, g, 1, Representation::Spectral);
            for (int kt = 0; kt < nt; ++kt)
                for (int k1 = 0; k1 < n; ++k1)
                    for (int k2 = 0; k2 < n; ++k2) {
                        const bool inner = std::abs(Grid2D::wavenumber_index(kt, nt)) < nt / 4 &&
                                           std::abs(Grid2D::wavenumber_index(k1, n)) < n / 4 &&
                                           std::abs(Grid2D::wavenumber_index(k2, n)) < n / 4;
                        const double re = nd(rng), im = nd(rng);
                        if (inner) f.at(0, kt, k1, k2) = {re, im};
                    }
            return f.physical();
        };
        const SpaceTimeField f1 = draw(), f2 = draw();
        SpaceTimeField p = f1;
        for (std::size_t i = 0; i < p.raw().size(); ++i) p.raw()[i] *= f2.raw()[i];
        const double den = hsb_norm(f1, t.s1, t.b1) * hsb_norm(f2, t.s2, t.b2);
        if (den > 0.0) sup = std::max(sup, hsb_norm(p, -t.s0, -t.b0) / den);
    }
    return sup;
}

}  // namespace csgauge::xsb
