#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "csgauge/errors.hpp"
#include "csgauge/xsb.hpp"

using namespace csgauge;
using namespace csgauge::xsb;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

SpaceTimeField random_st(std::mt19937_64& rng, int nt = 8, int n = 8) {
    std::normal_distribution<double> nd;
    SpaceTimeField f(nt, 2.0 * kPi, Grid2D(n, n, 2.0 * kPi), 1, Representation::Spectral);
    for (auto& v : f.raw()) v = {nd(rng), nd(rng)};
    return f;
}

bool same(const SbTriple& a, const SbTriple& b, double tol = 1e-14) {
    return std::abs(a.s0 - b.s0) <= tol && std::abs(a.b0 - b.b0) <= tol && std::abs(a.s1 - b.s1) <= tol &&
           std::abs(a.b1 - b.b1) <= tol && std::abs(a.s2 - b.s2) <= tol && std::abs(a.b2 - b.b2) <= tol;
}

bool all_pass(System sys, double s, double b, double eps0) {
    for (const auto& t : system_triples(sys, s, b, eps0))
        if (!check_product_conditions(t).pass) return false;
    return true;
}

}  // namespace

// ------------------------------------------------------------------ norms

TEST_CASE("norms of the zero field vanish") {
    const SpaceTimeField z(8, 1.0, Grid2D(8, 8, 1.0), 1, Representation::Spectral);
    CHECK(xsb_norm(z, 0.5, 0.7, Sign::Plus) == 0.0);
    CHECK(hsb_norm(z, 0.5, 0.7) == 0.0);
}

TEST_CASE("a single on-cone mode carries only the spatial weight") {
    // tau = -|xi| with |xi| = 1 (tlength = L = 2 pi gives integer frequencies).
    SpaceTimeField f(8, 2.0 * kPi, Grid2D(8, 8, 2.0 * kPi), 1, Representation::Spectral);
    f.at(0, 8 - 1, 1, 0) = 1.0;
    REQUIRE(f.tau(8 - 1) == -1.0);
    const double unit = xsb_norm(f, 0.0, 0.0, Sign::Plus);
    CHECK_THAT(xsb_norm(f, 0.6, 0.8, Sign::Plus) / unit, WithinRel(std::pow(2.0, 0.6), 1e-14));
    // Opposite sign sees modulation |tau - |xi|| = 2.
    CHECK_THAT(xsb_norm(f, 0.0, 0.8, Sign::Minus) / unit, WithinRel(std::pow(3.0, 0.8), 1e-14));
}

TEST_CASE("X^{0,0} and H^{0,0} are the space-time L2 norm") {
    std::mt19937_64 rng(1);
    const SpaceTimeField f = random_st(rng);
    const double l2 = l2_norm(f);
    CHECK_THAT(xsb_norm(f, 0.0, 0.0, Sign::Plus), WithinRel(l2, 1e-12));
    CHECK_THAT(xsb_norm(f, 0.0, 0.0, Sign::Minus), WithinRel(l2, 1e-12));
    CHECK_THAT(hsb_norm(f, 0.0, 0.0), WithinRel(l2, 1e-12));
}

// -------------------------------------------------------------- inclusions

TEST_CASE("inclusions hold with equality at b = 0") {
    std::mt19937_64 rng(2);
    const auto m = inclusion_check(random_st(rng), 0.3, 0.0, Sign::Plus);
    for (int i = 0; i < 3; ++i) {
        CHECK_THAT(m.weight_ratio[i], WithinAbs(1.0, 1e-15));
        CHECK_THAT(m.norm_ratio[i], WithinAbs(1.0, 1e-14));
    }
    CHECK_THROWS_AS(inclusion_check(random_st(rng), 0.0, -0.1, Sign::Plus), InputError);
}

TEST_CASE("an on-cone mode of the opposite sign makes the first inclusion strict") {
    SpaceTimeField f(8, 2.0 * kPi, Grid2D(8, 8, 2.0 * kPi), 1, Representation::Spectral);
    f.at(0, 1, 1, 0) = 1.0;  // tau = +|xi| = 1
    const auto m = inclusion_check(f, 0.0, 0.7, Sign::Plus);
    CHECK(m.norm_ratio[0] < 1.0);
    CHECK_THAT(m.norm_ratio[0], WithinRel(std::pow(3.0, -0.7), 1e-14));
}

TEST_CASE("inclusion ratios never exceed one on random fields") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = inclusion_check(random_st(rng), 0.25, 0.7, trial % 2 ? Sign::Plus : Sign::Minus);
        for (int i = 0; i < 3; ++i) {
            CHECK(m.weight_ratio[i] <= 1.0 + 1e-15);
            CHECK(m.norm_ratio[i] <= 1.0 + 1e-14);
        }
    }
}

// --------------------------------------------------------------- conditions

TEST_CASE("the all-zero triple fails the sum thresholds") {
    const ConditionReport r = check_product_conditions(SbTriple{});
    CHECK_FALSE(r.pass);
    std::vector<int> ids;
    for (const auto& v : r.violated) ids.push_back(v.id);
    CHECK(std::find(ids.begin(), ids.end(), 1) != ids.end());
    CHECK(std::find(ids.begin(), ids.end(), 6) != ids.end());
    CHECK(r.margins.size() == kConditionCount);
}

TEST_CASE("the all-one triple passes every condition") {
    const ConditionReport r = check_product_conditions(SbTriple{1, 1, 1, 1, 1, 1, "ones"});
    CHECK(r.pass);
    CHECK(r.violated.empty());
}

TEST_CASE("a sample triple at s = 0.3, b = 0.7 passes with the expected margins") {
    const ConditionReport r = check_product_conditions(SbTriple{0.3, 0.2, 0.8, 0.7, -0.3, 0.29, ""});
    CHECK(r.pass);
    CHECK_THAT(r.margins[0], WithinAbs(1.19 - 0.5, 1e-14));
    CHECK_THAT(r.margins[9], WithinAbs(0.0, 1e-14));  // s-sum 0.8 equals max s 0.8
}

TEST_CASE("strict and non-strict conditions differ on the boundary") {
    // b-sum exactly 1/2 violates the strict first condition.
    SbTriple t{1, 0.1, 1, 0.2, 1, 0.2, ""};
    const ConditionReport r = check_product_conditions(t);
    CHECK_FALSE(r.pass);
    REQUIRE(r.violated.size() == 1);
    CHECK(r.violated[0].id == 1);
    CHECK(r.violated[0].margin == 0.0);
    // s-sum exactly max s satisfies the non-strict tenth condition.
    SbTriple u{1.0, 1, 0.0, 1, 0.0, 1, ""};
    CHECK(check_product_conditions(u).margins[9] == 0.0);
    CHECK(check_product_conditions(u).pass);
}

TEST_CASE("every condition margin is monotone in every exponent") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.5), step(0.0, 0.5);
    for (int trial = 0; trial < 2000; ++trial) {
        SbTriple t{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), ""};
        const auto base = check_product_conditions(t).margins;
        double* coords[6] = {&t.s0, &t.b0, &t.s1, &t.b1, &t.s2, &t.b2};
        *coords[trial % 6] += step(rng);
        const auto up = check_product_conditions(t).margins;
        for (int c = 0; c < kConditionCount; ++c) CHECK(up[c] >= base[c] - 1e-12);
    }
}

// -------------------------------------------------------------- reductions

TEST_CASE("reduction lists have the documented sizes") {
    CHECK(reduction_triples(ReductionList::CsdForward, 0.3, 0.7, 0.01).size() == 3);
    CHECK(reduction_triples(ReductionList::CsdDual, 0.3, 0.7, 0.01).size() == 6);
    CHECK(reduction_triples(ReductionList::CshError, 0.3, 0.7, 0.01).size() == 2);
    CHECK(reduction_triples(ReductionList::CshForward, 0.3, 0.7, 0.01).size() == 5);
    CHECK(reduction_triples(ReductionList::CshDual, 0.3, 0.7, 0.01).size() == 6);
    CHECK(reduction_triples(ReductionList::CshCubic, 0.3, 0.7, 0.01).size() == 4);
    CHECK(system_triples(System::CSD, 0.3, 0.7, 0.01).size() == 9);
    CHECK(system_triples(System::CSH, 0.3, 0.7, 0.01).size() == 17);
}

TEST_CASE("first CSD dual triple and third CSH dual triple with the output pair negated") {
    const double s = 0.37, b = 0.66, e = 0.004;
    CHECK(same(reduction_triples(ReductionList::CsdDual, s, b, e)[0],
               SbTriple{s, b - 0.5, s + 0.5, b, -s, 1.0 - b - e, ""}));
    CHECK(same(reduction_triples(ReductionList::CshDual, s, b, e)[2],
               SbTriple{s + 0.5, b, -s + 0.5, 0.5 - b + e, s - 0.5, b, ""}));
}

TEST_CASE("dualize is an involution that swaps the outer pairs") {
    for (auto list : {ReductionList::CsdForward, ReductionList::CsdDual, ReductionList::CshForward}) {
        for (const auto& t : reduction_triples(list, 0.4, 0.7, 0.01)) {
            const SbTriple d = dualize(t);
            CHECK(d.s0 == t.s2);
            CHECK(d.b2 == t.b0);
            CHECK(same(dualize(d), t, 0.0));
            // The conditions are symmetric under the swap.
            CHECK(check_product_conditions(d).pass == check_product_conditions(t).pass);
        }
    }
}

TEST_CASE("identifiers round-trip and unknown ones are rejected") {
    for (auto l : {ReductionList::CsdForward, ReductionList::CsdDual, ReductionList::CshError,
                   ReductionList::CshForward, ReductionList::CshDual, ReductionList::CshCubic})
        CHECK(parse_list(to_string(l)) == l);
    CHECK(parse_system("csd") == System::CSD);
    CHECK(parse_system("csh") == System::CSH);
    CHECK_THROWS_AS(parse_system("qed"), InputError);
    CHECK_THROWS_AS(parse_list("csd-backward"), InputError);
}

// ------------------------------------------------------------------ regions

TEST_CASE("interior and excluded sample points") {
    CHECK(all_pass(System::CSD, 0.9, 0.7, 0.01));
    CHECK(printed_region(System::CSD, 0.9, 0.7));
    CHECK_FALSE(all_pass(System::CSD, 0.1, 0.7, 0.01));
    CHECK_FALSE(printed_region(System::CSD, 0.1, 0.7));
}

TEST_CASE("a point on the strict boundary s = 1 - b is infeasible") {
    // At (0.30, 0.70) the third CSD dual triple sits exactly on the boundary of
    // the eighth condition.
    const auto ts = reduction_triples(ReductionList::CsdDual, 0.3, 0.7, 0.01);
    const ConditionReport r = check_product_conditions(ts[2]);
    CHECK_FALSE(r.pass);
    REQUIRE(r.violated.size() == 1);
    CHECK(r.violated[0].id == 8);
    CHECK(r.violated[0].margin == 0.0);
    CHECK_FALSE(all_pass(System::CSD, 0.3, 0.7, 0.01));
    CHECK_FALSE(printed_region(System::CSD, 0.3, 0.7));
    // Just inside, both agree again.
    CHECK(all_pass(System::CSD, 0.31, 0.7, 0.01));
}

TEST_CASE("near-threshold pair passes both systems, the farther one does not") {
    const double eps = 0.01, eps0 = 1e-3;
    CHECK(all_pass(System::CSD, 0.25 + eps, 0.75 - eps / 2, eps0));
    CHECK(all_pass(System::CSH, 0.25 + eps, 0.75 - eps / 2, eps0));
    CHECK_FALSE(all_pass(System::CSD, 0.25 + eps, 0.75 - 2 * eps, eps0));
}

TEST_CASE("printed regions follow their max formulas") {
    CHECK(printed_region(System::CSD, 0.27, 0.74));
    CHECK_FALSE(printed_region(System::CSD, 0.26, 0.74));  // strict at s = 1 - b
    CHECK_FALSE(printed_region(System::CSD, 0.26, 0.73));  // s > 1 - b fails
    CHECK_FALSE(printed_region(System::CSD, 0.5, 1.0));    // b < 1 required
    CHECK(printed_region(System::CSH, 0.3, 0.75));
    CHECK_FALSE(printed_region(System::CSH, 0.3, 0.85));   // s > b - 1/2 fails
}

TEST_CASE("scan cells agree with direct evaluation and dual triples pass on feasible cells") {
    ScanSetup setup;
    setup.system = System::CSD;
    setup.resolution = 64;
    const ScanResult r = scan_region(setup);
    REQUIRE(r.cells.size() == 64u * 64u);
    int feasible = 0, printed = 0, diff = 0;
    for (std::size_t i = 0; i < r.cells.size(); i += 37) {
        const ScanCell& c = r.cells[i];
        CHECK(c.feasible == (c.b > 0.5 && c.b < 1.0 && all_pass(System::CSD, c.s, c.b, setup.eps0)));
        CHECK(c.printed == printed_region(System::CSD, c.s, c.b));
        if (c.feasible)
            for (const auto& t : system_triples(System::CSD, c.s, c.b, setup.eps0))
                CHECK(check_product_conditions(dualize(t)).pass);
    }
    for (const auto& c : r.cells) {
        feasible += c.feasible;
        printed += c.printed;
        diff += c.feasible != c.printed;
    }
    CHECK(feasible == r.feasible_count);
    CHECK(printed == r.printed_count);
    CHECK(diff == r.symmetric_difference);
}

TEST_CASE("scan input validation and threaded determinism") {
    ScanSetup setup;
    setup.resolution = 32;
    CHECK_THROWS_AS(scan_region(setup), InputError);
    setup.resolution = 64;
    setup.s_max = setup.s_min;
    CHECK_THROWS_AS(scan_region(setup), InputError);
    ScanSetup a, b;
    a.resolution = b.resolution = 64;
    a.system = b.system = System::CSH;
    b.threads = 3;
    std::ostringstream oa, ob;
    write_scan_csv(oa, scan_region(a));
    write_scan_csv(ob, scan_region(b));
    CHECK(oa.str() == ob.str());
    CHECK(oa.str().rfind("s,b,feasible,printed_region,margin_min\n", 0) == 0);
}

TEST_CASE("condition reports serialise as one JSON object per line") {
    std::ostringstream os;
    write_report_jsonl(os, check_product_conditions(SbTriple{}), "probe");
    const std::string line = os.str();
    REQUIRE(!line.empty());
    CHECK(line.back() == '\n');
    CHECK(std::count(line.begin(), line.end(), '\n') == 1);
    const auto j = nlohmann::json::parse(line);
    CHECK(j.is_object());
    CHECK(j.dump().find("probe") != std::string::npos);
}

TEST_CASE("bilinear ratio probe is finite and reproducible") {
    const SbTriple t{0.3, 0.2, 0.8, 0.7, -0.3, 0.29, ""};
    const double a = bilinear_ratio_probe(t, 8, 8, 20, 5), b = bilinear_ratio_probe(t, 8, 8, 20, 5);
    CHECK(std::isfinite(a));
    CHECK(a > 0.0);
    CHECK(a == b);
}
