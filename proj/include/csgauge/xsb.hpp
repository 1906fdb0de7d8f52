#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "csgauge/spacetime.hpp"

namespace csgauge::xsb {

/// (sum over the lattice of w^2 |FT f|^2 times the box volume)^{1/2} with
/// w = (1+|xi|)^s (1+|tau + sign |xi||)^b, so X^{0,0} is the space-time L2 norm.
double xsb_norm(const SpaceTimeField& f, double s, double b, Sign sign);
/// As xsb_norm with w = (1+|xi|)^s (1+||tau|-|xi||)^b.
double hsb_norm(const SpaceTimeField& f, double s, double b);

/// Worst-case ratios for X^{s,b}_sign in H^{s,b} in H^{s,-b} in X^{s,-b}_sign:
/// weight ratios over every lattice point, and the norm ratios for f.
struct InclusionMargins {
    std::array<double, 3> weight_ratio{};
    std::array<double, 3> norm_ratio{};
};
/// Throws InputError for b < 0.
InclusionMargins inclusion_check(const SpaceTimeField& f, double s, double b, Sign sign);

/// Exponents of |phi1 phi2|_{H^{-s0,-b0}} <= C |phi1|_{H^{s1,b1}} |phi2|_{H^{s2,b2}}.
struct SbTriple {
    double s0 = 0, b0 = 0, s1 = 0, b1 = 0, s2 = 0, b2 = 0;
    std::string label;
};

constexpr int kConditionCount = 13;

/// Printable form of each product condition, in order.
const std::array<std::string_view, kConditionCount>& condition_labels();

struct Violation {
    int id = 0;  ///< 1-based condition number
    double margin = 0.0;
};

struct ConditionReport {
    SbTriple triple;
    bool pass = false;
    std::array<double, kConditionCount> margins{};  ///< left minus right
    std::vector<Violation> violated;
};

/// Margins within this distance of zero count as exactly zero, so that
/// boundary points given in decimal land on the boundary.
constexpr double kBoundarySnap = 1e-12;

ConditionReport check_product_conditions(const SbTriple& t);

enum class ReductionList { CsdForward, CsdDual, CshError, CshForward, CshDual, CshCubic };
enum class System { CSD, CSH };

std::string_view to_string(ReductionList l);
/// Throws InputError for an unknown id.
ReductionList parse_list(std::string_view id);
std::string_view to_string(System s);
System parse_system(std::string_view id);

/// Product-estimate instances of a reduction list at (s, b, eps0), with the
/// norm on the left moved across: an output space H^{sigma,beta} becomes
/// (s0, b0) = (-sigma, -beta). Cubic lines contribute their two chained triples.
std::vector<SbTriple> reduction_triples(ReductionList list, double s, double b, double eps0);
std::vector<ReductionList> lists_for(System sys);
std::vector<SbTriple> system_triples(System sys, double s, double b, double eps0);

/// Exchanges the output pair (s0, b0) with the second input (s2, b2).
SbTriple dualize(const SbTriple& t);

/// The closed-form (s, b) region stated for each system.
bool printed_region(System sys, double s, double b);

struct ScanSetup {
    System system = System::CSD;
    double s_min = 0.0, s_max = 1.0;
    double b_min = 0.5, b_max = 1.0;
    double eps0 = 1e-3;
    int resolution = 128;
    int threads = 1;
};

struct ScanCell {
    double s = 0, b = 0;
    bool feasible = false;  ///< 1/2 < b < 1 and every system triple passes
    bool printed = false;
    double margin_min = 0;  ///< smallest margin over all triples and conditions
};

struct ScanResult {
    ScanSetup setup;
    std::vector<ScanCell> cells;  ///< s-major order
    int feasible_count = 0;
    int printed_count = 0;
    int symmetric_difference = 0;
};

/// Throws InputError for resolution < 64 or empty ranges.
ScanResult scan_region(const ScanSetup& setup);

/// Header `s,b,feasible,printed_region,margin_min`.
void write_scan_csv(std::ostream& os, const ScanResult& r);

/// One JSON object per line.
void write_report_jsonl(std::ostream& os, const ConditionReport& r, std::string_view context = {});

/// max over trials of |f1 f2|_{H^{-s0,-b0}} / (|f1|_{H^{s1,b1}} |f2|_{H^{s2,b2}}) for random
/// fields supported in the inner half of an nt x n x n lattice (so the product is alias-free).
double bilinear_ratio_probe(const SbTriple& t, int nt, int n, int trials, std::uint64_t seed);

}  // namespace csgauge::xsb
