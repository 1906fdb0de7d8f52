#include "csgauge/csv.hpp"

#include "csgauge/diagnostics.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace csgauge {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void write_diagnostics_csv(std::ostream& os, const std::string& conserved_name,
                           const std::vector<DiagnosticsRecord>& records) {
    os << "t," << conserved_name << ",gauge_res,F01_res,F02_res,F12_res,mean_defect\n";
    for (const auto& r : records) {
        os << format_double(r.t) << ',' << format_double(r.conserved) << ',' << format_double(r.gauge_res) << ','
           << format_double(r.F01_res) << ',' << format_double(r.F02_res) << ',' << format_double(r.F12_res) << ','
           << format_double(r.mean_defect) << '\n';
    }
}

}  // namespace csgauge
