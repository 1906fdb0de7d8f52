#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace csgauge {

/// One diagnostics sample. `conserved` is the charge Q for CSD and the
/// covariant energy E for CSH. Residual norms are RMS (L2 norm over the
/// square root of the box area), so they compare directly with mean_defect.
struct DiagnosticsRecord {
    double t = 0.0;
    double conserved = 0.0;
    double gauge_res = 0.0;
    double F01_res = 0.0;
    double F02_res = 0.0;
    double F12_res = 0.0;
    double mean_defect = 0.0;
};

/// Header row `t,<conserved_name>,gauge_res,F01_res,F02_res,F12_res,mean_defect`
/// followed by one row per record with round-trip float formatting.
void write_diagnostics_csv(std::ostream& os, const std::string& conserved_name,
                           const std::vector<DiagnosticsRecord>& records);

}  // namespace csgauge
