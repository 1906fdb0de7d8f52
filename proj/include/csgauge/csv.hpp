#pragma once

#include <string>

namespace csgauge {

/// Shortest decimal text that parses back to exactly `v` ("nan", "inf", "-inf" otherwise).
std::string format_double(double v);

}  // namespace csgauge
