#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "csgauge/grid.hpp"

namespace csgauge {

/// Binary field snapshot ("CSGF", version 1).
///
/// Layout: magic, u32 version, u32 n1, u32 n2, f64 length, u8 representation,
/// u8 component count k, then k * n1 * n2 pairs (f64 re, f64 im), row-major,
/// all little-endian.
struct Snapshot {
    Grid2D grid;
    Representation rep;
    std::vector<ScalarField> components;
};

void write_snapshot(std::ostream& os, const std::vector<ScalarField>& components);
void write_snapshot(const std::filesystem::path& path, const std::vector<ScalarField>& components);
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace csgauge
