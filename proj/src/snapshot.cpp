#include "csgauge/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "csgauge/errors.hpp"

namespace csgauge {
namespace {

constexpr std::array<char, 4> kMagic{'C', 'S', 'G', 'F'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, T v) {
    std::array<char, sizeof(T)> b;
    std::memcpy(b.data(), &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
    os.write(b.data(), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    std::array<char, sizeof(T)> b;
    if (!is.read(b.data(), sizeof(T))) throw InputError("truncated snapshot");
    if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
    T v;
    std::memcpy(&v, b.data(), sizeof(T));
    return v;
}

}  // namespace

void write_snapshot(std::ostream& os, const std::vector<ScalarField>& comps) {
    if (comps.empty() || comps.size() > 255) throw InputError("snapshot needs 1..255 components");
    const Grid2D& g = comps.front().grid();
    const Representation rep = comps.front().rep();
    for (const auto& c : comps) {
        require_same_grid(g, c.grid(), "snapshot");
        if (c.rep() != rep) throw ShapeError("snapshot components differ in representation");
    }
    os.write(kMagic.data(), 4);
    put<std::uint32_t>(os, kVersion);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n1()));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n2()));
    put<double>(os, g.length());
    put<std::uint8_t>(os, static_cast<std::uint8_t>(rep));
    put<std::uint8_t>(os, static_cast<std::uint8_t>(comps.size()));
    for (const auto& c : comps) {
        for (const auto& v : c.values()) {
            put<double>(os, v.real());
            put<double>(os, v.imag());
        }
    }
    if (!os) throw std::runtime_error("snapshot write failed");
}

void write_snapshot(const std::filesystem::path& path, const std::vector<ScalarField>& comps) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_snapshot(os, comps);
}

Snapshot read_snapshot(std::istream& is) {
    std::array<char, 4> magic;
    if (!is.read(magic.data(), 4) || magic != kMagic) throw InputError("not a CSGF snapshot");
    const auto version = get<std::uint32_t>(is);
    if (version != kVersion) throw InputError("unsupported snapshot version " + std::to_string(version));
    const auto n1 = get<std::uint32_t>(is);
    const auto n2 = get<std::uint32_t>(is);
    const auto length = get<double>(is);
    const auto rep_byte = get<std::uint8_t>(is);
    const auto k = get<std::uint8_t>(is);
    if (rep_byte > 1) throw InputError("bad representation byte in snapshot");
    Grid2D grid(static_cast<int>(n1), static_cast<int>(n2), length);
    const auto rep = static_cast<Representation>(rep_byte);
    Snapshot snap{grid, rep, {}};
    for (int c = 0; c < k; ++c) {
        std::vector<cplx> vals(grid.size());
        for (auto& v : vals) {
            const double re = get<double>(is);
            const double im = get<double>(is);
            v = cplx{re, im};
        }
        snap.components.emplace_back(grid, std::move(vals), rep);
    }
    return snap;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("cannot open snapshot " + path.string());
    return read_snapshot(is);
}

}  // namespace csgauge
