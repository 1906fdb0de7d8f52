#include "csgauge/fft.hpp"

#include <fftw3.h>

#include <array>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace csgauge::fft {
namespace {

// FFTW's planner is not reentrant; execution of an existing plan on new
// arrays is. Plans are created once per (shape, direction, placement) and
// kept for the process lifetime.
struct PlanKey {
    std::array<int, 3> dims;
    int rank;
    int sign;
    bool in_place;
    bool operator<(const PlanKey& o) const {
        return std::tie(dims, rank, sign, in_place) < std::tie(o.dims, o.rank, o.sign, o.in_place);
    }
};

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan get_plan(const PlanKey& key) {
    static std::map<PlanKey, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::size_t total = 1;
    for (int d = 0; d < key.rank; ++d) total *= static_cast<std::size_t>(key.dims[d]);
    std::vector<std::complex<double>> a(total), b(total);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = key.in_place ? pa : reinterpret_cast<fftw_complex*>(b.data());
    fftw_plan p = fftw_plan_dft(key.rank, key.dims.data(), pa, pb, key.sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    cache.emplace(key, p);
    return p;
}

void run(int rank, std::array<int, 3> dims, int sign, std::span<const std::complex<double>> in,
         std::span<std::complex<double>> out) {
    std::size_t total = 1;
    for (int d = 0; d < rank; ++d) total *= static_cast<std::size_t>(dims[d]);
    if (in.size() != total || out.size() != total) throw std::invalid_argument("fft size mismatch");
    const bool in_place = in.data() == out.data();
    fftw_plan p = get_plan({dims, rank, sign, in_place});
    // fftw_execute_dft does not write to `in` for out-of-place complex plans.
    auto* pi = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
    fftw_execute_dft(p, pi, reinterpret_cast<fftw_complex*>(out.data()));
    if (sign == FFTW_FORWARD) {
        const double scale = 1.0 / static_cast<double>(total);
        for (auto& v : out) v *= scale;
    }
}

}  // namespace

void forward2d(int n1, int n2, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) {
    run(2, {n1, n2, 1}, FFTW_FORWARD, in, out);
}

void inverse2d(int n1, int n2, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) {
    run(2, {n1, n2, 1}, FFTW_BACKWARD, in, out);
}

void forward3d(int n0, int n1, int n2, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) {
    run(3, {n0, n1, n2}, FFTW_FORWARD, in, out);
}

void inverse3d(int n0, int n1, int n2, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) {
    run(3, {n0, n1, n2}, FFTW_BACKWARD, in, out);
}

}  // namespace csgauge::fft
