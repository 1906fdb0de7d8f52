#pragma once

#include <complex>
#include <span>

namespace csgauge::fft {

/// Forward DFT on an n1 x n2 row-major array, scaled by 1/(n1 n2).
/// `in` and `out` may alias.
void forward2d(int n1, int n2, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out);
/// Unscaled inverse DFT, the exact inverse of forward2d.
void inverse2d(int n1, int n2, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out);

/// Three-dimensional versions for (t, x1, x2) lattices, scaled by 1/(n0 n1 n2).
void forward3d(int n0, int n1, int n2, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out);
void inverse3d(int n0, int n1, int n2, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out);

}  // namespace csgauge::fft
