#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qaudit {

// First `m` moduli |S_f| (f = 0..m-1) of the discrete Fourier transform of a
// real vector. Radix-2 when the length is a power of two, Bluestein (chirp-z)
// otherwise; both O(n log n). Requires m <= x.size()/2.
std::vector<double> dft_moduli(std::span<const double> x, std::size_t m);

// Streaming form used by the spectral test: transforms the first `n` bits of
// `data` (packed MSB-first) as x_i = 2*bit_i - 1 and returns how many of the
// first n/2 moduli fall strictly below `threshold`. `n` must be even.
std::uint64_t count_moduli_below(const std::uint8_t* data, std::uint64_t n, double threshold);

namespace fft_detail {
// In-place iterative radix-2 transform, n a power of two. Deterministic
// across thread counts (twiddles resynchronized at fixed offsets).
void fft_inplace(std::complex<double>* a, std::size_t n, bool inverse);
// Arbitrary-length DFT via Bluestein.
std::vector<std::complex<double>> dft_any(const std::vector<std::complex<double>>& x);
} // namespace fft_detail

} // namespace qaudit
