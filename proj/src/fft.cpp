#include "qaudit/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include <omp.h>

#include "qaudit/errors.hpp"

namespace qaudit {

namespace fft_detail {

namespace {

// Twiddles advance by multiplication but resynchronize from std::polar at
// fixed offsets, which bounds accumulated roundoff and keeps results
// bit-identical across thread counts.
constexpr std::size_t kTwiddleResync = 64;

void bit_reverse_permute(std::complex<double>* a, std::size_t n) {
    const int bits = std::countr_zero(n);
#pragma omp parallel for schedule(static)
    for (long long si = 0; si < static_cast<long long>(n); ++si) {
        const auto i = static_cast<std::size_t>(si);
        std::size_t j = 0;
        std::size_t v = i;
        for (int b = 0; b < bits; ++b) {
            j = (j << 1) | (v & 1);
            v >>= 1;
        }
        if (i < j) std::swap(a[i], a[j]);
    }
}

} // namespace

void fft_inplace(std::complex<double>* a, std::size_t n, bool inverse) {
    if (n == 0 || (n & (n - 1)) != 0) throw Error("fft length must be a power of two");
    if (n == 1) return;
    bit_reverse_permute(a, n);
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> step = std::polar(1.0, ang);
        const std::size_t groups = n / len;
        if (groups >= 64 || half <= 4096) {
#pragma omp parallel for schedule(static)
            for (long long gi = 0; gi < static_cast<long long>(groups); ++gi) {
                std::complex<double>* blk = a + static_cast<std::size_t>(gi) * len;
                std::complex<double> w(1.0, 0.0);
                for (std::size_t j = 0; j < half; ++j) {
                    if (j % kTwiddleResync == 0) w = std::polar(1.0, ang * static_cast<double>(j));
                    const std::complex<double> u = blk[j];
                    const std::complex<double> v = blk[j + half] * w;
                    blk[j] = u + v;
                    blk[j + half] = u - v;
                    w *= step;
                }
            }
        } else {
            // Few large groups: split each group's butterfly range instead.
            const long long chunks = static_cast<long long>((half + 4095) / 4096);
            for (std::size_t g = 0; g < groups; ++g) {
                std::complex<double>* blk = a + g * len;
#pragma omp parallel for schedule(static)
                for (long long ci = 0; ci < chunks; ++ci) {
                    const std::size_t j0 = static_cast<std::size_t>(ci) * 4096;
                    const std::size_t j1 = std::min(half, j0 + 4096);
                    std::complex<double> w(1.0, 0.0);
                    for (std::size_t j = j0; j < j1; ++j) {
                        if (j % kTwiddleResync == 0)
                            w = std::polar(1.0, ang * static_cast<double>(j));
                        const std::complex<double> u = blk[j];
                        const std::complex<double> v = blk[j + half] * w;
                        blk[j] = u + v;
                        blk[j + half] = u - v;
                        w *= step;
                    }
                }
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            a[static_cast<std::size_t>(i)] *= inv;
    }
}

std::vector<std::complex<double>> dft_any(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    if ((n & (n - 1)) == 0) {
        auto a = x;
        fft_inplace(a.data(), n, false);
        return a;
    }
    // Bluestein: convolve the chirped input with the conjugate chirp.
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    std::vector<std::complex<double>> a(m), b(m);
    const double base = std::numbers::pi / static_cast<double>(n);
    // k^2 mod 2n keeps the chirp angle well conditioned for large k.
    const std::uint64_t mod = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t q = (static_cast<std::uint64_t>(k) * k) % mod;
        const std::complex<double> chirp = std::polar(1.0, -base * static_cast<double>(q));
        a[k] = x[k] * chirp;
        b[k] = std::conj(chirp);
        if (k != 0) b[m - k] = std::conj(chirp);
    }
    fft_inplace(a.data(), m, false);
    fft_inplace(b.data(), m, false);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_inplace(a.data(), m, true);
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t q = (static_cast<std::uint64_t>(k) * k) % mod;
        out[k] = a[k] * std::polar(1.0, -base * static_cast<double>(q));
    }
    return out;
}

} // namespace fft_detail

namespace {

inline double bit_to_pm1(const std::uint8_t* data, std::uint64_t i) {
    return ((data[i >> 3] >> (7 - (i & 7))) & 1) ? 1.0 : -1.0;
}

// Untangles the length-n real transform from the length-n/2 complex transform
// of pair-packed samples: S_f = E_f + e^{-2pi i f/n} O_f.
inline std::complex<double> untangle(const std::complex<double>* z, std::size_t half, double ang,
                                     std::size_t f) {
    const std::complex<double> zf = z[f];
    const std::complex<double> zc = std::conj(z[(half - f) % half]);
    const std::complex<double> even = 0.5 * (zf + zc);
    const std::complex<double> odd = 0.5 * (zf - zc);
    const std::complex<double> o(odd.imag(), -odd.real());
    return even + std::polar(1.0, ang * static_cast<double>(f)) * o;
}

} // namespace

std::vector<double> dft_moduli(std::span<const double> x, std::size_t m) {
    if (m > x.size() / 2) throw Error("dft_moduli: m exceeds half the input length");
    const std::size_t n = x.size();
    std::vector<double> out;
    out.reserve(m);
    if (n == 0 || m == 0) return out;
    if ((n & (n - 1)) == 0 && n >= 2) {
        const std::size_t half = n / 2;
        std::vector<std::complex<double>> z(half);
        for (std::size_t k = 0; k < half; ++k) z[k] = {x[2 * k], x[2 * k + 1]};
        fft_detail::fft_inplace(z.data(), half, false);
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(n);
        for (std::size_t f = 0; f < m; ++f) out.push_back(std::abs(untangle(z.data(), half, ang, f)));
        return out;
    }
    std::vector<std::complex<double>> z(n);
    for (std::size_t k = 0; k < n; ++k) z[k] = {x[k], 0.0};
    auto S = fft_detail::dft_any(z);
    for (std::size_t f = 0; f < m; ++f) out.push_back(std::abs(S[f]));
    return out;
}

std::uint64_t count_moduli_below(const std::uint8_t* data, std::uint64_t n, double threshold) {
    if (n < 2 || (n % 2) != 0) throw Error("count_moduli_below: need even n >= 2");
    if ((n & (n - 1)) == 0) {
        const std::size_t half = static_cast<std::size_t>(n / 2);
        std::vector<std::complex<double>> z(half);
#pragma omp parallel for schedule(static)
        for (long long k = 0; k < static_cast<long long>(half); ++k) {
            const auto i = static_cast<std::uint64_t>(k);
            z[static_cast<std::size_t>(k)] = {bit_to_pm1(data, 2 * i), bit_to_pm1(data, 2 * i + 1)};
        }
        fft_detail::fft_inplace(z.data(), half, false);
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(n);
        std::uint64_t below = 0;
#pragma omp parallel for schedule(static) reduction(+ : below)
        for (long long f = 0; f < static_cast<long long>(half); ++f) {
            const double mod = std::abs(untangle(z.data(), half, ang, static_cast<std::size_t>(f)));
            if (mod < threshold) ++below;
        }
        return below;
    }
    std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
    for (std::uint64_t k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] = {bit_to_pm1(data, k), 0.0};
    auto S = fft_detail::dft_any(z);
    std::uint64_t below = 0;
    for (std::uint64_t f = 0; f < n / 2; ++f)
        if (std::abs(S[static_cast<std::size_t>(f)]) < threshold) ++below;
    return below;
}

} // namespace qaudit
