#include "qaudit/lfsr.hpp"

#include <bit>
#include <vector>

#include "qaudit/errors.hpp"

namespace qaudit {

namespace {

// Dot-product parity of poly (bit i = coeff of x^i, LSB-first words) with
// rev-sequence words starting at bit offset `off`, over `len` coefficients.
int dot_parity(const std::uint64_t* poly, const std::uint64_t* rev, std::uint64_t off, int len) {
    std::uint64_t acc = 0;
    const int words = (len + 64) / 64; // len+1 coefficients including x^0
    const std::uint64_t word_off = off >> 6;
    const unsigned shift = static_cast<unsigned>(off & 63);
    for (int w = 0; w < words; ++w) {
        std::uint64_t chunk = rev[word_off + w] >> shift;
        if (shift) chunk |= rev[word_off + w + 1] << (64 - shift);
        acc ^= poly[w] & chunk;
    }
    return std::popcount(acc) & 1;
}

// dst ^= src << shift_bits, over `words` destination words.
void xor_shifted(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t shift_bits, int words) {
    const std::uint64_t word_sh = shift_bits >> 6;
    const unsigned bit_sh = static_cast<unsigned>(shift_bits & 63);
    if (bit_sh == 0) {
        for (int w = static_cast<int>(word_sh); w < words; ++w)
            dst[w] ^= src[w - static_cast<int>(word_sh)];
        return;
    }
    for (int w = static_cast<int>(word_sh); w < words; ++w) {
        std::uint64_t v = src[w - static_cast<int>(word_sh)] << bit_sh;
        if (w > static_cast<int>(word_sh))
            v |= src[w - static_cast<int>(word_sh) - 1] >> (64 - bit_sh);
        dst[w] ^= v;
    }
}

int bm_core(const std::uint64_t* rev, int n) {
    // rev holds the block reversed: bit k = b[n-1-k], LSB-first within words.
    const int words = (n >> 6) + 2;
    std::vector<std::uint64_t> C(static_cast<std::size_t>(words), 0);
    std::vector<std::uint64_t> B(static_cast<std::size_t>(words), 0);
    std::vector<std::uint64_t> T(static_cast<std::size_t>(words), 0);
    C[0] = 1;
    B[0] = 1;
    int L = 0;
    int m = -1;
    for (int N = 0; N < n; ++N) {
        // d = b[N] ^ XOR_{i=1..L} C_i b[N-i]; with rev layout b[N-i] sits at
        // rev bit (n-1-N)+i, so the window is contiguous.
        const int d = dot_parity(C.data(), rev, static_cast<std::uint64_t>(n - 1 - N), L);
        if (!d) continue;
        if (2 * L <= N) {
            T = C;
            xor_shifted(C.data(), B.data(), static_cast<std::uint64_t>(N - m), words);
            L = N + 1 - L;
            m = N;
            B = T;
        } else {
            xor_shifted(C.data(), B.data(), static_cast<std::uint64_t>(N - m), words);
        }
    }
    return L;
}

} // namespace

int berlekamp_massey_packed(const std::uint8_t* data, std::uint64_t bit_off, int n) {
    if (n <= 0) throw Error("berlekamp_massey: empty block");
    std::vector<std::uint64_t> rev(static_cast<std::size_t>((n >> 6) + 2), 0);
    for (int j = 0; j < n; ++j) {
        const std::uint64_t b = bit_off + static_cast<std::uint64_t>(j);
        const int bit = (data[b >> 3] >> (7 - (b & 7))) & 1;
        if (bit) {
            const int k = n - 1 - j;
            rev[static_cast<std::size_t>(k >> 6)] |= 1ull << (k & 63);
        }
    }
    return bm_core(rev.data(), n);
}

int berlekamp_massey(std::span<const std::uint8_t> bits) {
    if (bits.empty()) throw Error("berlekamp_massey: empty block");
    const int n = static_cast<int>(bits.size());
    std::vector<std::uint64_t> rev(static_cast<std::size_t>((n >> 6) + 2), 0);
    for (int j = 0; j < n; ++j) {
        if (bits[static_cast<std::size_t>(j)] & 1) {
            const int k = n - 1 - j;
            rev[static_cast<std::size_t>(k >> 6)] |= 1ull << (k & 63);
        }
    }
    return bm_core(rev.data(), n);
}

} // namespace qaudit
