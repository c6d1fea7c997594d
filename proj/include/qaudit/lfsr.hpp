#pragma once

#include <cstdint>
#include <span>

namespace qaudit {

// Berlekamp-Massey: length of the shortest LFSR generating `bits`
// (bits[i] in {0,1}). Throws qaudit::Error on an empty block.
int berlekamp_massey(std::span<const std::uint8_t> bits);

// Bit-packed variant used by the linear-complexity kernel: the block is
// `n` bits stored MSB-first starting at bit offset `bit_off` of `data`.
int berlekamp_massey_packed(const std::uint8_t* data, std::uint64_t bit_off, int n);

} // namespace qaudit
