#pragma once

#include <array>
#include <cstdint>

namespace qaudit {

// Rank over GF(2) of a 32x32 bit matrix given as packed rows (bit j of row i
// = column j, MSB = column 0 or any fixed convention; rank is invariant).
int gf2_rank_32(std::array<std::uint32_t, 32> rows);

} // namespace qaudit
