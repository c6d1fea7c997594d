#include "qaudit/gf2.hpp"

namespace qaudit {

int gf2_rank_32(std::array<std::uint32_t, 32> rows) {
    int rank = 0;
    for (int col = 31; col >= 0 && rank < 32; --col) {
        const std::uint32_t mask = 1u << col;
        int pivot = -1;
        for (int r = rank; r < 32; ++r) {
            if (rows[static_cast<std::size_t>(r)] & mask) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        const std::uint32_t prow = rows[static_cast<std::size_t>(rank)];
        for (int r = rank + 1; r < 32; ++r)
            if (rows[static_cast<std::size_t>(r)] & mask) rows[static_cast<std::size_t>(r)] ^= prow;
        ++rank;
    }
    return rank;
}

} // namespace qaudit
