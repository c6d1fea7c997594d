#include "qaudit/chimera.hpp"

#include <algorithm>

#include "qaudit/errors.hpp"

namespace qaudit {

std::vector<bool> all_active_mask(int grid_size, int shore_size) {
    return std::vector<bool>(static_cast<std::size_t>(grid_size * grid_size * 2 * shore_size), true);
}

ChimeraGraph build_chimera(int grid_size, int shore_size, const std::vector<bool>& active_mask) {
    if (grid_size < 1 || shore_size < 1) throw ConfigError("grid_size and shore_size must be >= 1");
    const int total = grid_size * grid_size * 2 * shore_size;
    if (static_cast<int>(active_mask.size()) != total)
        throw ConfigError("active mask has " + std::to_string(active_mask.size()) +
                          " entries, expected " + std::to_string(total));

    ChimeraGraph g;
    g.grid_size = grid_size;
    g.shore_size = shore_size;
    g.active_mask = active_mask;
    g.active_position.assign(static_cast<std::size_t>(total), -1);
    for (int q = 0; q < total; ++q) {
        if (active_mask[static_cast<std::size_t>(q)]) {
            g.active_position[static_cast<std::size_t>(q)] = static_cast<int>(g.active_qubits.size());
            g.active_qubits.push_back(q);
        }
    }

    const auto qubit_id = [&](int row, int col, int side, int k) {
        return ((row * grid_size + col) * 2 + side) * shore_size + k;
    };
    auto add = [&](int a, int b) {
        if (!active_mask[static_cast<std::size_t>(a)] || !active_mask[static_cast<std::size_t>(b)])
            return;
        g.couplers.emplace_back(std::min(a, b), std::max(a, b));
    };
    for (int r = 0; r < grid_size; ++r) {
        for (int c = 0; c < grid_size; ++c) {
            for (int i = 0; i < shore_size; ++i) {
                for (int j = 0; j < shore_size; ++j) add(qubit_id(r, c, 0, i), qubit_id(r, c, 1, j));
                if (r + 1 < grid_size) add(qubit_id(r, c, 0, i), qubit_id(r + 1, c, 0, i));
                if (c + 1 < grid_size) add(qubit_id(r, c, 1, i), qubit_id(r, c + 1, 1, i));
            }
        }
    }
    std::sort(g.couplers.begin(), g.couplers.end());
    return g;
}

const std::vector<int>& paper_device_masked_qubits() {
    // Spread across the lattice; deterministic fixture, not chip layout.
    static const std::vector<int> masked = {7,    133,  259,  385,  511,  637,  763,  889,
                                            1015, 1141, 1267, 1393, 1519, 1645, 1771, 1897};
    return masked;
}

ChimeraGraph paper_device_graph() {
    auto mask = all_active_mask(16, 4);
    for (int q : paper_device_masked_qubits()) mask[static_cast<std::size_t>(q)] = false;
    return build_chimera(16, 4, mask);
}

} // namespace qaudit
