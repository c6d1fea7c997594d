#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace qaudit {

// Chimera hardware graph: a grid_size x grid_size lattice of bipartite cells
// with 2*shore_size qubits each. Qubit id for (row, col, side u, shore k) is
// ((row*grid + col)*2 + u)*shore + k. Intra-cell couplers join the two sides
// completely; inter-cell couplers join same-shore qubits of row/column
// neighbors (side 0 vertically, side 1 horizontally).
struct ChimeraGraph {
    int grid_size = 0;
    int shore_size = 0;
    std::vector<bool> active_mask;                       // one flag per qubit id
    std::vector<std::pair<int, int>> couplers;           // (lo, hi) qubit ids, sorted
    std::vector<int> active_qubits;                      // ascending qubit ids
    std::vector<int> active_position;                    // qubit id -> index in active_qubits, -1 if masked

    int total_qubits() const { return grid_size * grid_size * 2 * shore_size; }
    int active_count() const { return static_cast<int>(active_qubits.size()); }
};

ChimeraGraph build_chimera(int grid_size, int shore_size, const std::vector<bool>& active_mask);

// All-active convenience mask.
std::vector<bool> all_active_mask(int grid_size, int shore_size);

// The representative device fixture: grid 16, shore 4, 16 masked qubits for
// 2032 active. The physical chip's inactive set is unpublished; this fixture
// reproduces the count, not the layout.
ChimeraGraph paper_device_graph();

const std::vector<int>& paper_device_masked_qubits();

} // namespace qaudit
