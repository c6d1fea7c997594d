#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "qaudit/bit_sequence.hpp"

namespace qaudit {

// One anneal-readout cycle: the measured spin of every active qubit in
// ascending logical qubit index, plus the cycle's position in the time series.
struct AnnealSample {
    std::vector<std::int8_t> spins; // each entry is +1 or -1
    std::uint64_t anneal_index = 0;
    // Set when the source shows a gap before this sample (non-consecutive
    // anneal_index); gaps are recorded but never break concatenation.
    std::optional<std::uint64_t> epoch_tag;
};

// Fixed spin-to-bit mapping: +1 -> 1, -1 -> 0, index order preserved.
// Throws qaudit::Error on any spin outside {+1, -1}.
BitSequence spins_to_bits(const AnnealSample& sample);

// Streaming parse of a spin CSV: header `anneal_index,q<id>,q<id>,...` with
// ascending qubit ids, one row per anneal cycle, cells in {+1, 1, -1}.
// Invokes `sink` for each row in file order; memory use is bounded by one row
// regardless of row count. Returns the number of rows parsed.
std::uint64_t ingest_spin_csv(const std::filesystem::path& path,
                              const std::function<void(const AnnealSample&)>& sink);

} // namespace qaudit
