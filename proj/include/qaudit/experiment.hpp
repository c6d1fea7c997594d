#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qaudit/bit_sequence.hpp"
#include "qaudit/suite.hpp"

namespace qaudit {

// One dataset of the experiment grid: where its bits come from and which job
// parameters produced them.
struct DatasetRecord {
    std::string dataset_id;
    double annealing_time_us = 1.0;
    bool postprocess_sampling = false;
    std::uint64_t bit_count = 0;             // 0 until resolved
    std::string source;                      // file path, or "sim:<digest>" descriptor
    std::optional<std::string> bits_file;    // packed input, when file-backed
    std::optional<std::string> sim_config;   // simulator config path, when generated
    std::uint64_t n_anneals = 0;             // for simulator-backed records
};

// The canonical 8-experiment grid of the device study: anneal times
// {1, 2000, 10, 100} microseconds with server-side post-processing on
// (test1..test4) and the same times with it off (test5..test8).
std::vector<DatasetRecord> canonical_experiments();

struct MatrixColumn {
    DatasetRecord record;
    std::vector<TestResult> tests; // suite order
    std::string suite_digest;
};

struct ExperimentMatrix {
    std::vector<std::string> row_labels; // Table-2-style rows
    std::vector<MatrixColumn> columns;
    std::string suite_digest;

    std::string to_json() const;
    static ExperimentMatrix from_json(const std::string& text);
    std::string to_csv() const;

    // Failed-row labels per dataset column at the matrix's alpha.
    std::vector<std::pair<std::string, std::vector<std::string>>> failure_summary(
        double alpha) const;
};

// Runs the full battery for one dataset with per-test checkpointing under
// `checkpoint_dir/<dataset_id>/<test>.result`. Existing checkpoints with a
// matching config digest are reused; a digest mismatch refuses to mix runs.
MatrixColumn run_dataset(const DatasetRecord& record, const BitSequence& bits,
                         const SuiteConfig& cfg, const std::filesystem::path& checkpoint_dir);

ExperimentMatrix aggregate(const std::vector<MatrixColumn>& columns, const SuiteConfig& cfg);

} // namespace qaudit
