#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qaudit/bit_sequence.hpp"

namespace qaudit {

inline constexpr double kDefaultAlpha = 0.01;

enum class Verdict { random, non_random, not_applicable };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct LabeledP {
    std::string label;
    double value;
};

// Outcome of one battery test: decision p-values, named intermediate
// statistics, and the pass/fail/not-applicable verdict at the configured
// alpha. `params` records the effective parameters for reproducibility.
struct TestResult {
    std::string test_name;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<LabeledP> p_values;
    std::vector<std::pair<std::string, double>> statistics;
    bool applicable = false;
    Verdict verdict = Verdict::not_applicable;
    std::string note;

    std::string to_json() const;
    static TestResult from_json(const std::string& text);
};

struct SuiteConfig {
    double alpha = kDefaultAlpha;
    // 0 = choose from n: 131072 above 1e8 bits, otherwise max(20, ceil(0.02 n))
    // capped at 131072.
    std::uint64_t block_frequency_m = 0;
    int serial_m = 16;
    int approximate_entropy_m = 10;
    int linear_complexity_m = 500;
    int template_m = 9;
    // Spectral test analyzes min(n, cap) bits; beyond `spectral_exact_max`
    // the prefix is rounded down to a power of two so the transform stays
    // in-place. Both recorded in the result.
    std::uint64_t spectral_cap_bits = 1ull << 27;
    std::uint64_t spectral_exact_max = 1ull << 22;
    int jobs = 0; // 0 = library default

    void validate() const;
    std::string digest() const;
};

// The 15 SP 800-22 tests. Inputs shorter than a test's minimum yield a
// not_applicable result carrying the minimum; no test throws on short input.
TestResult monobit(const BitSequence& seq, const SuiteConfig& cfg);
TestResult block_frequency(const BitSequence& seq, const SuiteConfig& cfg);
TestResult runs(const BitSequence& seq, const SuiteConfig& cfg);
TestResult longest_run_in_block(const BitSequence& seq, const SuiteConfig& cfg);
TestResult binary_matrix_rank(const BitSequence& seq, const SuiteConfig& cfg);
TestResult spectral_dft(const BitSequence& seq, const SuiteConfig& cfg);
TestResult non_overlapping_template(const BitSequence& seq, const SuiteConfig& cfg);
TestResult overlapping_template(const BitSequence& seq, const SuiteConfig& cfg);
TestResult maurers_universal(const BitSequence& seq, const SuiteConfig& cfg);
TestResult linear_complexity(const BitSequence& seq, const SuiteConfig& cfg);
TestResult serial(const BitSequence& seq, const SuiteConfig& cfg);
TestResult approximate_entropy(const BitSequence& seq, const SuiteConfig& cfg);
TestResult cumulative_sums(const BitSequence& seq, const SuiteConfig& cfg);
TestResult random_excursions(const BitSequence& seq, const SuiteConfig& cfg);
TestResult random_excursions_variant(const BitSequence& seq, const SuiteConfig& cfg);

// Canonical test order (the order the verdict matrix reports rows in).
const std::vector<std::string>& suite_test_names();

// Runs one test by canonical name.
TestResult run_test(const std::string& name, const BitSequence& seq, const SuiteConfig& cfg);

struct SuiteResult {
    std::vector<TestResult> tests; // in suite_test_names() order
    // random: every applicable test passed; non_random: some applicable test
    // failed; not_applicable: nothing was applicable.
    Verdict dataset_verdict = Verdict::not_applicable;
    bool any_not_applicable = false;
};

SuiteResult run_all(const BitSequence& seq, const SuiteConfig& cfg);

// Flattened Table-2-style rows: excursion tests expand to one row per state,
// serial and cumulative-sums rows keep their value pair.
struct MatrixRow {
    std::string row_label; // e.g. "random excursion x = -4"
    std::string test_name; // owning test
    std::vector<double> p_values;
    Verdict verdict = Verdict::not_applicable;
};

std::vector<MatrixRow> expand_rows(const std::vector<TestResult>& tests);

const std::vector<std::string>& table_row_labels(); // all 39 row labels

Verdict verdict_for(bool applicable, const std::vector<LabeledP>& ps, double alpha);

} // namespace qaudit
