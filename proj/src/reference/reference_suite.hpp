#pragma once

// Serial direct-definition implementations of the battery, kept for testing
// and benchmarking against the production kernels. Everything here favors
// clarity over speed: unpacked bit vectors, naive scans, textbook recursion,
// and boost::math for the p-value kernels so no numerical code is shared
// with the optimized path.

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qaudit/bit_sequence.hpp"
#include "qaudit/suite.hpp"

namespace qaudit::ref {

struct RefResult {
    bool applicable = false;
    std::vector<std::pair<std::string, double>> p_values;
    std::vector<std::pair<std::string, double>> statistics;
};

std::vector<std::uint8_t> unpack(const BitSequence& seq);

RefResult monobit(const std::vector<std::uint8_t>& b);
RefResult block_frequency(const std::vector<std::uint8_t>& b, std::uint64_t M);
RefResult runs(const std::vector<std::uint8_t>& b);
RefResult longest_run_in_block(const std::vector<std::uint8_t>& b);
RefResult binary_matrix_rank(const std::vector<std::uint8_t>& b);
RefResult spectral_dft(const std::vector<std::uint8_t>& b, std::uint64_t cap, std::uint64_t exact_max);
RefResult non_overlapping_template(const std::vector<std::uint8_t>& b, int m);
RefResult overlapping_template(const std::vector<std::uint8_t>& b);
RefResult maurers_universal(const std::vector<std::uint8_t>& b);
RefResult linear_complexity(const std::vector<std::uint8_t>& b, int M);
RefResult serial(const std::vector<std::uint8_t>& b, int m);
RefResult approximate_entropy(const std::vector<std::uint8_t>& b, int m);
RefResult cumulative_sums(const std::vector<std::uint8_t>& b);
RefResult random_excursions(const std::vector<std::uint8_t>& b);
RefResult random_excursions_variant(const std::vector<std::uint8_t>& b);

// Same dispatch surface as the production suite.
RefResult run_test(const std::string& name, const BitSequence& seq, const SuiteConfig& cfg);

// O(n^2) direct-summation DFT moduli, the ground-truth oracle for small n.
std::vector<double> dft_moduli_direct(const std::vector<double>& x, std::size_t m);

// Naive helpers exposed for oracle tests.
int gf2_rank_naive(std::vector<std::vector<int>> m);
int berlekamp_massey_naive(const std::vector<std::uint8_t>& bits);
// Exhaustive minimal-LFSR search (exponential; n <= ~20).
int shortest_lfsr_bruteforce(const std::vector<std::uint8_t>& bits);

} // namespace qaudit::ref
