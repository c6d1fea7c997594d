#include <doctest.h>

#include <random>
#include <string>

#include "qaudit/annealer_sim.hpp"
#include "qaudit/bit_sequence.hpp"
#include "qaudit/special.hpp"
#include "qaudit/suite.hpp"

#include "reference_suite.hpp"

using namespace qaudit;

namespace {

SuiteConfig defaults() { return SuiteConfig{}; }

BitSequence repeat(const std::string& pattern, std::size_t copies) {
    std::string s;
    s.reserve(pattern.size() * copies);
    for (std::size_t i = 0; i < copies; ++i) s += pattern;
    return BitSequence::from_string(s);
}

BitSequence mt_bits(std::uint64_t seed, std::uint64_t n) {
    std::mt19937_64 rng(seed);
    BitBuilder b(n);
    for (std::uint64_t i = 0; i < n; ++i) b.push_bit(static_cast<int>(rng() & 1));
    return b.take();
}

double p0(const TestResult& r) {
    REQUIRE(r.applicable);
    REQUIRE(!r.p_values.empty());
    return r.p_values[0].value;
}

} // namespace

// Frozen expected values below were computed two ways before being asserted:
// by hand from the test definitions and with 40-digit arithmetic for the
// erfc/igamc evaluations.

TEST_CASE("monobit") {
    const auto cfg = defaults();
    CHECK(p0(monobit(BitSequence::from_string("1011010101"), cfg)) ==
          doctest::Approx(0.527089256865).epsilon(1e-9));

    const auto balanced = monobit(repeat("01", 50), cfg);
    CHECK(p0(balanced) == doctest::Approx(1.0));
    CHECK(balanced.verdict == Verdict::random);

    const auto zeros = monobit(repeat("0", 100), cfg);
    CHECK(p0(zeros) == doctest::Approx(1.5239706048321052e-23).epsilon(1e-9));
    CHECK(zeros.verdict == Verdict::non_random);
}

TEST_CASE("block frequency") {
    SuiteConfig cfg;
    cfg.block_frequency_m = 3;
    const auto r = block_frequency(BitSequence::from_string("0110011010"), cfg);
    CHECK(p0(r) == doctest::Approx(0.8012519569012008).epsilon(1e-9));

    cfg.block_frequency_m = 2;
    CHECK(p0(block_frequency(repeat("01", 40), cfg)) == doctest::Approx(1.0));

    cfg.block_frequency_m = 128;
    const auto ones = block_frequency(repeat("1", 12800), cfg);
    CHECK(p0(ones) < 1e-30);
    CHECK(ones.verdict == Verdict::non_random);

    cfg.block_frequency_m = 0; // auto: M = 20 at n = 100 -> N = 5
    const auto aut = block_frequency(mt_bits(1, 100), cfg);
    CHECK(aut.applicable);
}

TEST_CASE("runs") {
    const auto cfg = defaults();
    CHECK(p0(runs(BitSequence::from_string("1001101011"), cfg)) ==
          doctest::Approx(0.14723225536366556).epsilon(1e-9));

    const auto alt = runs(repeat("01", 500), cfg);
    CHECK(p0(alt) < 1e-100);
    CHECK(alt.verdict == Verdict::non_random);

    const auto zeros = runs(repeat("0", 100), cfg);
    CHECK(zeros.verdict == Verdict::not_applicable);
    CHECK(!zeros.applicable);
}

TEST_CASE("longest run in a block") {
    const auto cfg = defaults();
    const auto ones = longest_run_in_block(repeat("1", 128), cfg);
    CHECK(p0(ones) < 1e-10);
    CHECK(ones.verdict == Verdict::non_random);

    CHECK(longest_run_in_block(mt_bits(2, 100), cfg).verdict == Verdict::not_applicable);

    // Fixed 128-bit input matches the reference implementation.
    const auto bits = mt_bits(77, 128);
    const auto mine = longest_run_in_block(bits, cfg);
    const auto theirs = ref::longest_run_in_block(ref::unpack(bits));
    REQUIRE(theirs.applicable);
    CHECK(p0(mine) == doctest::Approx(theirs.p_values[0].second).epsilon(1e-6));
}

TEST_CASE("binary matrix rank") {
    const auto cfg = defaults();
    const auto zeros = binary_matrix_rank(repeat("0", 38912), cfg);
    CHECK(p0(zeros) < 1e-10);
    CHECK(zeros.verdict == Verdict::non_random);

    CHECK(binary_matrix_rank(mt_bits(3, 38911), cfg).verdict == Verdict::not_applicable);

    const auto bits = mt_bits(4, 1'000'000);
    const auto mine = binary_matrix_rank(bits, cfg);
    const auto theirs = ref::binary_matrix_rank(ref::unpack(bits));
    CHECK(p0(mine) == doctest::Approx(theirs.p_values[0].second).epsilon(1e-9));
}

TEST_CASE("spectral dft") {
    const auto cfg = defaults();
    // Computed moduli {0, 2, 4.472, 2, 4.472} all sit below T = 5.473, so
    // N1 = 5 and p = 0.468160.
    CHECK(p0(spectral_dft(BitSequence::from_string("1001010011"), cfg)) ==
          doctest::Approx(0.4681599098544280).epsilon(1e-9));

    // All-zeros: X = -1 everywhere, the DC modulus 10 crosses T, N1 = 4.
    CHECK(p0(spectral_dft(repeat("0", 10), cfg)) ==
          doctest::Approx(0.029523215949937890).epsilon(1e-9));

    // Strong period-4 structure concentrates the spectrum.
    const auto periodic = spectral_dft(repeat("0001", 256), cfg);
    CHECK(p0(periodic) < 0.01);
    CHECK(periodic.verdict == Verdict::non_random);

    CHECK(spectral_dft(BitSequence::from_string("0101"), cfg).verdict ==
          Verdict::not_applicable);
}

TEST_CASE("non-overlapping template matching") {
    const auto cfg = defaults();
    // All-zeros: template 000000001 never occurs, every W_j = 0.
    const auto zeros = non_overlapping_template(repeat("0", 8 * 1032), cfg);
    REQUIRE(zeros.applicable);
    double p_expected;
    {
        const double M = 1032, m = 9;
        const double mu = (M - m + 1) / 512.0;
        const double var = M * (1.0 / 512.0 - (2 * m - 1) / (512.0 * 512.0));
        p_expected = qaudit::igamc(4.0, 8.0 * (mu * mu / var) / 2.0);
    }
    bool found = false;
    for (const auto& [label, value] : zeros.statistics) {
        if (label == "p[000000001]") {
            CHECK(value == doctest::Approx(p_expected).epsilon(1e-9));
            found = true;
        }
    }
    CHECK(found);
    CHECK(zeros.statistics.size() == 148); // aperiodic templates at m=9

    // Headline is the min of the per-template table.
    double min_p = 2.0;
    for (const auto& [label, value] : zeros.statistics) min_p = std::min(min_p, value);
    CHECK(p0(zeros) == doctest::Approx(min_p));

    // Template longer than the block.
    SuiteConfig tiny = cfg;
    CHECK(non_overlapping_template(BitSequence::from_string("0101010"), tiny).verdict ==
          Verdict::not_applicable);
}

TEST_CASE("overlapping template matching") {
    const auto cfg = defaults();
    const auto ones = overlapping_template(repeat("1", 1'032'000), cfg);
    CHECK(p0(ones) < 1e-30);
    CHECK(ones.verdict == Verdict::non_random);

    CHECK(overlapping_template(mt_bits(5, 999'999), cfg).verdict == Verdict::not_applicable);
}

TEST_CASE("maurers universal") {
    const auto cfg = defaults();
    CHECK(maurers_universal(mt_bits(6, 387'839), cfg).verdict == Verdict::not_applicable);

    // Period-6 repetition: constant block value, every gap is 1, fn = 0.
    const auto periodic = maurers_universal(repeat("101010", 64'640 + 100), cfg);
    REQUIRE(periodic.applicable);
    CHECK(p0(periodic) < 1e-100);
    CHECK(periodic.verdict == Verdict::non_random);
}

TEST_CASE("linear complexity") {
    const auto cfg = defaults();
    const auto zeros = linear_complexity(repeat("0", 1'000'000), cfg);
    CHECK(p0(zeros) < 1e-12);
    CHECK(zeros.verdict == Verdict::non_random);

    // Degree-250 LFSR (primitive trinomial x^250 + x^103 + 1): every 500-bit
    // block has linear complexity exactly 250, so all mass lands in the
    // center category and the chi-square explodes.
    {
        std::vector<std::uint8_t> state(250, 0);
        state[0] = 1;
        BitBuilder b(1'000'000);
        for (int i = 0; i < 1'000'000; ++i) {
            const std::uint8_t out = state[249];
            const std::uint8_t fb = static_cast<std::uint8_t>(state[249] ^ state[102]);
            for (int j = 249; j > 0; --j) state[static_cast<std::size_t>(j)] = state[static_cast<std::size_t>(j - 1)];
            state[0] = fb;
            b.push_bit(out);
        }
        const auto r = linear_complexity(b.take(), cfg);
        REQUIRE(r.applicable);
        CHECK(p0(r) < 1e-12);
    }

    CHECK(linear_complexity(mt_bits(8, 999'999), cfg).verdict == Verdict::not_applicable);
}

TEST_CASE("serial") {
    SuiteConfig cfg;
    cfg.serial_m = 3;
    const auto r = serial(BitSequence::from_string("0011011101"), cfg);
    REQUIRE(r.applicable);
    REQUIRE(r.p_values.size() == 2);
    CHECK(r.p_values[0].value == doctest::Approx(0.8087921354109988).epsilon(1e-9));
    CHECK(r.p_values[1].value == doctest::Approx(0.6703200460356393).epsilon(1e-9));

    // de Bruijn order 4: every 4-bit cyclic window appears exactly once.
    cfg.serial_m = 4;
    const auto db = serial(BitSequence::from_string("0000100110101111"), cfg);
    REQUIRE(db.applicable);
    CHECK(db.p_values[0].value == doctest::Approx(1.0));

    cfg.serial_m = 2;
    const auto zeros = serial(repeat("0", 100), cfg);
    CHECK(zeros.p_values[0].value < 1e-20);
    CHECK(zeros.p_values[1].value < 1e-10);

    cfg.serial_m = 16;
    CHECK(serial(mt_bits(9, 65'535), cfg).verdict == Verdict::not_applicable);
}

TEST_CASE("approximate entropy") {
    SuiteConfig cfg;
    cfg.approximate_entropy_m = 3;
    CHECK(p0(approximate_entropy(BitSequence::from_string("0100110101"), cfg)) ==
          doctest::Approx(0.26196110488166539).epsilon(1e-9));

    cfg.approximate_entropy_m = 3;
    const auto db = approximate_entropy(BitSequence::from_string("0000100110101111"), cfg);
    CHECK(p0(db) == doctest::Approx(1.0));

    cfg.approximate_entropy_m = 10;
    const auto zeros = approximate_entropy(repeat("0", 10'000), cfg);
    CHECK(p0(zeros) < 1e-100);
    CHECK(zeros.verdict == Verdict::non_random);
}

TEST_CASE("cumulative sums") {
    const auto cfg = defaults();
    const auto r = cumulative_sums(BitSequence::from_string("1011010111"), cfg);
    REQUIRE(r.applicable);
    CHECK(r.p_values[0].value == doctest::Approx(0.41158471825259780).epsilon(1e-9));

    const auto ones = cumulative_sums(repeat("1", 100), cfg);
    CHECK(ones.p_values[0].value < 1e-20);
    CHECK(ones.verdict == Verdict::non_random);

    // Definitional identity: backward(s) = forward(reverse(s)).
    std::mt19937_64 rng(100);
    for (int trial = 0; trial < 10; ++trial) {
        const auto bits = mt_bits(rng(), 2000);
        std::string rev = bits.to_string();
        std::reverse(rev.begin(), rev.end());
        const auto fwd = cumulative_sums(bits, cfg);
        const auto bwd = cumulative_sums(BitSequence::from_string(rev), cfg);
        CHECK(fwd.p_values[1].value == doctest::Approx(bwd.p_values[0].value).epsilon(1e-12));
    }
}

TEST_CASE("random excursions applicability") {
    const auto cfg = defaults();
    const auto ones = random_excursions(repeat("1", 10'000), cfg);
    CHECK(ones.verdict == Verdict::not_applicable);

    const auto few = random_excursions(repeat("01", 300), cfg); // J = 300
    CHECK(few.verdict == Verdict::not_applicable);
    CHECK(few.note.find("300") != std::string::npos);

    const auto ones_v = random_excursions_variant(repeat("1", 10'000), cfg);
    CHECK(ones_v.verdict == Verdict::not_applicable);
}

TEST_CASE("random excursions against reference on a 1e6-bit stream") {
    const auto cfg = defaults();
    const auto bits = mt_bits(7, 1'000'000); // seed chosen so J >= 500
    const auto mine = random_excursions(bits, cfg);
    const auto theirs = ref::random_excursions(ref::unpack(bits));
    REQUIRE(mine.applicable);
    REQUIRE(theirs.applicable);
    REQUIRE(mine.p_values.size() == 8);
    REQUIRE(theirs.p_values.size() == 8);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(mine.p_values[i].value == doctest::Approx(theirs.p_values[i].second).epsilon(1e-6));

    const auto mine_v = random_excursions_variant(bits, cfg);
    const auto theirs_v = ref::random_excursions_variant(ref::unpack(bits));
    REQUIRE(mine_v.p_values.size() == 18);
    for (std::size_t i = 0; i < 18; ++i)
        CHECK(mine_v.p_values[i].value == doctest::Approx(theirs_v.p_values[i].second).epsilon(1e-6));
}

TEST_CASE("variant p-value is exactly 1 when visits equal J") {
    // xi(x) = J makes the statistic 0 by definition.
    CHECK(qaudit::erfc(0.0) == 1.0);
}

TEST_CASE("verdict rule and paper cells") {
    const double alpha = 0.01;
    auto verdict = [&](std::vector<double> ps) {
        std::vector<LabeledP> labeled;
        for (const double p : ps) labeled.push_back({"p", p});
        return verdict_for(true, labeled, alpha);
    };
    CHECK(verdict({0.15763, 0.97128}) == Verdict::random);
    CHECK(verdict({0.00298}) == Verdict::non_random);
    CHECK(verdict({0.01337}) == Verdict::random);
    CHECK(verdict({0.00952}) == Verdict::non_random);
    CHECK(verdict({0.0, 0.0}) == Verdict::non_random);
    // Tie at alpha counts as pass.
    CHECK(verdict({0.01}) == Verdict::random);
    CHECK(verdict_for(false, {}, alpha) == Verdict::not_applicable);
}

TEST_CASE("run_all shape and determinism") {
    SuiteConfig cfg;
    const auto bits = mt_bits(123, 200'000);
    const auto a = run_all(bits, cfg);
    const auto b = run_all(bits, cfg);
    REQUIRE(a.tests.size() == 15);
    for (std::size_t i = 0; i < a.tests.size(); ++i) {
        CHECK(a.tests[i].test_name == suite_test_names()[i]);
        REQUIRE(a.tests[i].p_values.size() == b.tests[i].p_values.size());
        for (std::size_t j = 0; j < a.tests[i].p_values.size(); ++j)
            CHECK(a.tests[i].p_values[j].value == b.tests[i].p_values[j].value);
    }
    // Row expansion covers the full Table-2 layout.
    const auto rows = expand_rows(a.tests);
    CHECK(rows.size() == 39);
    CHECK(table_row_labels().size() == 39);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].row_label == table_row_labels()[i]);
    // Labeled p-value count when everything is applicable: 41.
    std::size_t labels = 0;
    for (const auto& t : a.tests) labels += t.p_values.size();
    if (a.tests[13].applicable && a.tests[14].applicable) CHECK(labels == 41);
}

TEST_CASE("every test returns p-values in [0,1], never NaN, on degenerate inputs") {
    SuiteConfig cfg;
    cfg.serial_m = 3;
    cfg.approximate_entropy_m = 3;
    const std::vector<BitSequence> inputs = {
        repeat("0", 2000),  repeat("1", 2000),   repeat("01", 1000),
        repeat("0011", 500), mt_bits(55, 2000),  BitSequence::from_string("01"),
    };
    for (const auto& bits : inputs) {
        for (const auto& name : suite_test_names()) {
            const auto r = run_test(name, bits, cfg);
            for (const auto& p : r.p_values) {
                CHECK(!std::isnan(p.value));
                CHECK(p.value >= 0.0);
                CHECK(p.value <= 1.0);
            }
        }
    }
}

TEST_CASE("results serialize and reload losslessly") {
    SuiteConfig cfg;
    const auto bits = mt_bits(321, 50'000);
    for (const auto& name : suite_test_names()) {
        const auto r = run_test(name, bits, cfg);
        const auto r2 = TestResult::from_json(r.to_json());
        CHECK(r2.test_name == r.test_name);
        CHECK(r2.applicable == r.applicable);
        CHECK(r2.verdict == r.verdict);
        REQUIRE(r2.p_values.size() == r.p_values.size());
        for (std::size_t i = 0; i < r.p_values.size(); ++i) {
            CHECK(r2.p_values[i].label == r.p_values[i].label);
            CHECK(r2.p_values[i].value == r.p_values[i].value); // bit-exact
        }
        CHECK(r.to_json() == r2.to_json());
    }
}
