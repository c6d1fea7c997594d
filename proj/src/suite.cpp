#include "qaudit/suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <numbers>

#include <omp.h>
#include <nlohmann/json.hpp>

#include "qaudit/bit_io.hpp"
#include "qaudit/errors.hpp"
#include "qaudit/fft.hpp"
#include "qaudit/gf2.hpp"
#include "qaudit/lfsr.hpp"
#include "qaudit/special.hpp"

using ordered_json = nlohmann::ordered_json;

namespace qaudit {

namespace {

inline int bit_at(const std::uint8_t* d, std::uint64_t i) {
    return (d[i >> 3] >> (7 - (i & 7))) & 1;
}

std::uint64_t parallel_popcount(const std::uint8_t* d, std::uint64_t nbits) {
    const std::uint64_t chunk_bits = 1ull << 24;
    const std::uint64_t nchunks = (nbits + chunk_bits - 1) / chunk_bits;
    std::uint64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk_bits;
        const std::uint64_t hi = std::min(nbits, lo + chunk_bits);
        total += popcount_range(d, lo, hi);
    }
    return total;
}

TestResult not_applicable_result(std::string name, std::string note) {
    TestResult r;
    r.test_name = std::move(name);
    r.applicable = false;
    r.verdict = Verdict::not_applicable;
    r.note = std::move(note);
    return r;
}

void add_param(TestResult& r, const std::string& k, std::uint64_t v) {
    r.params.emplace_back(k, std::to_string(v));
}
void add_param(TestResult& r, const std::string& k, const std::string& v) {
    r.params.emplace_back(k, v);
}

void finish(TestResult& r, double alpha) {
    r.applicable = true;
    r.verdict = verdict_for(true, r.p_values, alpha);
}

std::uint64_t auto_block_frequency_m(std::uint64_t n) {
    if (n > 100'000'000ull) return 131072;
    const std::uint64_t m = std::max<std::uint64_t>(20, (n + 49) / 50); // ceil(0.02 n)
    return std::min<std::uint64_t>(m, 131072);
}

} // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::random: return "random";
        case Verdict::non_random: return "non_random";
        default: return "not_applicable";
    }
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "random") return Verdict::random;
    if (s == "non_random") return Verdict::non_random;
    if (s == "not_applicable") return Verdict::not_applicable;
    throw Error("unknown verdict: " + s);
}

Verdict verdict_for(bool applicable, const std::vector<LabeledP>& ps, double alpha) {
    if (!applicable) return Verdict::not_applicable;
    for (const auto& p : ps)
        if (p.value < alpha) return Verdict::non_random;
    return Verdict::random;
}

void SuiteConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must be in (0,1)");
    if (spectral_cap_bits < (1ull << 10) || (spectral_cap_bits & (spectral_cap_bits - 1)) != 0)
        throw ConfigError("spectral_cap_bits must be a power of two >= 2^10");
    if (serial_m < 2 || serial_m > 20) throw ConfigError("serial_m must be in [2,20]");
    if (approximate_entropy_m < 1 || approximate_entropy_m > 20)
        throw ConfigError("approximate_entropy_m must be in [1,20]");
    if (linear_complexity_m < 4 || linear_complexity_m > 5000)
        throw ConfigError("linear_complexity_m must be in [4,5000]");
    if (template_m < 2 || template_m > 16) throw ConfigError("template_m must be in [2,16]");
}

std::string SuiteConfig::digest() const {
    std::string s = "alpha=" + std::to_string(alpha) + ";bf=" + std::to_string(block_frequency_m) +
                    ";serial=" + std::to_string(serial_m) +
                    ";apen=" + std::to_string(approximate_entropy_m) +
                    ";lc=" + std::to_string(linear_complexity_m) +
                    ";tmpl=" + std::to_string(template_m) +
                    ";cap=" + std::to_string(spectral_cap_bits) +
                    ";exact=" + std::to_string(spectral_exact_max);
    return fnv1a64_hex(s);
}

// ---------------------------------------------------------------- monobit

TestResult monobit(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    if (n < 1) return not_applicable_result("monobit", "needs at least 1 bit");
    TestResult r;
    r.test_name = "monobit";
    const std::uint64_t ones = parallel_popcount(seq.data(), n);
    const auto S = static_cast<long long>(2 * ones) - static_cast<long long>(n);
    const double s_obs = std::fabs(static_cast<double>(S)) / std::sqrt(static_cast<double>(n));
    const double p = erfc(s_obs / std::sqrt(2.0));
    add_param(r, "n", n);
    r.statistics.emplace_back("ones", static_cast<double>(ones));
    r.statistics.emplace_back("S", static_cast<double>(S));
    r.p_values.push_back({"p", clamp_probability(p)});
    finish(r, cfg.alpha);
    return r;
}

// ------------------------------------------------------- block frequency

TestResult block_frequency(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    const std::uint64_t M = cfg.block_frequency_m ? cfg.block_frequency_m : auto_block_frequency_m(n);
    const std::uint64_t N = M ? n / M : 0;
    if (N < 1)
        return not_applicable_result("block_frequency",
                                     "needs at least one block of " + std::to_string(M) + " bits");
    TestResult r;
    r.test_name = "block_frequency";
    add_param(r, "n", n);
    add_param(r, "M", M);
    add_param(r, "N", N);

    // chi^2 = 4M sum (pi_j - 1/2)^2 = sum (2*ones_j - M)^2 / M, an integer sum.
    std::uint64_t num = 0;
#pragma omp parallel for schedule(static) reduction(+ : num)
    for (long long j = 0; j < static_cast<long long>(N); ++j) {
        const std::uint64_t lo = static_cast<std::uint64_t>(j) * M;
        const auto ones = static_cast<long long>(popcount_range(seq.data(), lo, lo + M));
        const long long d = 2 * ones - static_cast<long long>(M);
        num += static_cast<std::uint64_t>(d * d);
    }
    const double chi2 = static_cast<double>(num) / static_cast<double>(M);
    const double p = igamc(static_cast<double>(N) / 2.0, chi2 / 2.0);
    r.statistics.emplace_back("chi2", chi2);
    r.p_values.push_back({"p", p});
    finish(r, cfg.alpha);
    return r;
}

// ------------------------------------------------------------------ runs

TestResult runs(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    if (n < 2) return not_applicable_result("runs", "needs at least 2 bits");
    TestResult r;
    r.test_name = "runs";
    add_param(r, "n", n);
    const std::uint64_t ones = parallel_popcount(seq.data(), n);
    const double pi = static_cast<double>(ones) / static_cast<double>(n);
    const double tau = 2.0 / std::sqrt(static_cast<double>(n));
    r.statistics.emplace_back("pi", pi);
    if (std::fabs(pi - 0.5) >= tau) {
        r.applicable = false;
        r.verdict = Verdict::not_applicable;
        r.note = "frequency prerequisite |pi - 1/2| < 2/sqrt(n) not met";
        return r;
    }

    // Transitions counted bytewise; bits 7..1 of v ^ (v<<1) flag the 7
    // in-byte adjacent pairs, byte seams handled explicitly.
    const std::uint8_t* d = seq.data();
    const std::uint64_t full_bytes = n / 8;
    std::uint64_t transitions = 0;
    const std::uint64_t chunk = 1ull << 21;
    const std::uint64_t nchunks = full_bytes ? (full_bytes + chunk - 1) / chunk : 0;
#pragma omp parallel for schedule(static) reduction(+ : transitions)
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
        const std::uint64_t hi = std::min(full_bytes, lo + chunk);
        std::uint64_t t = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const unsigned v = d[i];
            t += std::popcount((v ^ (v << 1)) & 0xFEu);
            if (i + 1 < full_bytes) t += (v & 1u) ^ (d[i + 1] >> 7);
        }
        transitions += t;
    }
    // Tail bits beyond the last full byte (includes the seam into the tail).
    for (std::uint64_t i = full_bytes * 8; i < n; ++i)
        if (i > 0) transitions += bit_at(d, i - 1) != bit_at(d, i);

    const double V = static_cast<double>(transitions) + 1.0;
    const double prod = pi * (1.0 - pi);
    const double p = erfc(std::fabs(V - 2.0 * static_cast<double>(n) * prod) /
                          (2.0 * std::sqrt(2.0 * static_cast<double>(n)) * prod));
    r.statistics.emplace_back("V", V);
    r.p_values.push_back({"p", p});
    finish(r, cfg.alpha);
    return r;
}

// ------------------------------------------------- longest run in block

namespace {

struct ByteRuns {
    std::uint8_t lead, trail, best;
};

const std::array<ByteRuns, 256>& byte_runs_table() {
    static const std::array<ByteRuns, 256> table = [] {
        std::array<ByteRuns, 256> t{};
        for (int v = 0; v < 256; ++v) {
            int lead = 0;
            while (lead < 8 && (v >> (7 - lead)) & 1) ++lead;
            int trail = 0;
            while (trail < 8 && (v >> trail) & 1) ++trail;
            int best = 0, run = 0;
            for (int b = 7; b >= 0; --b) {
                if ((v >> b) & 1) {
                    ++run;
                    best = std::max(best, run);
                } else {
                    run = 0;
                }
            }
            t[static_cast<std::size_t>(v)] = {static_cast<std::uint8_t>(lead),
                                              static_cast<std::uint8_t>(trail),
                                              static_cast<std::uint8_t>(best)};
        }
        return t;
    }();
    return table;
}

// Longest run of ones in bits [lo, lo+len); lo and len multiples of 8.
int longest_ones_run(const std::uint8_t* d, std::uint64_t lo, std::uint64_t len) {
    const auto& lut = byte_runs_table();
    const std::uint64_t b0 = lo >> 3;
    const std::uint64_t nb = len >> 3;
    int best = 0;
    int run = 0;
    for (std::uint64_t i = 0; i < nb; ++i) {
        const std::uint8_t v = d[b0 + i];
        if (v == 0xFF) {
            run += 8;
            continue;
        }
        const auto& e = lut[v];
        best = std::max(best, run + e.lead);
        best = std::max(best, static_cast<int>(e.best));
        run = e.trail;
    }
    return std::max(best, run);
}

} // namespace

TestResult longest_run_in_block(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    if (n < 128) return not_applicable_result("longest_run", "needs at least 128 bits");

    std::uint64_t M;
    int K;
    std::vector<double> pi;
    std::vector<int> lower; // category lower bounds on the longest run
    if (n < 6272) {
        M = 8;
        K = 3;
        pi = {0.21484375, 0.3671875, 0.23046875, 0.1875};
        lower = {0, 2, 3, 4}; // <=1, 2, 3, >=4
    } else if (n < 750000) {
        M = 128;
        K = 5;
        pi = {0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847};
        lower = {0, 5, 6, 7, 8, 9}; // <=4, 5, 6, 7, 8, >=9
    } else {
        M = 10000;
        K = 6;
        pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
        lower = {0, 11, 12, 13, 14, 15, 16}; // <=10 ... >=16
    }
    const std::uint64_t N = n / M;

    TestResult r;
    r.test_name = "longest_run";
    add_param(r, "n", n);
    add_param(r, "M", M);
    add_param(r, "N", N);

    std::vector<std::uint64_t> nu(static_cast<std::size_t>(K + 1), 0);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(static_cast<std::size_t>(K + 1), 0);
#pragma omp for schedule(static) nowait
        for (long long b = 0; b < static_cast<long long>(N); ++b) {
            const int longest = longest_ones_run(seq.data(), static_cast<std::uint64_t>(b) * M, M);
            int k = 0;
            while (k < K && longest >= lower[static_cast<std::size_t>(k + 1)]) ++k;
            ++local[static_cast<std::size_t>(k)];
        }
#pragma omp critical
        for (std::size_t i = 0; i < nu.size(); ++i) nu[i] += local[i];
    }

    double chi2 = 0.0;
    for (int i = 0; i <= K; ++i) {
        const double e = static_cast<double>(N) * pi[static_cast<std::size_t>(i)];
        const double diff = static_cast<double>(nu[static_cast<std::size_t>(i)]) - e;
        chi2 += diff * diff / e;
    }
    r.statistics.emplace_back("chi2", chi2);
    r.p_values.push_back({"p", igamc(K / 2.0, chi2 / 2.0)});
    finish(r, cfg.alpha);
    return r;
}

// ------------------------------------------------------------------ rank

TestResult binary_matrix_rank(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    const std::uint64_t N = n / 1024;
    if (N < 38)
        return not_applicable_result("binary_matrix_rank",
                                     "needs at least 38 32x32 matrices (38912 bits)");
    TestResult r;
    r.test_name = "binary_matrix_rank";
    add_param(r, "n", n);
    add_param(r, "N", N);

    const std::uint8_t* d = seq.data();
    std::uint64_t f32 = 0, f31 = 0;
#pragma omp parallel for schedule(static) reduction(+ : f32, f31)
    for (long long k = 0; k < static_cast<long long>(N); ++k) {
        const std::uint64_t base = static_cast<std::uint64_t>(k) * 128; // bytes
        std::array<std::uint32_t, 32> rows;
        for (int row = 0; row < 32; ++row) {
            std::uint32_t v;
            std::memcpy(&v, d + base + 4 * static_cast<std::uint64_t>(row), 4);
            rows[static_cast<std::size_t>(row)] = __builtin_bswap32(v);
        }
        const int rank = gf2_rank_32(rows);
        if (rank == 32)
            ++f32;
        else if (rank == 31)
            ++f31;
    }
    const std::uint64_t f30 = N - f32 - f31;
    const double p32 = 0.2888, p31 = 0.5776, p30 = 0.1336;
    const double Nd = static_cast<double>(N);
    double chi2 = 0.0;
    chi2 += (f32 - Nd * p32) * (f32 - Nd * p32) / (Nd * p32);
    chi2 += (f31 - Nd * p31) * (f31 - Nd * p31) / (Nd * p31);
    chi2 += (f30 - Nd * p30) * (f30 - Nd * p30) / (Nd * p30);
    r.statistics.emplace_back("F32", static_cast<double>(f32));
    r.statistics.emplace_back("F31", static_cast<double>(f31));
    r.statistics.emplace_back("F30", static_cast<double>(f30));
    r.statistics.emplace_back("chi2", chi2);
    r.p_values.push_back({"p", igamc(1.0, chi2 / 2.0)});
    finish(r, cfg.alpha);
    return r;
}

// -------------------------------------------------------------- spectral

TestResult spectral_dft(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    if (n < 8) return not_applicable_result("spectral_dft", "needs at least 8 bits");
    std::uint64_t L = std::min<std::uint64_t>(n & ~1ull, cfg.spectral_cap_bits);
    if (L > cfg.spectral_exact_max) {
        // Large inputs analyze the largest power-of-two prefix so the
        // transform runs in place; the analyzed length is recorded.
        std::uint64_t p2 = 1;
        while (p2 * 2 <= L) p2 *= 2;
        L = p2;
    }
    TestResult r;
    r.test_name = "spectral_dft";
    add_param(r, "n", n);
    add_param(r, "analyzed_bits", L);

    const double T = std::sqrt(static_cast<double>(L) * std::log(1.0 / 0.05));
    const double N0 = 0.95 * static_cast<double>(L) / 2.0;
    const std::uint64_t N1 = count_moduli_below(seq.data(), L, T);
    const double d = (static_cast<double>(N1) - N0) /
                     std::sqrt(static_cast<double>(L) * 0.95 * 0.05 / 4.0);
    r.statistics.emplace_back("T", T);
    r.statistics.emplace_back("N1", static_cast<double>(N1));
    r.statistics.emplace_back("d", d);
    r.p_values.push_back({"p", erfc(std::fabs(d) / std::sqrt(2.0))});
    finish(r, cfg.alpha);
    return r;
}

// ------------------------------------------------- non-overlapping templates

namespace {

bool is_aperiodic(std::uint32_t value, int m) {
    for (int s = 1; s < m; ++s) {
        // Does the template match itself shifted by s?
        bool match = true;
        for (int j = 0; j + s < m; ++j) {
            const int b1 = (value >> (m - 1 - j)) & 1;
            const int b2 = (value >> (m - 1 - j - s)) & 1;
            if (b1 != b2) {
                match = false;
                break;
            }
        }
        if (match) return false;
    }
    return true;
}

std::string template_bits_string(std::uint32_t value, int m) {
    std::string s(static_cast<std::size_t>(m), '0');
    for (int j = 0; j < m; ++j)
        if ((value >> (m - 1 - j)) & 1) s[static_cast<std::size_t>(j)] = '1';
    return s;
}

} // namespace

std::vector<std::uint32_t> aperiodic_templates(int m);

std::vector<std::uint32_t> aperiodic_templates(int m) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < (1u << m); ++v)
        if (is_aperiodic(v, m)) out.push_back(v);
    return out;
}

TestResult non_overlapping_template(const BitSequence& seq, const SuiteConfig& cfg) {
    const int m = cfg.template_m;
    const std::uint64_t n = seq.bit_len();
    const std::uint64_t N = 8;
    const std::uint64_t M = n / N;
    // The per-block count is approximately normal only when the expected
    // occurrences per block (M-m+1)/2^m reach ~2; below that the test is
    // meaningless and marked not applicable.
    const std::uint64_t min_M = 2 * (1ull << m) + static_cast<std::uint64_t>(m) - 1;
    if (M < min_M)
        return not_applicable_result("non_overlapping_template",
                                     "needs at least " + std::to_string(N * min_M) +
                                         " bits at m = " + std::to_string(m));
    TestResult r;
    r.test_name = "non_overlapping_template";
    add_param(r, "n", n);
    add_param(r, "m", static_cast<std::uint64_t>(m));
    add_param(r, "N", N);
    add_param(r, "M", M);

    const auto templates = aperiodic_templates(m);
    const std::uint32_t win_mask = (1u << m) - 1;
    const double mu = static_cast<double>(M - static_cast<std::uint64_t>(m) + 1) /
                      std::pow(2.0, m);
    const double var = static_cast<double>(M) *
                       (std::pow(2.0, -m) - (2.0 * m - 1.0) * std::pow(2.0, -2 * m));

    // One rolling-window pass per block counts greedy non-overlapping matches
    // for every template value at once.
    const std::size_t tspace = 1u << m;
    std::vector<std::uint64_t> W(static_cast<std::size_t>(N) * tspace, 0);
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < static_cast<long long>(N); ++b) {
        std::uint64_t* Wb = W.data() + static_cast<std::size_t>(b) * tspace;
        std::vector<std::uint64_t> next_allowed(tspace, 0);
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * M;
        const std::uint64_t hi = lo + M;
        std::uint32_t w = 0;
        for (std::uint64_t i = lo; i < lo + static_cast<std::uint64_t>(m) - 1; ++i)
            w = (w << 1) | static_cast<std::uint32_t>(bit_at(seq.data(), i));
        for (std::uint64_t pos = lo; pos + m <= hi; ++pos) {
            w = ((w << 1) | static_cast<std::uint32_t>(
                                bit_at(seq.data(), pos + static_cast<std::uint64_t>(m) - 1))) &
                win_mask;
            if (pos >= next_allowed[w]) {
                ++Wb[w];
                next_allowed[w] = pos + static_cast<std::uint64_t>(m);
            }
        }
    }

    double min_p = 2.0;
    std::uint32_t min_tmpl = 0;
    for (const std::uint32_t t : templates) {
        double chi2 = 0.0;
        for (std::uint64_t b = 0; b < N; ++b) {
            const double diff =
                static_cast<double>(W[static_cast<std::size_t>(b) * tspace + t]) - mu;
            chi2 += diff * diff / var;
        }
        const double p = igamc(static_cast<double>(N) / 2.0, chi2 / 2.0);
        r.statistics.emplace_back("p[" + template_bits_string(t, m) + "]", p);
        if (p < min_p) {
            min_p = p;
            min_tmpl = t;
        }
    }
    add_param(r, "templates", static_cast<std::uint64_t>(templates.size()));
    r.p_values.push_back(
        {"min over templates (template=" + template_bits_string(min_tmpl, m) + ")", min_p});
    finish(r, cfg.alpha);
    return r;
}

// ---------------------------------------------------- overlapping template

TestResult overlapping_template(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    if (n < 1'000'000)
        return not_applicable_result("overlapping_template", "needs at least 1000000 bits");
    const int m = 9; // all-ones template, fixed by the standard's constants
    const std::uint64_t M = 1032;
    const std::uint64_t N = n / M;
    const int K = 5;
    // Category probabilities for m=9, M=1032 (lambda=2, eta=1).
    static const double pi[6] = {0.364091, 0.185659, 0.139381, 0.100571, 0.0704323, 0.139865};

    TestResult r;
    r.test_name = "overlapping_template";
    add_param(r, "n", n);
    add_param(r, "m", static_cast<std::uint64_t>(m));
    add_param(r, "M", M);
    add_param(r, "N", N);

    const std::uint8_t* d = seq.data();
    std::vector<std::uint64_t> nu(6, 0);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(6, 0);
#pragma omp for schedule(static) nowait
        for (long long b = 0; b < static_cast<long long>(N); ++b) {
            const std::uint64_t lo = static_cast<std::uint64_t>(b) * M;
            int run = 0;
            std::uint64_t count = 0;
            // Bytewise: a window of m ones ends at every position where the
            // current ones-run reaches m.
            std::uint64_t i = lo;
            while (i < lo + M) {
                if ((i & 7) == 0 && i + 8 <= lo + M) {
                    const std::uint8_t v = d[i >> 3];
                    if (v == 0xFF) {
                        for (int k = 0; k < 8; ++k)
                            if (++run >= m) ++count;
                    } else if (v == 0x00) {
                        run = 0;
                    } else {
                        for (int k = 7; k >= 0; --k) {
                            if ((v >> k) & 1) {
                                if (++run >= m) ++count;
                            } else {
                                run = 0;
                            }
                        }
                    }
                    i += 8;
                    continue;
                }
                if (bit_at(d, i)) {
                    if (++run >= m) ++count;
                } else {
                    run = 0;
                }
                ++i;
            }
            ++local[static_cast<std::size_t>(std::min<std::uint64_t>(count, 5))];
        }
#pragma omp critical
        for (std::size_t i = 0; i < 6; ++i) nu[i] += local[i];
    }

    double chi2 = 0.0;
    for (int i = 0; i <= K; ++i) {
        const double e = static_cast<double>(N) * pi[i];
        const double diff = static_cast<double>(nu[static_cast<std::size_t>(i)]) - e;
        chi2 += diff * diff / e;
    }
    r.statistics.emplace_back("chi2", chi2);
    r.p_values.push_back({"p", igamc(K / 2.0, chi2 / 2.0)});
    finish(r, cfg.alpha);
    return r;
}

// ------------------------------------------------------ Maurer universal

TestResult maurers_universal(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    if (n < 387840)
        return not_applicable_result("maurers_universal", "needs at least 387840 bits");
    int L = 6;
    if (n >= 904960) L = 7;
    if (n >= 2068480) L = 8;
    if (n >= 4654080) L = 9;
    if (n >= 10342400) L = 10;
    if (n >= 22753280) L = 11;
    if (n >= 49643520) L = 12;
    if (n >= 107560960) L = 13;
    if (n >= 231669760) L = 14;
    if (n >= 496435200) L = 15;
    if (n >= 1059061760) L = 16;
    static const double expected[17] = {0, 0, 0, 0, 0, 0,
                                        5.2177052, 6.1962507, 7.1836656, 8.1764248, 9.1723243,
                                        10.170032, 11.168765, 12.168070, 13.167693, 14.167488,
                                        15.167379};
    static const double variance[17] = {0, 0, 0, 0, 0, 0,
                                        2.954, 3.125, 3.238, 3.311, 3.356, 3.384, 3.401,
                                        3.410, 3.416, 3.419, 3.421};
    const std::uint64_t Q = 10ull << L;
    const std::uint64_t blocks = n / static_cast<std::uint64_t>(L);
    const std::uint64_t K = blocks - Q;

    TestResult r;
    r.test_name = "maurers_universal";
    add_param(r, "n", n);
    add_param(r, "L", static_cast<std::uint64_t>(L));
    add_param(r, "Q", Q);
    add_param(r, "K", K);

    std::vector<std::uint64_t> table(1ull << L, 0);
    const std::uint8_t* d = seq.data();
    std::uint64_t bitpos = 0;
    const std::uint32_t mask = static_cast<std::uint32_t>((1ull << L) - 1);
    auto next_block = [&]() {
        std::uint32_t v = 0;
        for (int j = 0; j < L; ++j) v = (v << 1) | static_cast<std::uint32_t>(bit_at(d, bitpos++));
        return v & mask;
    };
    for (std::uint64_t i = 1; i <= Q; ++i) table[next_block()] = i;
    double sum = 0.0;
    for (std::uint64_t i = Q + 1; i <= Q + K; ++i) {
        const std::uint32_t v = next_block();
        sum += std::log2(static_cast<double>(i - table[v]));
        table[v] = i;
    }
    const double fn = sum / static_cast<double>(K);
    const double c = 0.7 - 0.8 / L +
                     (4.0 + 32.0 / L) * std::pow(static_cast<double>(K), -3.0 / L) / 15.0;
    const double sigma = c * std::sqrt(variance[L] / static_cast<double>(K));
    const double p = erfc(std::fabs(fn - expected[L]) / (std::sqrt(2.0) * sigma));
    r.statistics.emplace_back("fn", fn);
    r.statistics.emplace_back("expected", expected[L]);
    r.statistics.emplace_back("sigma", sigma);
    r.p_values.push_back({"p", p});
    finish(r, cfg.alpha);
    return r;
}

// ----------------------------------------------------- linear complexity

TestResult linear_complexity(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    if (n < 1'000'000)
        return not_applicable_result("linear_complexity", "needs at least 1000000 bits");
    const int M = cfg.linear_complexity_m;
    const std::uint64_t N = n / static_cast<std::uint64_t>(M);
    const int K = 6;
    static const double pi[7] = {0.010417, 0.03125, 0.12500, 0.50000, 0.25000, 0.06250, 0.020833};

    TestResult r;
    r.test_name = "linear_complexity";
    add_param(r, "n", n);
    add_param(r, "M", static_cast<std::uint64_t>(M));
    add_param(r, "N", N);

    // mu = M/2 + (9 + (-1)^(M+1))/36 - (M/3 + 2/9)/2^M
    const double sign_mu = (M % 2 == 0) ? -1.0 : 1.0; // (-1)^(M+1)
    const double mu = M / 2.0 + (9.0 + sign_mu) / 36.0 -
                      (M / 3.0 + 2.0 / 9.0) / std::pow(2.0, M);
    const double sign_t = (M % 2 == 0) ? 1.0 : -1.0; // (-1)^M

    std::vector<std::uint64_t> nu(7, 0);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(7, 0);
#pragma omp for schedule(static) nowait
        for (long long b = 0; b < static_cast<long long>(N); ++b) {
            const std::uint64_t off = static_cast<std::uint64_t>(b) * static_cast<std::uint64_t>(M);
            const int Lc = berlekamp_massey_packed(seq.data(), off, M);
            const double T = sign_t * (static_cast<double>(Lc) - mu) + 2.0 / 9.0;
            int k;
            if (T <= -2.5)
                k = 0;
            else if (T <= -1.5)
                k = 1;
            else if (T <= -0.5)
                k = 2;
            else if (T <= 0.5)
                k = 3;
            else if (T <= 1.5)
                k = 4;
            else if (T <= 2.5)
                k = 5;
            else
                k = 6;
            ++local[static_cast<std::size_t>(k)];
        }
#pragma omp critical
        for (std::size_t i = 0; i < 7; ++i) nu[i] += local[i];
    }

    double chi2 = 0.0;
    for (int i = 0; i <= K; ++i) {
        const double e = static_cast<double>(N) * pi[i];
        const double diff = static_cast<double>(nu[static_cast<std::size_t>(i)]) - e;
        chi2 += diff * diff / e;
    }
    r.statistics.emplace_back("mu", mu);
    r.statistics.emplace_back("chi2", chi2);
    r.p_values.push_back({"p", igamc(K / 2.0, chi2 / 2.0)});
    finish(r, cfg.alpha);
    return r;
}

// ---------------------------------------------------------------- serial

namespace {

// Counts of all overlapping m-bit windows over the cyclic sequence.
std::vector<std::uint64_t> cyclic_window_counts(const BitSequence& seq, int m) {
    const std::uint64_t n = seq.bit_len();
    const std::uint8_t* d = seq.data();
    const std::size_t space = 1ull << m;
    const std::uint32_t mask = static_cast<std::uint32_t>(space - 1);
    std::vector<std::uint64_t> counts(space, 0);

    const int threads = omp_get_max_threads();
    const std::uint64_t chunk = std::max<std::uint64_t>(1ull << 22, (n + threads - 1) / threads);
    const std::uint64_t nchunks = (n + chunk - 1) / chunk;
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(space, 0);
#pragma omp for schedule(static) nowait
        for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
            const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
            const std::uint64_t hi = std::min(n, lo + chunk);
            std::uint32_t w = 0;
            for (std::uint64_t j = lo; j < lo + static_cast<std::uint64_t>(m) - 1; ++j)
                w = (w << 1) | static_cast<std::uint32_t>(bit_at(d, j % n));
            for (std::uint64_t i = lo; i < hi; ++i) {
                const std::uint64_t tail = i + static_cast<std::uint64_t>(m) - 1;
                w = ((w << 1) |
                     static_cast<std::uint32_t>(bit_at(d, tail >= n ? tail - n : tail))) &
                    mask;
                ++local[w];
            }
        }
#pragma omp critical
        for (std::size_t i = 0; i < space; ++i) counts[i] += local[i];
    }
    return counts;
}

double psi_sq_from_counts(const std::vector<std::uint64_t>& counts, std::uint64_t n, int m) {
    long double acc = 0.0L;
    for (const std::uint64_t c : counts) acc += static_cast<long double>(c) * c;
    return static_cast<double>(std::pow(2.0L, m) / static_cast<long double>(n) * acc -
                               static_cast<long double>(n));
}

// Marginalize the last window bit: nu_{m-1}(w) = nu_m(w0) + nu_m(w1).
std::vector<std::uint64_t> marginalize(const std::vector<std::uint64_t>& counts) {
    std::vector<std::uint64_t> out(counts.size() / 2, 0);
    for (std::size_t w = 0; w < out.size(); ++w) out[w] = counts[2 * w] + counts[2 * w + 1];
    return out;
}

} // namespace

TestResult serial(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    const int m = cfg.serial_m;
    if (n < (1ull << m))
        return not_applicable_result("serial", "needs at least 2^m = " +
                                                   std::to_string(1ull << m) + " bits at m = " +
                                                   std::to_string(m));
    TestResult r;
    r.test_name = "serial";
    add_param(r, "n", n);
    add_param(r, "m", static_cast<std::uint64_t>(m));

    const auto counts_m = cyclic_window_counts(seq, m);
    const auto counts_m1 = marginalize(counts_m);
    const double psi_m = psi_sq_from_counts(counts_m, n, m);
    const double psi_m1 = m >= 1 ? psi_sq_from_counts(counts_m1, n, m - 1) : 0.0;
    double psi_m2 = 0.0;
    if (m >= 2) {
        const auto counts_m2 = marginalize(counts_m1);
        psi_m2 = psi_sq_from_counts(counts_m2, n, m - 2);
    }
    const double d1 = psi_m - psi_m1;
    const double d2 = psi_m - 2.0 * psi_m1 + psi_m2;
    r.statistics.emplace_back("psi2_m", psi_m);
    r.statistics.emplace_back("del1", d1);
    r.statistics.emplace_back("del2", d2);
    r.p_values.push_back({"p1", igamc(std::pow(2.0, m - 2), std::max(0.0, d1) / 2.0)});
    r.p_values.push_back({"p2", igamc(std::pow(2.0, m - 3), std::max(0.0, d2) / 2.0)});
    finish(r, cfg.alpha);
    return r;
}

// --------------------------------------------------- approximate entropy

TestResult approximate_entropy(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    const int m = cfg.approximate_entropy_m;
    if (n < (1ull << m))
        return not_applicable_result("approximate_entropy",
                                     "needs at least 2^m = " + std::to_string(1ull << m) +
                                         " bits at m = " + std::to_string(m));
    TestResult r;
    r.test_name = "approximate_entropy";
    add_param(r, "n", n);
    add_param(r, "m", static_cast<std::uint64_t>(m));

    auto phi = [&](int mm) {
        if (mm == 0) return 0.0;
        const auto counts = cyclic_window_counts(seq, mm);
        long double acc = 0.0L;
        for (const std::uint64_t c : counts) {
            if (c == 0) continue;
            const long double f = static_cast<long double>(c) / static_cast<long double>(n);
            acc += f * std::log(static_cast<double>(f));
        }
        return static_cast<double>(acc);
    };
    const double apen = phi(m) - phi(m + 1);
    const double chi2 = 2.0 * static_cast<double>(n) * (std::numbers::ln2 - apen);
    r.statistics.emplace_back("apen", apen);
    r.statistics.emplace_back("chi2", chi2);
    r.p_values.push_back({"p", igamc(std::pow(2.0, m - 1), std::max(0.0, chi2) / 2.0)});
    finish(r, cfg.alpha);
    return r;
}

// -------------------------------------------------------- cumulative sums

namespace {

double cusum_p_value(std::uint64_t n, std::uint64_t z) {
    const double zn = std::sqrt(static_cast<double>(n));
    const double zd = static_cast<double>(z);
    auto floor_div = [](double a, double b) { return std::floor(a / b); };
    const double nr = static_cast<double>(n);

    // Terms vanish once the CDF arguments leave [-10, 10]; clamping the k
    // range keeps the series short even when z is tiny relative to n.
    const double k_abs = (10.0 * zn / zd + 3.0) / 4.0 + 1.0;

    double sum1 = 0.0;
    {
        const long long lo = static_cast<long long>(
            std::max(floor_div(-nr / zd + 1.0, 4.0), -k_abs));
        const long long hi =
            static_cast<long long>(std::min(floor_div(nr / zd - 1.0, 4.0), k_abs));
        for (long long k = lo; k <= hi; ++k) {
            const double a = (4.0 * k + 1.0) * zd / zn;
            const double b = (4.0 * k - 1.0) * zd / zn;
            sum1 += normal_cdf(a) - normal_cdf(b);
        }
    }
    double sum2 = 0.0;
    {
        const long long lo = static_cast<long long>(
            std::max(floor_div(-nr / zd - 3.0, 4.0), -k_abs));
        const long long hi =
            static_cast<long long>(std::min(floor_div(nr / zd - 1.0, 4.0), k_abs));
        for (long long k = lo; k <= hi; ++k) {
            const double a = (4.0 * k + 3.0) * zd / zn;
            const double b = (4.0 * k + 1.0) * zd / zn;
            sum2 += normal_cdf(a) - normal_cdf(b);
        }
    }
    return clamp_probability(1.0 - sum1 + sum2);
}

} // namespace

TestResult cumulative_sums(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    if (n < 2) return not_applicable_result("cumulative_sums", "needs at least 2 bits");
    TestResult r;
    r.test_name = "cumulative_sums";
    add_param(r, "n", n);

    const std::uint8_t* d = seq.data();
    const std::uint64_t chunk = 1ull << 24;
    const std::uint64_t nchunks = (n + chunk - 1) / chunk;

    // Chunk offsets from popcounts, then per-chunk extrema of the walk.
    std::vector<std::int64_t> chunk_sum(nchunks);
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
        const std::uint64_t hi = std::min(n, lo + chunk);
        const std::uint64_t ones = popcount_range(d, lo, hi);
        chunk_sum[static_cast<std::size_t>(c)] =
            2 * static_cast<std::int64_t>(ones) - static_cast<std::int64_t>(hi - lo);
    }
    std::vector<std::int64_t> offset(nchunks, 0);
    for (std::size_t c = 1; c < nchunks; ++c) offset[c] = offset[c - 1] + chunk_sum[c - 1];

    // Extrema of S_k over k in [1, n] and over k in [1, n-1].
    std::int64_t max_all = std::numeric_limits<std::int64_t>::min();
    std::int64_t min_all = std::numeric_limits<std::int64_t>::max();
    std::int64_t max_head = std::numeric_limits<std::int64_t>::min(); // k <= n-1
    std::int64_t min_head = std::numeric_limits<std::int64_t>::max();
#pragma omp parallel for schedule(static) \
    reduction(max : max_all, max_head) reduction(min : min_all, min_head)
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
        const std::uint64_t hi = std::min(n, lo + chunk);
        std::int64_t s = offset[static_cast<std::size_t>(c)];
        for (std::uint64_t i = lo; i < hi; ++i) {
            s += bit_at(d, i) ? 1 : -1;
            max_all = std::max(max_all, s);
            min_all = std::min(min_all, s);
            if (i != n - 1) {
                max_head = std::max(max_head, s);
                min_head = std::min(min_head, s);
            }
        }
    }
    const std::int64_t s_n = offset[nchunks - 1] + chunk_sum[nchunks - 1];
    const std::uint64_t z_fwd =
        static_cast<std::uint64_t>(std::max(std::llabs(max_all), std::llabs(min_all)));
    // Backward mode: max over k in [0, n-1] of |S_n - S_k|; S_0 = 0.
    std::int64_t hi0 = std::max<std::int64_t>(0, n >= 2 ? max_head : 0);
    std::int64_t lo0 = std::min<std::int64_t>(0, n >= 2 ? min_head : 0);
    const std::uint64_t z_bwd = static_cast<std::uint64_t>(
        std::max(std::llabs(s_n - hi0), std::llabs(s_n - lo0)));

    r.statistics.emplace_back("z_forward", static_cast<double>(z_fwd));
    r.statistics.emplace_back("z_backward", static_cast<double>(z_bwd));
    r.p_values.push_back({"forward", z_fwd ? cusum_p_value(n, z_fwd) : 1.0});
    r.p_values.push_back({"backward", z_bwd ? cusum_p_value(n, z_bwd) : 1.0});
    finish(r, cfg.alpha);
    return r;
}

// ------------------------------------------------------ random excursions

namespace {

// Shared walk pass: per-cycle visit tallies for |x| <= 4, total visits for
// |x| <= 9, and the cycle count J.
struct WalkStats {
    std::uint64_t J = 0;
    // nu[k][xi]: cycles in which state x was visited exactly k times (k
    // capped at 5); xi indexes -4..-1,1..4 as 0..7.
    std::array<std::array<std::uint64_t, 8>, 6> nu{};
    std::array<std::uint64_t, 18> xi{}; // total visits, -9..-1,1..9 as 0..17
};

inline int state_index_4(std::int64_t s) { return s < 0 ? static_cast<int>(s + 4) : static_cast<int>(s + 3); }
inline int state_index_9(std::int64_t s) { return s < 0 ? static_cast<int>(s + 9) : static_cast<int>(s + 8); }

WalkStats walk_statistics(const BitSequence& seq) {
    WalkStats w;
    std::array<std::uint64_t, 8> cycle_counts{};
    auto fold_cycle = [&] {
        for (int i = 0; i < 8; ++i) {
            const std::uint64_t c = std::min<std::uint64_t>(cycle_counts[static_cast<std::size_t>(i)], 5);
            ++w.nu[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            cycle_counts[static_cast<std::size_t>(i)] = 0;
        }
        ++w.J;
    };
    const std::uint8_t* d = seq.data();
    const std::uint64_t n = seq.bit_len();
    std::int64_t s = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        s += bit_at(d, i) ? 1 : -1;
        if (s == 0) {
            fold_cycle();
        } else {
            if (s >= -4 && s <= 4) ++cycle_counts[static_cast<std::size_t>(state_index_4(s))];
            if (s >= -9 && s <= 9) ++w.xi[static_cast<std::size_t>(state_index_9(s))];
        }
    }
    if (s != 0) fold_cycle(); // trailing partial cycle
    return w;
}

double excursion_pi(int k, int x) {
    const double ax = std::abs(x);
    const double q = 1.0 - 1.0 / (2.0 * ax);
    if (k == 0) return q;
    if (k == 5) return (1.0 / (2.0 * ax)) * std::pow(q, 4);
    return (1.0 / (4.0 * ax * ax)) * std::pow(q, k - 1);
}

} // namespace

TestResult random_excursions(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    if (n < 2) return not_applicable_result("random_excursions", "needs at least 2 bits");
    const WalkStats w = walk_statistics(seq);
    TestResult r;
    r.test_name = "random_excursions";
    add_param(r, "n", n);
    add_param(r, "J", w.J);
    if (w.J < 500) {
        r.applicable = false;
        r.verdict = Verdict::not_applicable;
        r.note = "J = " + std::to_string(w.J) + " cycles, need at least 500";
        return r;
    }
    static const int states[8] = {-4, -3, -2, -1, 1, 2, 3, 4};
    for (int si = 0; si < 8; ++si) {
        const int x = states[si];
        double chi2 = 0.0;
        for (int k = 0; k <= 5; ++k) {
            const double e = static_cast<double>(w.J) * excursion_pi(k, x);
            const double diff =
                static_cast<double>(w.nu[static_cast<std::size_t>(k)][static_cast<std::size_t>(si)]) - e;
            chi2 += diff * diff / e;
        }
        r.p_values.push_back({"x = " + std::to_string(x), igamc(2.5, chi2 / 2.0)});
    }
    finish(r, cfg.alpha);
    return r;
}

TestResult random_excursions_variant(const BitSequence& seq, const SuiteConfig& cfg) {
    const std::uint64_t n = seq.bit_len();
    if (n < 2) return not_applicable_result("random_excursions_variant", "needs at least 2 bits");
    const WalkStats w = walk_statistics(seq);
    TestResult r;
    r.test_name = "random_excursions_variant";
    add_param(r, "n", n);
    add_param(r, "J", w.J);
    if (w.J < 500) {
        r.applicable = false;
        r.verdict = Verdict::not_applicable;
        r.note = "J = " + std::to_string(w.J) + " cycles, need at least 500";
        return r;
    }
    for (int x = -9; x <= 9; ++x) {
        if (x == 0) continue;
        const std::uint64_t visits = w.xi[static_cast<std::size_t>(state_index_9(x))];
        const double J = static_cast<double>(w.J);
        const double denom = std::sqrt(2.0 * J * (4.0 * std::abs(x) - 2.0));
        const double p = erfc(std::fabs(static_cast<double>(visits) - J) / denom);
        r.p_values.push_back({"x = " + std::to_string(x), p});
    }
    finish(r, cfg.alpha);
    return r;
}

// ----------------------------------------------------------------- runner

const std::vector<std::string>& suite_test_names() {
    static const std::vector<std::string> names = {
        "monobit",
        "block_frequency",
        "runs",
        "longest_run",
        "binary_matrix_rank",
        "spectral_dft",
        "non_overlapping_template",
        "overlapping_template",
        "maurers_universal",
        "linear_complexity",
        "serial",
        "approximate_entropy",
        "cumulative_sums",
        "random_excursions",
        "random_excursions_variant",
    };
    return names;
}

TestResult run_test(const std::string& name, const BitSequence& seq, const SuiteConfig& cfg) {
    cfg.validate();
    if (name == "monobit") return monobit(seq, cfg);
    if (name == "block_frequency") return block_frequency(seq, cfg);
    if (name == "runs") return runs(seq, cfg);
    if (name == "longest_run") return longest_run_in_block(seq, cfg);
    if (name == "binary_matrix_rank") return binary_matrix_rank(seq, cfg);
    if (name == "spectral_dft") return spectral_dft(seq, cfg);
    if (name == "non_overlapping_template") return non_overlapping_template(seq, cfg);
    if (name == "overlapping_template") return overlapping_template(seq, cfg);
    if (name == "maurers_universal") return maurers_universal(seq, cfg);
    if (name == "linear_complexity") return linear_complexity(seq, cfg);
    if (name == "serial") return serial(seq, cfg);
    if (name == "approximate_entropy") return approximate_entropy(seq, cfg);
    if (name == "cumulative_sums") return cumulative_sums(seq, cfg);
    if (name == "random_excursions") return random_excursions(seq, cfg);
    if (name == "random_excursions_variant") return random_excursions_variant(seq, cfg);
    throw Error("unknown test: " + name);
}

SuiteResult run_all(const BitSequence& seq, const SuiteConfig& cfg) {
    cfg.validate();
    if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
    SuiteResult out;
    for (const auto& name : suite_test_names()) out.tests.push_back(run_test(name, seq, cfg));
    bool any_fail = false, any_pass = false;
    for (const auto& t : out.tests) {
        if (!t.applicable) {
            out.any_not_applicable = true;
            continue;
        }
        if (t.verdict == Verdict::non_random) any_fail = true;
        if (t.verdict == Verdict::random) any_pass = true;
    }
    out.dataset_verdict = any_fail          ? Verdict::non_random
                          : any_pass        ? Verdict::random
                                            : Verdict::not_applicable;
    return out;
}

// ----------------------------------------------------------- row mapping

const std::vector<std::string>& table_row_labels() {
    static const std::vector<std::string> rows = [] {
        std::vector<std::string> r = {
            "Monobit",
            "frequency within block",
            "Runs",
            "Longest runs in a block",
            "binary matrix rank",
            "Spectral (dft)",
            "non overlapping template matching",
            "overlapping template matching",
            "maurers universal",
            "linear complexity",
            "Serial",
            "Approximate entropy",
            "cumulative sums",
        };
        for (int x = -4; x <= 4; ++x)
            if (x != 0) r.push_back("random excursion x = " + std::to_string(x));
        for (int x = -9; x <= 9; ++x)
            if (x != 0) r.push_back("random excursion variant x = " + std::to_string(x));
        return r;
    }();
    return rows;
}

std::vector<MatrixRow> expand_rows(const std::vector<TestResult>& tests) {
    std::vector<MatrixRow> rows;
    auto find = [&](const std::string& name) -> const TestResult* {
        for (const auto& t : tests)
            if (t.test_name == name) return &t;
        return nullptr;
    };
    static const std::vector<std::pair<std::string, std::string>> simple = {
        {"Monobit", "monobit"},
        {"frequency within block", "block_frequency"},
        {"Runs", "runs"},
        {"Longest runs in a block", "longest_run"},
        {"binary matrix rank", "binary_matrix_rank"},
        {"Spectral (dft)", "spectral_dft"},
        {"non overlapping template matching", "non_overlapping_template"},
        {"overlapping template matching", "overlapping_template"},
        {"maurers universal", "maurers_universal"},
        {"linear complexity", "linear_complexity"},
        {"Serial", "serial"},
        {"Approximate entropy", "approximate_entropy"},
        {"cumulative sums", "cumulative_sums"},
    };
    for (const auto& [label, name] : simple) {
        MatrixRow row;
        row.row_label = label;
        row.test_name = name;
        if (const TestResult* t = find(name)) {
            row.verdict = t->verdict;
            for (const auto& p : t->p_values) row.p_values.push_back(p.value);
        }
        rows.push_back(std::move(row));
    }
    for (const auto& [test, prefix] :
         std::vector<std::pair<std::string, std::string>>{
             {"random_excursions", "random excursion x = "},
             {"random_excursions_variant", "random excursion variant x = "}}) {
        const TestResult* t = find(test);
        const int lo = (test == "random_excursions") ? -4 : -9;
        const int hi = -lo;
        for (int x = lo; x <= hi; ++x) {
            if (x == 0) continue;
            MatrixRow row;
            row.row_label = prefix + std::to_string(x);
            row.test_name = test;
            if (t) {
                row.verdict = t->verdict;
                const std::string want = "x = " + std::to_string(x);
                for (const auto& p : t->p_values)
                    if (p.label == want) row.p_values.push_back(p.value);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// -------------------------------------------------------- serialization

std::string TestResult::to_json() const {
    ordered_json j;
    j["name"] = test_name;
    ordered_json params_j = ordered_json::object();
    for (const auto& [k, v] : params) params_j[k] = v;
    j["params"] = params_j;
    ordered_json ps = ordered_json::array();
    for (const auto& p : p_values) ps.push_back({{"label", p.label}, {"value", p.value}});
    j["p_values"] = ps;
    ordered_json stats = ordered_json::array();
    for (const auto& [k, v] : statistics) stats.push_back({{"label", k}, {"value", v}});
    j["statistics"] = stats;
    j["applicable"] = applicable;
    j["verdict"] = qaudit::to_string(verdict);
    j["note"] = note;
    return j.dump(2) + "\n";
}

TestResult TestResult::from_json(const std::string& text) {
    TestResult r;
    try {
        const auto j = ordered_json::parse(text);
        r.test_name = j.at("name").get<std::string>();
        for (const auto& [k, v] : j.at("params").items())
            r.params.emplace_back(k, v.get<std::string>());
        for (const auto& p : j.at("p_values"))
            r.p_values.push_back({p.at("label").get<std::string>(), p.at("value").get<double>()});
        for (const auto& s : j.at("statistics"))
            r.statistics.emplace_back(s.at("label").get<std::string>(), s.at("value").get<double>());
        r.applicable = j.at("applicable").get<bool>();
        r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
        r.note = j.value("note", "");
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad test result json: ") + e.what());
    }
    return r;
}

} // namespace qaudit
