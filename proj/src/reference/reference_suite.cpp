#include "reference_suite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "qaudit/errors.hpp"

namespace qaudit::ref {

namespace {

double r_erfc(double x) { return boost::math::erfc(x); }

double r_igamc(double a, double x) {
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(a, x);
}

double r_normal_cdf(double x) { return 0.5 * boost::math::erfc(-x / std::sqrt(2.0)); }

RefResult na() { return RefResult{}; }

} // namespace

std::vector<std::uint8_t> unpack(const BitSequence& seq) {
    std::vector<std::uint8_t> b(seq.bit_len());
    for (std::uint64_t i = 0; i < seq.bit_len(); ++i) b[i] = static_cast<std::uint8_t>(seq.bit(i));
    return b;
}

RefResult monobit(const std::vector<std::uint8_t>& b) {
    if (b.empty()) return na();
    double sum = 0;
    for (const auto bit : b) sum += bit ? 1.0 : -1.0;
    RefResult r;
    r.applicable = true;
    r.p_values.emplace_back("p", r_erfc(std::fabs(sum) / std::sqrt(double(b.size())) / std::sqrt(2.0)));
    return r;
}

RefResult block_frequency(const std::vector<std::uint8_t>& b, std::uint64_t M) {
    const std::uint64_t N = M ? b.size() / M : 0;
    if (N < 1) return na();
    double chi2 = 0;
    for (std::uint64_t j = 0; j < N; ++j) {
        double ones = 0;
        for (std::uint64_t i = 0; i < M; ++i) ones += b[j * M + i];
        const double pi = ones / double(M);
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * double(M);
    RefResult r;
    r.applicable = true;
    r.p_values.emplace_back("p", r_igamc(double(N) / 2.0, chi2 / 2.0));
    return r;
}

RefResult runs(const std::vector<std::uint8_t>& b) {
    const std::size_t n = b.size();
    if (n < 2) return na();
    double ones = 0;
    for (const auto bit : b) ones += bit;
    const double pi = ones / double(n);
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(double(n))) return na();
    double V = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) V += b[k] != b[k + 1];
    const double prod = pi * (1 - pi);
    RefResult r;
    r.applicable = true;
    r.p_values.emplace_back(
        "p", r_erfc(std::fabs(V - 2.0 * n * prod) / (2.0 * std::sqrt(2.0 * n) * prod)));
    return r;
}

RefResult longest_run_in_block(const std::vector<std::uint8_t>& b) {
    const std::size_t n = b.size();
    if (n < 128) return na();
    std::size_t M;
    std::vector<double> pi;
    std::vector<int> lo;
    if (n < 6272) {
        M = 8;
        pi = {0.21484375, 0.3671875, 0.23046875, 0.1875};
        lo = {0, 2, 3, 4};
    } else if (n < 750000) {
        M = 128;
        pi = {0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847};
        lo = {0, 5, 6, 7, 8, 9};
    } else {
        M = 10000;
        pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
        lo = {0, 11, 12, 13, 14, 15, 16};
    }
    const std::size_t N = n / M;
    std::vector<double> nu(pi.size(), 0.0);
    for (std::size_t blk = 0; blk < N; ++blk) {
        int best = 0, run = 0;
        for (std::size_t i = 0; i < M; ++i) {
            if (b[blk * M + i]) {
                ++run;
                best = std::max(best, run);
            } else {
                run = 0;
            }
        }
        std::size_t k = 0;
        while (k + 1 < pi.size() && best >= lo[k + 1]) ++k;
        nu[k] += 1;
    }
    double chi2 = 0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        const double e = double(N) * pi[i];
        chi2 += (nu[i] - e) * (nu[i] - e) / e;
    }
    RefResult r;
    r.applicable = true;
    r.p_values.emplace_back("p", r_igamc(double(pi.size() - 1) / 2.0, chi2 / 2.0));
    return r;
}

int gf2_rank_naive(std::vector<std::vector<int>> m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r2 = 0; r2 < rows; ++r2) {
            if (r2 != rank && m[r2][c]) {
                for (std::size_t cc = 0; cc < cols; ++cc) m[r2][cc] ^= m[rank][cc];
            }
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

RefResult binary_matrix_rank(const std::vector<std::uint8_t>& b) {
    const std::size_t N = b.size() / 1024;
    if (N < 38) return na();
    double f32 = 0, f31 = 0;
    for (std::size_t k = 0; k < N; ++k) {
        std::vector<std::vector<int>> m(32, std::vector<int>(32));
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) m[i][j] = b[k * 1024 + std::size_t(i) * 32 + std::size_t(j)];
        const int rank = gf2_rank_naive(std::move(m));
        if (rank == 32)
            ++f32;
        else if (rank == 31)
            ++f31;
    }
    const double f30 = double(N) - f32 - f31;
    const double p32 = 0.2888, p31 = 0.5776, p30 = 0.1336;
    const double Nd = double(N);
    const double chi2 = (f32 - Nd * p32) * (f32 - Nd * p32) / (Nd * p32) +
                        (f31 - Nd * p31) * (f31 - Nd * p31) / (Nd * p31) +
                        (f30 - Nd * p30) * (f30 - Nd * p30) / (Nd * p30);
    RefResult r;
    r.applicable = true;
    r.p_values.emplace_back("p", r_igamc(1.0, chi2 / 2.0));
    return r;
}

namespace {

// Textbook recursive Cooley-Tukey, power-of-two lengths.
void fft_recursive(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    std::vector<std::complex<double>> even(n / 2), odd(n / 2);
    for (std::size_t i = 0; i < n / 2; ++i) {
        even[i] = a[2 * i];
        odd[i] = a[2 * i + 1];
    }
    fft_recursive(even);
    fft_recursive(odd);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const auto t = std::polar(1.0, -2.0 * std::numbers::pi * double(k) / double(n)) * odd[k];
        a[k] = even[k] + t;
        a[k + n / 2] = even[k] - t;
    }
}

std::vector<std::complex<double>> dft_reference(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    if ((n & (n - 1)) == 0) {
        auto a = x;
        fft_recursive(a);
        return a;
    }
    // Bluestein on top of the recursive transform.
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    std::vector<std::complex<double>> a(m), bb(m);
    const std::uint64_t mod = 2 * n;
    for (std::size_t k = 0; k < n; ++k) {
        const double ang = std::numbers::pi * double((std::uint64_t(k) * k) % mod) / double(n);
        a[k] = x[k] * std::polar(1.0, -ang);
        bb[k] = std::polar(1.0, ang);
        if (k) bb[m - k] = std::polar(1.0, ang);
    }
    fft_recursive(a);
    fft_recursive(bb);
    for (std::size_t i = 0; i < m; ++i) a[i] *= bb[i];
    // Inverse via conjugation.
    for (auto& v : a) v = std::conj(v);
    fft_recursive(a);
    for (auto& v : a) v = std::conj(v) / double(m);
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double ang = std::numbers::pi * double((std::uint64_t(k) * k) % mod) / double(n);
        out[k] = a[k] * std::polar(1.0, -ang);
    }
    return out;
}

} // namespace

std::vector<double> dft_moduli_direct(const std::vector<double>& x, std::size_t m) {
    std::vector<double> out;
    for (std::size_t f = 0; f < m; ++f) {
        std::complex<double> s{0, 0};
        for (std::size_t k = 0; k < x.size(); ++k)
            s += x[k] * std::polar(1.0, -2.0 * std::numbers::pi * double(f) * double(k) / double(x.size()));
        out.push_back(std::abs(s));
    }
    return out;
}

RefResult spectral_dft(const std::vector<std::uint8_t>& b, std::uint64_t cap, std::uint64_t exact_max) {
    const std::uint64_t n = b.size();
    if (n < 8) return na();
    std::uint64_t L = std::min<std::uint64_t>(n & ~1ull, cap);
    if (L > exact_max) {
        std::uint64_t p2 = 1;
        while (p2 * 2 <= L) p2 *= 2;
        L = p2;
    }
    std::vector<std::complex<double>> x(L);
    for (std::uint64_t i = 0; i < L; ++i) x[i] = {b[i] ? 1.0 : -1.0, 0.0};
    const auto S = dft_reference(x);
    const double T = std::sqrt(double(L) * std::log(1.0 / 0.05));
    double N1 = 0;
    for (std::uint64_t f = 0; f < L / 2; ++f)
        if (std::abs(S[f]) < T) ++N1;
    const double N0 = 0.95 * double(L) / 2.0;
    const double d = (N1 - N0) / std::sqrt(double(L) * 0.95 * 0.05 / 4.0);
    RefResult r;
    r.applicable = true;
    r.statistics.emplace_back("N1", N1);
    r.p_values.emplace_back("p", r_erfc(std::fabs(d) / std::sqrt(2.0)));
    return r;
}

namespace {

bool ref_aperiodic(const std::vector<int>& t) {
    const int m = static_cast<int>(t.size());
    for (int s = 1; s < m; ++s) {
        bool overlap = true;
        for (int j = 0; j + s < m; ++j)
            if (t[std::size_t(j)] != t[std::size_t(j + s)]) {
                overlap = false;
                break;
            }
        if (overlap) return false;
    }
    return true;
}

} // namespace

RefResult non_overlapping_template(const std::vector<std::uint8_t>& b, int m) {
    const std::uint64_t n = b.size();
    const std::uint64_t N = 8;
    const std::uint64_t M = n / N;
    if (M < 2 * (1ull << m) + std::uint64_t(m) - 1) return na();
    const double mu = double(M - std::uint64_t(m) + 1) / std::pow(2.0, m);
    const double var = double(M) * (std::pow(2.0, -m) - double(2 * m - 1) * std::pow(2.0, -2 * m));
    RefResult r;
    r.applicable = true;
    double min_p = 2.0;
    for (std::uint32_t v = 0; v < (1u << m); ++v) {
        std::vector<int> tmpl(static_cast<std::size_t>(m), 0);
        std::string name(std::size_t(m), '0');
        for (int j = 0; j < m; ++j) {
            tmpl[std::size_t(j)] = (v >> (m - 1 - j)) & 1;
            if (tmpl[std::size_t(j)]) name[std::size_t(j)] = '1';
        }
        if (!ref_aperiodic(tmpl)) continue;
        double chi2 = 0;
        for (std::uint64_t blk = 0; blk < N; ++blk) {
            double W = 0;
            std::uint64_t pos = blk * M;
            while (pos + std::uint64_t(m) <= (blk + 1) * M) {
                bool match = true;
                for (int j = 0; j < m; ++j)
                    if (b[pos + std::uint64_t(j)] != tmpl[std::size_t(j)]) {
                        match = false;
                        break;
                    }
                if (match) {
                    ++W;
                    pos += std::uint64_t(m);
                } else {
                    ++pos;
                }
            }
            chi2 += (W - mu) * (W - mu) / var;
        }
        const double p = r_igamc(double(N) / 2.0, chi2 / 2.0);
        r.statistics.emplace_back("p[" + name + "]", p);
        min_p = std::min(min_p, p);
    }
    r.p_values.emplace_back("min", min_p);
    return r;
}

RefResult overlapping_template(const std::vector<std::uint8_t>& b) {
    const std::uint64_t n = b.size();
    if (n < 1'000'000) return na();
    const int m = 9;
    const std::uint64_t M = 1032;
    const std::uint64_t N = n / M;
    static const double pi[6] = {0.364091, 0.185659, 0.139381, 0.100571, 0.0704323, 0.139865};
    std::vector<double> nu(6, 0.0);
    for (std::uint64_t blk = 0; blk < N; ++blk) {
        std::uint64_t count = 0;
        for (std::uint64_t pos = blk * M; pos + std::uint64_t(m) <= (blk + 1) * M; ++pos) {
            bool match = true;
            for (int j = 0; j < m; ++j)
                if (!b[pos + std::uint64_t(j)]) {
                    match = false;
                    break;
                }
            if (match) ++count;
        }
        nu[std::size_t(std::min<std::uint64_t>(count, 5))] += 1;
    }
    double chi2 = 0;
    for (int i = 0; i < 6; ++i) {
        const double e = double(N) * pi[i];
        chi2 += (nu[std::size_t(i)] - e) * (nu[std::size_t(i)] - e) / e;
    }
    RefResult r;
    r.applicable = true;
    r.p_values.emplace_back("p", r_igamc(2.5, chi2 / 2.0));
    return r;
}

RefResult maurers_universal(const std::vector<std::uint8_t>& b) {
    const std::uint64_t n = b.size();
    if (n < 387840) return na();
    int L = 6;
    const std::uint64_t th[11] = {387840,    904960,    2068480,   4654080,  10342400, 22753280,
                                  49643520,  107560960, 231669760, 496435200, 1059061760};
    for (int i = 1; i < 11; ++i)
        if (n >= th[i]) L = 6 + i;
    static const double expected[17] = {0, 0, 0, 0, 0, 0,
                                        5.2177052, 6.1962507, 7.1836656, 8.1764248, 9.1723243,
                                        10.170032, 11.168765, 12.168070, 13.167693, 14.167488,
                                        15.167379};
    static const double variance[17] = {0, 0, 0, 0, 0, 0,
                                        2.954, 3.125, 3.238, 3.311, 3.356, 3.384, 3.401,
                                        3.410, 3.416, 3.419, 3.421};
    const std::uint64_t Q = 10ull << L;
    const std::uint64_t K = n / std::uint64_t(L) - Q;
    std::vector<std::uint64_t> table(1ull << L, 0);
    auto block_value = [&](std::uint64_t i) { // 1-based block index
        std::uint64_t v = 0;
        for (int j = 0; j < L; ++j) v = (v << 1) | b[(i - 1) * std::uint64_t(L) + std::uint64_t(j)];
        return v;
    };
    for (std::uint64_t i = 1; i <= Q; ++i) table[block_value(i)] = i;
    double sum = 0;
    for (std::uint64_t i = Q + 1; i <= Q + K; ++i) {
        const std::uint64_t v = block_value(i);
        sum += std::log(double(i - table[v])) / std::numbers::ln2;
        table[v] = i;
    }
    const double fn = sum / double(K);
    const double c = 0.7 - 0.8 / L + (4.0 + 32.0 / L) * std::pow(double(K), -3.0 / L) / 15.0;
    const double sigma = c * std::sqrt(variance[L] / double(K));
    RefResult r;
    r.applicable = true;
    r.statistics.emplace_back("fn", fn);
    r.p_values.emplace_back("p", r_erfc(std::fabs(fn - expected[L]) / (std::sqrt(2.0) * sigma)));
    return r;
}

int berlekamp_massey_naive(const std::vector<std::uint8_t>& bits) {
    const int n = static_cast<int>(bits.size());
    if (n == 0) throw Error("berlekamp_massey: empty block");
    std::vector<int> C(std::size_t(n) + 1, 0), B(std::size_t(n) + 1, 0), T;
    C[0] = B[0] = 1;
    int L = 0, m = -1;
    for (int N = 0; N < n; ++N) {
        int d = bits[std::size_t(N)];
        for (int i = 1; i <= L; ++i) d ^= C[std::size_t(i)] & bits[std::size_t(N - i)];
        if (d == 0) continue;
        T = C;
        for (int j = 0; j + (N - m) <= n; ++j)
            if (B[std::size_t(j)]) C[std::size_t(j + N - m)] ^= 1;
        if (2 * L <= N) {
            L = N + 1 - L;
            m = N;
            B = T;
        }
    }
    return L;
}

int shortest_lfsr_bruteforce(const std::vector<std::uint8_t>& bits) {
    const int n = static_cast<int>(bits.size());
    // All-zero sequence is generated by the empty register.
    if (std::all_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b == 0; })) return 0;
    for (int L = 1; L < n; ++L) {
        // Try every feedback polynomial c_1..c_L.
        for (std::uint32_t mask = 0; mask < (1u << L); ++mask) {
            bool ok = true;
            for (int t = L; t < n && ok; ++t) {
                int s = 0;
                for (int i = 1; i <= L; ++i)
                    if ((mask >> (i - 1)) & 1) s ^= bits[std::size_t(t - i)];
                ok = s == bits[std::size_t(t)];
            }
            if (ok) return L;
        }
    }
    return n;
}

RefResult linear_complexity(const std::vector<std::uint8_t>& b, int M) {
    const std::uint64_t n = b.size();
    if (n < 1'000'000) return na();
    const std::uint64_t N = n / std::uint64_t(M);
    static const double pi[7] = {0.010417, 0.03125, 0.12500, 0.50000, 0.25000, 0.06250, 0.020833};
    const double sign_mu = (M % 2 == 0) ? -1.0 : 1.0;
    const double mu = M / 2.0 + (9.0 + sign_mu) / 36.0 - (M / 3.0 + 2.0 / 9.0) / std::pow(2.0, M);
    const double sign_t = (M % 2 == 0) ? 1.0 : -1.0;
    std::vector<double> nu(7, 0.0);
    for (std::uint64_t blk = 0; blk < N; ++blk) {
        std::vector<std::uint8_t> block(b.begin() + long(blk) * M, b.begin() + long(blk + 1) * M);
        const int L = berlekamp_massey_naive(block);
        const double T = sign_t * (double(L) - mu) + 2.0 / 9.0;
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
        nu[std::size_t(k)] += 1;
    }
    double chi2 = 0;
    for (int i = 0; i < 7; ++i) {
        const double e = double(N) * pi[i];
        chi2 += (nu[std::size_t(i)] - e) * (nu[std::size_t(i)] - e) / e;
    }
    RefResult r;
    r.applicable = true;
    r.p_values.emplace_back("p", r_igamc(3.0, chi2 / 2.0));
    return r;
}

namespace {

double ref_psi_sq(const std::vector<std::uint8_t>& b, int m) {
    if (m <= 0) return 0.0;
    const std::size_t n = b.size();
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t v = 0;
        for (int j = 0; j < m; ++j) v = (v << 1) | b[(i + std::size_t(j)) % n];
        ++counts[v];
    }
    double sum = 0;
    for (const auto& [_, c] : counts) sum += double(c) * double(c);
    return std::pow(2.0, m) / double(n) * sum - double(n);
}

} // namespace

RefResult serial(const std::vector<std::uint8_t>& b, int m) {
    if (b.size() < (1ull << m)) return na();
    const double d1 = ref_psi_sq(b, m) - ref_psi_sq(b, m - 1);
    const double d2 = ref_psi_sq(b, m) - 2 * ref_psi_sq(b, m - 1) + ref_psi_sq(b, m - 2);
    RefResult r;
    r.applicable = true;
    r.p_values.emplace_back("p1", r_igamc(std::pow(2.0, m - 2), std::max(0.0, d1) / 2.0));
    r.p_values.emplace_back("p2", r_igamc(std::pow(2.0, m - 3), std::max(0.0, d2) / 2.0));
    return r;
}

RefResult approximate_entropy(const std::vector<std::uint8_t>& b, int m) {
    const std::size_t n = b.size();
    if (n < (1ull << m)) return na();
    auto phi = [&](int mm) {
        if (mm == 0) return 0.0;
        std::map<std::uint64_t, std::uint64_t> counts;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t v = 0;
            for (int j = 0; j < mm; ++j) v = (v << 1) | b[(i + std::size_t(j)) % n];
            ++counts[v];
        }
        double s = 0;
        for (const auto& [_, c] : counts) {
            const double f = double(c) / double(n);
            s += f * std::log(f);
        }
        return s;
    };
    const double apen = phi(m) - phi(m + 1);
    const double chi2 = 2.0 * double(n) * (std::numbers::ln2 - apen);
    RefResult r;
    r.applicable = true;
    r.statistics.emplace_back("apen", apen);
    r.p_values.emplace_back("p", r_igamc(std::pow(2.0, m - 1), std::max(0.0, chi2) / 2.0));
    return r;
}

namespace {

double ref_cusum_p(std::uint64_t n, std::int64_t z) {
    if (z == 0) return 1.0;
    const double zn = std::sqrt(double(n));
    const auto fdiv = [](double a, double b) { return std::floor(a / b); };
    // A term is negligible only when both CDF arguments sit on the same far
    // side; arguments straddling zero contribute ~1.
    const auto negligible = [](double a, double b) {
        return std::min(a, b) > 12.0 || std::max(a, b) < -12.0;
    };
    double sum1 = 0;
    for (long long k = static_cast<long long>(fdiv(double(n) / double(z) * -1 + 1, 4));
         k <= static_cast<long long>(fdiv(double(n) / double(z) - 1, 4)); ++k) {
        const double a = double(4 * k + 1) * double(z) / zn;
        const double b = double(4 * k - 1) * double(z) / zn;
        if (negligible(a, b)) continue;
        sum1 += r_normal_cdf(a) - r_normal_cdf(b);
    }
    double sum2 = 0;
    for (long long k = static_cast<long long>(fdiv(double(n) / double(z) * -1 - 3, 4));
         k <= static_cast<long long>(fdiv(double(n) / double(z) - 1, 4)); ++k) {
        const double a = double(4 * k + 3) * double(z) / zn;
        const double b = double(4 * k + 1) * double(z) / zn;
        if (negligible(a, b)) continue;
        sum2 += r_normal_cdf(a) - r_normal_cdf(b);
    }
    return std::clamp(1.0 - sum1 + sum2, 0.0, 1.0);
}

std::int64_t ref_max_excursion(const std::vector<std::uint8_t>& b) {
    std::int64_t s = 0, z = 0;
    for (const auto bit : b) {
        s += bit ? 1 : -1;
        z = std::max<std::int64_t>(z, std::llabs(s));
    }
    return z;
}

} // namespace

RefResult cumulative_sums(const std::vector<std::uint8_t>& b) {
    if (b.size() < 2) return na();
    // Backward mode per definition: run the forward statistic on the
    // reversed sequence.
    std::vector<std::uint8_t> rev(b.rbegin(), b.rend());
    RefResult r;
    r.applicable = true;
    r.p_values.emplace_back("forward", ref_cusum_p(b.size(), ref_max_excursion(b)));
    r.p_values.emplace_back("backward", ref_cusum_p(b.size(), ref_max_excursion(rev)));
    return r;
}

RefResult random_excursions(const std::vector<std::uint8_t>& b) {
    if (b.size() < 2) return na();
    std::vector<std::int64_t> S(b.size());
    std::int64_t s = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        s += b[i] ? 1 : -1;
        S[i] = s;
    }
    // Cycle boundaries at zeros; trailing incomplete cycle counts.
    std::vector<std::size_t> zeros;
    for (std::size_t i = 0; i < S.size(); ++i)
        if (S[i] == 0) zeros.push_back(i);
    std::uint64_t J = zeros.size() + (S.back() != 0 ? 1 : 0);
    if (J < 500) return na();

    const int states[8] = {-4, -3, -2, -1, 1, 2, 3, 4};
    double nu[6][8] = {};
    std::size_t start = 0;
    auto process_cycle = [&](std::size_t lo, std::size_t hi) { // [lo, hi)
        int counts[8] = {};
        for (std::size_t i = lo; i < hi; ++i) {
            for (int si = 0; si < 8; ++si)
                if (S[i] == states[si]) ++counts[si];
        }
        for (int si = 0; si < 8; ++si) nu[std::min(counts[si], 5)][si] += 1;
    };
    for (const std::size_t zpos : zeros) {
        process_cycle(start, zpos + 1);
        start = zpos + 1;
    }
    if (S.back() != 0) process_cycle(start, S.size());

    RefResult r;
    r.applicable = true;
    for (int si = 0; si < 8; ++si) {
        const int x = states[si];
        const double ax = std::abs(x);
        double chi2 = 0;
        for (int k = 0; k <= 5; ++k) {
            double pk;
            if (k == 0)
                pk = 1.0 - 1.0 / (2.0 * ax);
            else if (k == 5)
                pk = (1.0 / (2.0 * ax)) * std::pow(1.0 - 1.0 / (2.0 * ax), 4);
            else
                pk = (1.0 / (4.0 * ax * ax)) * std::pow(1.0 - 1.0 / (2.0 * ax), k - 1);
            const double e = double(J) * pk;
            chi2 += (nu[k][si] - e) * (nu[k][si] - e) / e;
        }
        r.p_values.emplace_back("x = " + std::to_string(x), r_igamc(2.5, chi2 / 2.0));
    }
    return r;
}

RefResult random_excursions_variant(const std::vector<std::uint8_t>& b) {
    if (b.size() < 2) return na();
    std::vector<std::int64_t> S(b.size());
    std::int64_t s = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        s += b[i] ? 1 : -1;
        S[i] = s;
    }
    std::uint64_t J = 0;
    for (const auto v : S)
        if (v == 0) ++J;
    if (S.back() != 0) ++J;
    if (J < 500) return na();
    RefResult r;
    r.applicable = true;
    for (int x = -9; x <= 9; ++x) {
        if (x == 0) continue;
        double count = 0;
        for (const auto v : S)
            if (v == x) ++count;
        const double p = r_erfc(std::fabs(count - double(J)) /
                                std::sqrt(2.0 * double(J) * (4.0 * std::abs(x) - 2.0)));
        r.p_values.emplace_back("x = " + std::to_string(x), p);
    }
    return r;
}

RefResult run_test(const std::string& name, const BitSequence& seq, const SuiteConfig& cfg) {
    const auto b = unpack(seq);
    if (name == "monobit") return monobit(b);
    if (name == "block_frequency") {
        std::uint64_t M = cfg.block_frequency_m;
        if (M == 0) {
            const std::uint64_t n = b.size();
            M = n > 100'000'000ull ? 131072 : std::min<std::uint64_t>(std::max<std::uint64_t>(20, (n + 49) / 50), 131072);
        }
        return block_frequency(b, M);
    }
    if (name == "runs") return runs(b);
    if (name == "longest_run") return longest_run_in_block(b);
    if (name == "binary_matrix_rank") return binary_matrix_rank(b);
    if (name == "spectral_dft") return spectral_dft(b, cfg.spectral_cap_bits, cfg.spectral_exact_max);
    if (name == "non_overlapping_template") return non_overlapping_template(b, cfg.template_m);
    if (name == "overlapping_template") return overlapping_template(b);
    if (name == "maurers_universal") return maurers_universal(b);
    if (name == "linear_complexity") return linear_complexity(b, cfg.linear_complexity_m);
    if (name == "serial") return serial(b, cfg.serial_m);
    if (name == "approximate_entropy") return approximate_entropy(b, cfg.approximate_entropy_m);
    if (name == "cumulative_sums") return cumulative_sums(b);
    if (name == "random_excursions") return random_excursions(b);
    if (name == "random_excursions_variant") return random_excursions_variant(b);
    throw Error("unknown test: " + name);
}

} // namespace qaudit::ref
