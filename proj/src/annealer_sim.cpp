#include "qaudit/annealer_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdint>

#include <sodium.h>

#include "qaudit/errors.hpp"

namespace qaudit {

void AnnealerConfig::validate() const {
    if (annealing_time_us < 1.0 || annealing_time_us > 2000.0)
        throw ConfigError("annealing_time_us must lie in the device range [1, 2000]");
}

std::string AnnealerConfig::canonical_string() const {
    return "anneal_us=" + std::to_string(annealing_time_us) +
           ";pp=" + (postprocess_sampling ? "1" : "0") +
           ";ts=" + std::to_string(anneal_time_scale) + ";prog_therm_us=0;read_therm_us=0;h=0;J=0";
}

void NoiseModel::validate(int active_count) const {
    if (!qubit_bias.empty() && static_cast<int>(qubit_bias.size()) != active_count)
        throw ConfigError("qubit_bias must be empty or have one entry per active qubit");
    for (double b : qubit_bias) {
        if (!(0.0 < 0.5 + b + drift_amplitude && 0.5 + b + drift_amplitude < 1.0) ||
            !(0.0 < 0.5 + b - drift_amplitude && 0.5 + b - drift_amplitude < 1.0))
            throw ConfigError("bias + drift must keep P(1) strictly inside (0,1)");
    }
    if (!(0.0 < 0.5 + drift_amplitude && 0.5 + drift_amplitude < 1.0) ||
        !(0.0 < 0.5 - drift_amplitude && 0.5 - drift_amplitude < 1.0))
        throw ConfigError("drift amplitude must keep P(1) strictly inside (0,1)");
    if (temporal_rho < 0.0 || temporal_rho > 1.0) throw ConfigError("temporal_rho must be in [0,1]");
    if (coupler_rho < 0.0 || coupler_rho > 1.0) throw ConfigError("coupler_rho must be in [0,1]");
    if (drift_period_anneals < 0.0) throw ConfigError("drift_period_anneals must be >= 0");
    if (postprocess_attenuation < 0.0) throw ConfigError("postprocess_attenuation must be >= 0");
}

std::string NoiseModel::canonical_string() const {
    std::string bias = "uniform0";
    if (!qubit_bias.empty()) {
        // Uniform vectors digest as the scalar; anything else hashes per entry.
        const bool uniform = std::all_of(qubit_bias.begin(), qubit_bias.end(),
                                         [&](double b) { return b == qubit_bias.front(); });
        if (uniform) {
            bias = "uniform" + std::to_string(qubit_bias.front());
        } else {
            bias = "vector";
            for (const double b : qubit_bias) bias += "," + std::to_string(b);
        }
    }
    return "bias=" + bias + ";trho=" + std::to_string(temporal_rho) +
           ";crho=" + std::to_string(coupler_rho) + ";damp=" + std::to_string(drift_amplitude) +
           ";dper=" + std::to_string(drift_period_anneals) + ";seed=" + std::to_string(rng_seed) +
           ";att=" + std::to_string(postprocess_attenuation);
}

NoiseModel NoiseModel::uniform_bias(double bias, int active_count, std::uint64_t seed) {
    NoiseModel m;
    m.qubit_bias.assign(static_cast<std::size_t>(active_count), bias);
    m.rng_seed = seed;
    return m;
}

NoiseModel apply_postprocess_model(const NoiseModel& noise) {
    NoiseModel out = noise;
    for (double& b : out.qubit_bias) b *= noise.postprocess_attenuation;
    out.coupler_rho *= noise.postprocess_attenuation;
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// xoshiro256**: cheap to seed per anneal, so sample_anneal stays a pure
// function of (seed, t) without a costly engine construction.
struct Xoshiro256 {
    std::uint64_t s[4];
    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s) w = x = splitmix64(x);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    std::uint64_t operator()() {
        const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }
};

inline double u01(Xoshiro256& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Core per-anneal procedure over packed-as-bytes qubit values (one byte per
// active qubit, 0/1). Both sample_anneal and generate_stream route through
// this so draw order is identical.
void anneal_bits(const ChimeraGraph& graph, const AnnealerConfig& config, const NoiseModel& noise,
                 const std::vector<std::uint8_t>* prev, std::uint64_t t,
                 std::vector<std::uint8_t>& out) {
    const int count = graph.active_count();
    out.resize(static_cast<std::size_t>(count));

    Xoshiro256 rng(splitmix64(noise.rng_seed ^ (t * 0x9e3779b97f4a7c15ull)));

    double drift = 0.0;
    if (noise.drift_amplitude != 0.0 && noise.drift_period_anneals > 0.0)
        drift = noise.drift_amplitude *
                std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / noise.drift_period_anneals);
    double scale = 1.0;
    if (config.anneal_time_scale != 0.0)
        scale = 1.0 + config.anneal_time_scale * std::log10(config.annealing_time_us);

    for (int i = 0; i < count; ++i) {
        const double bias = noise.qubit_bias.empty() ? 0.0 : noise.qubit_bias[static_cast<std::size_t>(i)];
        const double p = std::clamp(0.5 + (bias + drift) * scale, 0.0, 1.0);
        out[static_cast<std::size_t>(i)] = u01(rng) < p ? 1 : 0;
    }
    if (noise.temporal_rho > 0.0 && prev) {
        for (int i = 0; i < count; ++i)
            if (u01(rng) < noise.temporal_rho)
                out[static_cast<std::size_t>(i)] = (*prev)[static_cast<std::size_t>(i)];
    }
    if (noise.coupler_rho > 0.0) {
        for (const auto& [lo, hi] : graph.couplers) {
            if (u01(rng) < noise.coupler_rho) {
                const int src = graph.active_position[static_cast<std::size_t>(lo)];
                const int dst = graph.active_position[static_cast<std::size_t>(hi)];
                out[static_cast<std::size_t>(dst)] = out[static_cast<std::size_t>(src)];
            }
        }
    }
}

NoiseModel effective_noise(const AnnealerConfig& config, const NoiseModel& noise) {
    return config.postprocess_sampling ? apply_postprocess_model(noise) : noise;
}

} // namespace

AnnealSample sample_anneal(const ChimeraGraph& graph, const AnnealerConfig& config,
                           const NoiseModel& noise, const AnnealSample* prev, std::uint64_t t) {
    config.validate();
    noise.validate(graph.active_count());
    std::vector<std::uint8_t> prev_bits;
    if (prev) {
        if (static_cast<int>(prev->spins.size()) != graph.active_count())
            throw Error("previous sample has " + std::to_string(prev->spins.size()) +
                        " spins, graph has " + std::to_string(graph.active_count()) +
                        " active qubits");
        prev_bits.resize(prev->spins.size());
        for (std::size_t i = 0; i < prev->spins.size(); ++i)
            prev_bits[i] = prev->spins[i] == 1 ? 1 : 0;
    }
    const NoiseModel eff = effective_noise(config, noise);
    std::vector<std::uint8_t> bits;
    anneal_bits(graph, config, eff, prev ? &prev_bits : nullptr, t, bits);

    AnnealSample s;
    s.anneal_index = t;
    s.spins.resize(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) s.spins[i] = bits[i] ? 1 : -1;
    return s;
}

GeneratedStream generate_stream(const ChimeraGraph& graph, const AnnealerConfig& config,
                                const NoiseModel& noise, std::uint64_t n_anneals) {
    config.validate();
    noise.validate(graph.active_count());
    if (n_anneals < 1) throw ConfigError("n_anneals must be >= 1");
    const NoiseModel eff = effective_noise(config, noise);
    const int count = graph.active_count();

    BitBuilder builder(n_anneals * static_cast<std::uint64_t>(count));
    std::vector<std::uint8_t> cur, prev;
    std::vector<std::uint8_t> packed((static_cast<std::size_t>(count) + 7) / 8);
    for (std::uint64_t t = 1; t <= n_anneals; ++t) {
        anneal_bits(graph, config, eff, t > 1 ? &prev : nullptr, t, cur);
        std::fill(packed.begin(), packed.end(), 0);
        for (int i = 0; i < count; ++i)
            if (cur[static_cast<std::size_t>(i)])
                packed[static_cast<std::size_t>(i) >> 3] |=
                    static_cast<std::uint8_t>(1u << (7 - (i & 7)));
        builder.append_bytes(packed, static_cast<std::uint64_t>(count));
        std::swap(cur, prev);
    }

    GeneratedStream out{builder.take(), {}};
    out.metadata.bit_count = out.bits.bit_len();
    out.metadata.source_descriptor =
        "annealer-sim grid=" + std::to_string(graph.grid_size) +
        " shore=" + std::to_string(graph.shore_size) +
        " active=" + std::to_string(count) + " anneals=" + std::to_string(n_anneals);
    out.metadata.created_at = iso8601_now();
    out.metadata.config_digest = config_digest(graph, config, noise);
    return out;
}

std::string config_digest(const ChimeraGraph& graph, const AnnealerConfig& config,
                          const NoiseModel& noise) {
    std::string s = "grid=" + std::to_string(graph.grid_size) +
                    ";shore=" + std::to_string(graph.shore_size) + ";masked=";
    for (int q = 0; q < graph.total_qubits(); ++q)
        if (!graph.active_mask[static_cast<std::size_t>(q)]) s += std::to_string(q) + ",";
    s += "|" + config.canonical_string() + "|" + noise.canonical_string();
    return fnv1a64_hex(s);
}

ReferenceKind reference_kind_from_string(const std::string& s) {
    if (s == "crypto_quality") return ReferenceKind::crypto_quality;
    if (s == "weak_lcg") return ReferenceKind::weak_lcg;
    if (s == "constant_zero") return ReferenceKind::constant_zero;
    if (s == "alternating") return ReferenceKind::alternating;
    throw ConfigError("unknown reference generator kind: " + s);
}

BitSequence reference_generator(ReferenceKind kind, std::uint64_t seed, std::uint64_t n_bits) {
    const std::uint64_t n_bytes = (n_bits + 7) / 8;
    switch (kind) {
        case ReferenceKind::constant_zero: {
            std::vector<std::uint8_t> bytes(n_bytes, 0);
            return BitSequence::from_packed(std::move(bytes), n_bits);
        }
        case ReferenceKind::alternating: {
            std::vector<std::uint8_t> bytes(n_bytes, 0x55); // 01010101...
            if (n_bits % 8)
                bytes.back() &= static_cast<std::uint8_t>(0xFF << (8 - (n_bits % 8)));
            return BitSequence::from_packed(std::move(bytes), n_bits);
        }
        case ReferenceKind::weak_lcg: {
            // Low nibble of the classic 2^31 LCG; the low-order bits cycle
            // with a tiny period, which is the point.
            BitBuilder b(n_bits);
            std::uint32_t x = static_cast<std::uint32_t>(seed) | 1u;
            while (b.bit_len() < n_bits) {
                x = (1103515245u * x + 12345u) & 0x7FFFFFFFu;
                for (int j = 3; j >= 0 && b.bit_len() < n_bits; --j) b.push_bit((x >> j) & 1);
            }
            return b.take();
        }
        case ReferenceKind::crypto_quality: {
            if (sodium_init() < 0) throw Error("libsodium init failed");
            unsigned char key[crypto_stream_chacha20_KEYBYTES];
            std::uint64_t s = seed;
            for (std::size_t i = 0; i < sizeof key; i += 8) {
                s = splitmix64(s);
                for (std::size_t j = 0; j < 8; ++j)
                    key[i + j] = static_cast<unsigned char>(s >> (8 * j));
            }
            unsigned char nonce[crypto_stream_chacha20_NONCEBYTES] = {0};
            std::vector<std::uint8_t> bytes(n_bytes);
            if (n_bytes)
                crypto_stream_chacha20(bytes.data(), bytes.size(), nonce, key);
            if (n_bits % 8)
                bytes.back() &= static_cast<std::uint8_t>(0xFF << (8 - (n_bits % 8)));
            return BitSequence::from_packed(std::move(bytes), n_bits);
        }
    }
    throw Error("unreachable");
}

} // namespace qaudit
