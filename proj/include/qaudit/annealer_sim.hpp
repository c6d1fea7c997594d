#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qaudit/bit_io.hpp"
#include "qaudit/bit_sequence.hpp"
#include "qaudit/chimera.hpp"
#include "qaudit/spin_csv.hpp"

namespace qaudit {

// Job parameters. Coefficients are identically zero and both thermalization
// times are fixed at 0; only the annealing time and the server-side
// post-processing flag vary across the canonical experiments.
struct AnnealerConfig {
    double annealing_time_us = 1.0;
    bool postprocess_sampling = false;
    // Optional coupling of annealing time into bias/drift; 0 = inert. A
    // nonzero value scales both by (1 + anneal_time_scale * log10(t_us)).
    double anneal_time_scale = 0.0;

    void validate() const;
    std::string canonical_string() const;
};

// Phenomenological noise knobs, one per noise source named by the device
// phenomenology: static per-qubit bias, anneal-to-anneal memory, within-anneal
// coupler cross-talk, and slow sinusoidal drift.
struct NoiseModel {
    std::vector<double> qubit_bias; // per active qubit; empty = unbiased
    double temporal_rho = 0.0;      // P(copy this qubit's previous-anneal value)
    double coupler_rho = 0.0;       // P(lower endpoint overwrites higher), per coupler
    double drift_amplitude = 0.0;
    double drift_period_anneals = 0.0; // 0 = no drift
    std::uint64_t rng_seed = 0;
    double postprocess_attenuation = 0.01;

    void validate(int active_count) const;
    std::string canonical_string() const;
    static NoiseModel uniform_bias(double bias, int active_count, std::uint64_t seed);
};

// Stand-in for the proprietary server-side post-processing: scales qubit bias
// and coupler cross-talk by the attenuation factor. Phenomenological only.
NoiseModel apply_postprocess_model(const NoiseModel& noise);

// One anneal-readout cycle. Deterministic given (noise.rng_seed, t): draws
// biased bits, optionally copies the previous anneal per qubit, then runs one
// ordered coupler pass.
AnnealSample sample_anneal(const ChimeraGraph& graph, const AnnealerConfig& config,
                           const NoiseModel& noise, const AnnealSample* prev, std::uint64_t t);

struct GeneratedStream {
    BitSequence bits;
    StreamMetadata metadata;
};

GeneratedStream generate_stream(const ChimeraGraph& graph, const AnnealerConfig& config,
                                const NoiseModel& noise, std::uint64_t n_anneals);

// Deterministic calibration sources.
enum class ReferenceKind { crypto_quality, weak_lcg, constant_zero, alternating };

ReferenceKind reference_kind_from_string(const std::string& s);

BitSequence reference_generator(ReferenceKind kind, std::uint64_t seed, std::uint64_t n_bits);

std::string config_digest(const ChimeraGraph& graph, const AnnealerConfig& config,
                          const NoiseModel& noise);

} // namespace qaudit
