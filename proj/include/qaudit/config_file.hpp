#pragma once

#include <filesystem>
#include <string>

#include "qaudit/annealer_sim.hpp"
#include "qaudit/chimera.hpp"

namespace qaudit {

// Full simulator setup parsed from a key-value config file with [graph],
// [config] and [noise] sections. Omitted sections fall back to the paper
// device fixture, default job parameters and an ideal noise model.
struct SimSetup {
    ChimeraGraph graph;
    AnnealerConfig config;
    NoiseModel noise;
};

// Accepted keys:
//   [graph]  grid_size, shore_size, mask (= all_active | fixture_2032 |
//            comma-separated qubit ids to disable)
//   [config] annealing_time_us, postprocess_sampling, anneal_time_scale,
//            programming_thermalization_us (must be 0),
//            readout_thermalization_us (must be 0)
//   [noise]  bias (uniform per-qubit), temporal_rho, coupler_rho,
//            drift_amplitude, drift_period_anneals, seed,
//            postprocess_attenuation
SimSetup parse_sim_config(const std::string& text);
SimSetup load_sim_config(const std::filesystem::path& path);

} // namespace qaudit
