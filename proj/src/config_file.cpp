#include "qaudit/config_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "qaudit/errors.hpp"

namespace qaudit {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError("bad boolean value for " + key + ": '" + v + "'");
}

using Section = std::map<std::string, std::string>;

} // namespace

SimSetup parse_sim_config(const std::string& text) {
    std::map<std::string, Section> sections;
    std::string current = "";
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            current = trim(t.substr(1, t.size() - 2));
            if (current != "graph" && current != "config" && current != "noise")
                throw ConfigError("unknown config section [" + current + "]");
            sections[current];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value, got '" + t + "'");
        if (current.empty()) throw ConfigError("key outside of a section: '" + t + "'");
        sections[current][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }

    SimSetup s;

    // [graph]
    {
        int grid = 16, shore = 4;
        std::string mask_spec = "fixture_2032";
        if (auto it = sections.find("graph"); it != sections.end()) {
            for (const auto& [k, v] : it->second) {
                if (k == "grid_size")
                    grid = static_cast<int>(to_double(k, v));
                else if (k == "shore_size")
                    shore = static_cast<int>(to_double(k, v));
                else if (k == "mask")
                    mask_spec = v;
                else
                    throw ConfigError("unknown [graph] key: " + k);
            }
        }
        std::vector<bool> mask = all_active_mask(grid, shore);
        if (mask_spec == "fixture_2032") {
            if (grid == 16 && shore == 4) {
                for (int q : paper_device_masked_qubits()) mask[static_cast<std::size_t>(q)] = false;
            } else {
                throw ConfigError("mask fixture_2032 requires grid_size=16 shore_size=4");
            }
        } else if (mask_spec != "all_active") {
            std::istringstream ms(mask_spec);
            std::string tok;
            while (std::getline(ms, tok, ',')) {
                tok = trim(tok);
                if (tok.empty()) continue;
                int q = 0;
                const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), q);
                if (ec != std::errc() || p != tok.data() + tok.size() || q < 0 ||
                    q >= static_cast<int>(mask.size()))
                    throw ConfigError("bad masked qubit id: '" + tok + "'");
                mask[static_cast<std::size_t>(q)] = false;
            }
        }
        s.graph = build_chimera(grid, shore, mask);
    }

    // [config]
    if (auto it = sections.find("config"); it != sections.end()) {
        for (const auto& [k, v] : it->second) {
            if (k == "annealing_time_us")
                s.config.annealing_time_us = to_double(k, v);
            else if (k == "postprocess_sampling")
                s.config.postprocess_sampling = to_bool(k, v);
            else if (k == "anneal_time_scale")
                s.config.anneal_time_scale = to_double(k, v);
            else if (k == "programming_thermalization_us" || k == "readout_thermalization_us") {
                if (to_double(k, v) != 0.0)
                    throw ConfigError(k + " is fixed at 0 for this job model");
            } else
                throw ConfigError("unknown [config] key: " + k);
        }
    }
    s.config.validate();

    // [noise]
    double bias = 0.0;
    if (auto it = sections.find("noise"); it != sections.end()) {
        for (const auto& [k, v] : it->second) {
            if (k == "bias")
                bias = to_double(k, v);
            else if (k == "temporal_rho")
                s.noise.temporal_rho = to_double(k, v);
            else if (k == "coupler_rho")
                s.noise.coupler_rho = to_double(k, v);
            else if (k == "drift_amplitude")
                s.noise.drift_amplitude = to_double(k, v);
            else if (k == "drift_period_anneals")
                s.noise.drift_period_anneals = to_double(k, v);
            else if (k == "seed")
                s.noise.rng_seed = static_cast<std::uint64_t>(std::stoull(v));
            else if (k == "postprocess_attenuation")
                s.noise.postprocess_attenuation = to_double(k, v);
            else
                throw ConfigError("unknown [noise] key: " + k);
        }
    }
    if (bias != 0.0)
        s.noise.qubit_bias.assign(static_cast<std::size_t>(s.graph.active_count()), bias);
    s.noise.validate(s.graph.active_count());
    return s;
}

SimSetup load_sim_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_sim_config(text);
}

} // namespace qaudit
