#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <omp.h>

#include "qaudit/annealer_sim.hpp"
#include "qaudit/bit_io.hpp"
#include "qaudit/bit_sequence.hpp"
#include "qaudit/config_file.hpp"
#include "qaudit/errors.hpp"
#include "qaudit/experiment.hpp"
#include "qaudit/report.hpp"
#include "qaudit/spin_csv.hpp"
#include "qaudit/suite.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace qaudit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonRandom = 3;
constexpr int kExitNotApplicable = 4;

int resolve_jobs(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("QRNG_AUDIT_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0; // library default
}

void apply_jobs(int jobs) {
    if (jobs > 0) omp_set_num_threads(jobs);
}

SuiteConfig load_suite_config(const std::string& path) {
    SuiteConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open suite config " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad suite config json: " + std::string(e.what()));
    }
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.block_frequency_m = j.value("block_frequency_m", cfg.block_frequency_m);
    cfg.serial_m = j.value("serial_m", cfg.serial_m);
    cfg.approximate_entropy_m = j.value("approximate_entropy_m", cfg.approximate_entropy_m);
    cfg.linear_complexity_m = j.value("linear_complexity_m", cfg.linear_complexity_m);
    cfg.template_m = j.value("template_m", cfg.template_m);
    cfg.spectral_cap_bits = j.value("spectral_cap_bits", cfg.spectral_cap_bits);
    cfg.spectral_exact_max = j.value("spectral_exact_max", cfg.spectral_exact_max);
    cfg.validate();
    return cfg;
}

std::string suite_results_json(const std::string& dataset_id, const SuiteConfig& cfg,
                               const SuiteResult& res) {
    ordered_json j;
    j["dataset_id"] = dataset_id;
    ordered_json cj;
    cj["alpha"] = cfg.alpha;
    cj["block_frequency_m"] = cfg.block_frequency_m;
    cj["serial_m"] = cfg.serial_m;
    cj["approximate_entropy_m"] = cfg.approximate_entropy_m;
    cj["linear_complexity_m"] = cfg.linear_complexity_m;
    cj["template_m"] = cfg.template_m;
    cj["spectral_cap_bits"] = cfg.spectral_cap_bits;
    cj["spectral_exact_max"] = cfg.spectral_exact_max;
    cj["digest"] = cfg.digest();
    j["config"] = cj;
    ordered_json tests = ordered_json::array();
    for (const auto& t : res.tests) tests.push_back(ordered_json::parse(t.to_json()));
    j["tests"] = tests;
    j["dataset_verdict"] = to_string(res.dataset_verdict);
    return j.dump(2) + "\n";
}

int suite_exit_code(const SuiteResult& res) {
    if (res.dataset_verdict == Verdict::non_random) return kExitNonRandom;
    if (res.any_not_applicable) return kExitNotApplicable;
    return kExitOk;
}

// ------------------------------------------------------------- generate

int cmd_generate(const std::string& config_path, std::uint64_t anneals, const std::string& out,
                 std::optional<std::uint64_t> seed_override, int jobs) {
    apply_jobs(jobs);
    SimSetup setup = config_path.empty() ? SimSetup{paper_device_graph(), {}, {}}
                                         : load_sim_config(config_path);
    if (seed_override) setup.noise.rng_seed = *seed_override;
    setup.noise.validate(setup.graph.active_count());
    const auto stream = generate_stream(setup.graph, setup.config, setup.noise, anneals);
    write_packed(stream.bits, out, stream.metadata.source_descriptor,
                 stream.metadata.config_digest);
    std::printf("%llu bits -> %s\n", static_cast<unsigned long long>(stream.bits.bit_len()),
                out.c_str());
    return kExitOk;
}

// --------------------------------------------------------------- ingest

int cmd_ingest(const std::string& spins_path, const std::string& out) {
    BitBuilder builder;
    std::uint64_t gaps = 0;
    const std::uint64_t rows = ingest_spin_csv(spins_path, [&](const AnnealSample& s) {
        builder.append(spins_to_bits(s));
        if (s.epoch_tag) ++gaps;
    });
    const BitSequence bits = builder.take();
    const std::string descriptor = "spin-csv " + spins_path + " rows=" + std::to_string(rows) +
                                   " gaps=" + std::to_string(gaps);
    write_packed(bits, out, descriptor, fnv1a64_hex(descriptor));
    std::printf("%llu bits (%llu rows, %llu gaps) -> %s\n",
                static_cast<unsigned long long>(bits.bit_len()),
                static_cast<unsigned long long>(rows), static_cast<unsigned long long>(gaps),
                out.c_str());
    return kExitOk;
}

// ----------------------------------------------------------------- test

int cmd_test(const std::string& bits_path, const std::string& suite_config_path,
             const std::string& out, const std::string& dataset_id, int jobs,
             std::optional<double> alpha_override) {
    SuiteConfig cfg = load_suite_config(suite_config_path);
    if (alpha_override) cfg.alpha = *alpha_override; // flags win over the file
    cfg.validate();
    cfg.jobs = resolve_jobs(jobs);
    const BitSequence bits = read_packed(bits_path);
    const SuiteResult res = run_all(bits, cfg);
    const std::string id = dataset_id.empty() ? fs::path(bits_path).stem().string() : dataset_id;
    if (!out.empty()) write_file_atomic(out, suite_results_json(id, cfg, res));
    for (const auto& t : res.tests) {
        std::printf("%-26s %s", t.test_name.c_str(), to_string(t.verdict).c_str());
        if (t.applicable)
            for (const auto& p : t.p_values) std::printf("  %s=%.5f", p.label.c_str(), p.value);
        else if (!t.note.empty())
            std::printf("  (%s)", t.note.c_str());
        std::printf("\n");
    }
    std::printf("dataset verdict: %s\n", to_string(res.dataset_verdict).c_str());
    return suite_exit_code(res);
}

// ------------------------------------------------------------ experiment

struct PlanDataset {
    DatasetRecord record;
    std::string bits_file;
    std::string sim_config;
    std::uint64_t n_anneals = 0;
    std::uint64_t seed_offset = 0;
};

int cmd_experiment(const std::string& plan_path, const std::string& checkpoint_dir,
                   const std::string& out, int jobs) {
    apply_jobs(resolve_jobs(jobs));
    std::ifstream in(plan_path);
    if (!in) throw IoError("cannot open plan " + plan_path);
    ordered_json plan;
    try {
        in >> plan;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad plan json: " + std::string(e.what()));
    }

    SuiteConfig cfg;
    if (plan.contains("suite")) {
        const auto& sj = plan["suite"];
        cfg.alpha = sj.value("alpha", cfg.alpha);
        cfg.block_frequency_m = sj.value("block_frequency_m", cfg.block_frequency_m);
        cfg.serial_m = sj.value("serial_m", cfg.serial_m);
        cfg.approximate_entropy_m = sj.value("approximate_entropy_m", cfg.approximate_entropy_m);
        cfg.linear_complexity_m = sj.value("linear_complexity_m", cfg.linear_complexity_m);
        cfg.template_m = sj.value("template_m", cfg.template_m);
        cfg.spectral_cap_bits = sj.value("spectral_cap_bits", cfg.spectral_cap_bits);
        cfg.spectral_exact_max = sj.value("spectral_exact_max", cfg.spectral_exact_max);
    }
    cfg.validate();

    std::vector<PlanDataset> datasets;
    if (plan.contains("canonical")) {
        const auto& cj = plan["canonical"];
        const std::string noise_cfg = cj.value("noise_config", "");
        const std::uint64_t n_anneals = cj.at("n_anneals").get<std::uint64_t>();
        std::uint64_t idx = 0;
        for (const auto& rec : canonical_experiments()) {
            PlanDataset d;
            d.record = rec;
            d.sim_config = noise_cfg;
            d.n_anneals = n_anneals;
            d.seed_offset = idx++;
            datasets.push_back(std::move(d));
        }
    }
    if (plan.contains("datasets")) {
        for (const auto& dj : plan["datasets"]) {
            PlanDataset d;
            d.record.dataset_id = dj.at("id").get<std::string>();
            d.record.annealing_time_us = dj.value("annealing_time_us", 1.0);
            d.record.postprocess_sampling = dj.value("postprocess_sampling", false);
            d.bits_file = dj.value("bits_file", "");
            d.sim_config = dj.value("sim_config", "");
            d.n_anneals = dj.value("n_anneals", std::uint64_t{0});
            d.seed_offset = dj.value("seed_offset", std::uint64_t{0});
            datasets.push_back(std::move(d));
        }
    }
    if (datasets.empty()) throw ConfigError("plan names no datasets");

    std::vector<MatrixColumn> columns;
    for (auto& d : datasets) {
        BitSequence bits;
        if (!d.bits_file.empty()) {
            bits = read_packed(d.bits_file);
            d.record.source = d.bits_file;
        } else {
            SimSetup setup = d.sim_config.empty()
                                 ? SimSetup{paper_device_graph(), {}, {}}
                                 : load_sim_config(d.sim_config);
            setup.config.annealing_time_us = d.record.annealing_time_us;
            setup.config.postprocess_sampling = d.record.postprocess_sampling;
            setup.noise.rng_seed += d.seed_offset;
            if (d.n_anneals == 0) throw ConfigError(d.record.dataset_id + ": n_anneals required");
            const auto stream = generate_stream(setup.graph, setup.config, setup.noise, d.n_anneals);
            bits = stream.bits;
            d.record.source = "sim:" + stream.metadata.config_digest;
        }
        std::printf("dataset %s: %llu bits\n", d.record.dataset_id.c_str(),
                    static_cast<unsigned long long>(bits.bit_len()));
        std::fflush(stdout);
        columns.push_back(run_dataset(d.record, bits, cfg, checkpoint_dir));
    }
    const ExperimentMatrix matrix = aggregate(columns, cfg);
    write_file_atomic(out, matrix.to_json());
    write_file_atomic(out + ".csv", matrix.to_csv());
    std::printf("matrix -> %s (+.csv)\n", out.c_str());
    return kExitOk;
}

// ---------------------------------------------------------------- report

int cmd_report(const std::string& matrix_path, const std::string& format, double alpha,
               const std::string& out) {
    std::ifstream in(matrix_path);
    if (!in) throw IoError("cannot open matrix " + matrix_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const ExperimentMatrix matrix = ExperimentMatrix::from_json(text);
    const RenderedReport rep = render(matrix, report_format_from_string(format), alpha);
    if (out.empty()) {
        std::fputs(rep.body.c_str(), stdout);
    } else {
        write_file_atomic(out, rep.body);
        std::fputs(rep.summary.c_str(), stdout);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qrng_audit: noisy-annealer bitstream simulator and SP 800-22 battery"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "simulate anneal cycles and write a packed stream");
    std::string gen_config, gen_out;
    std::uint64_t gen_anneals = 1;
    std::int64_t gen_seed = -1;
    int gen_jobs = 0;
    gen->add_option("--config", gen_config, "simulator config file ([graph]/[config]/[noise])");
    gen->add_option("--anneals", gen_anneals, "number of anneal-readout cycles")->required();
    gen->add_option("--out", gen_out, "output .bits path")->required();
    gen->add_option("--seed", gen_seed, "override the config seed");
    gen->add_option("--jobs", gen_jobs, "worker threads (default: QRNG_AUDIT_JOBS or all cores)");

    // ingest
    auto* ing = app.add_subcommand("ingest", "convert a spin CSV to a packed stream");
    std::string ing_spins, ing_out;
    ing->add_option("--spins", ing_spins, "spin CSV path")->required();
    ing->add_option("--out", ing_out, "output .bits path")->required();

    // test
    auto* tst = app.add_subcommand("test", "run the 15-test battery on a packed stream");
    std::string tst_bits, tst_cfg, tst_out, tst_id;
    int tst_jobs = 0;
    double tst_alpha = kDefaultAlpha;
    tst->add_option("--bits", tst_bits, "input .bits path (requires .meta sidecar)")->required();
    tst->add_option("--suite-config", tst_cfg, "suite config json");
    auto* tst_alpha_opt = tst->add_option("--alpha", tst_alpha, "decision threshold (overrides the config file)");
    tst->add_option("--out", tst_out, "results json path");
    tst->add_option("--id", tst_id, "dataset id recorded in the results");
    tst->add_option("--jobs", tst_jobs, "worker threads (default: QRNG_AUDIT_JOBS or all cores)");

    // experiment
    auto* exp = app.add_subcommand("experiment", "run a dataset plan with checkpointed resume");
    std::string exp_plan, exp_ckpt, exp_out;
    int exp_jobs = 0;
    exp->add_option("--plan", exp_plan, "plan json")->required();
    exp->add_option("--checkpoints", exp_ckpt, "checkpoint directory")->required();
    exp->add_option("--out", exp_out, "output matrix json path")->required();
    exp->add_option("--jobs", exp_jobs, "worker threads (default: QRNG_AUDIT_JOBS or all cores)");

    // report
    auto* rep = app.add_subcommand("report", "render a matrix as markdown/csv/plain");
    std::string rep_matrix, rep_format = "plain", rep_out;
    double rep_alpha = kDefaultAlpha;
    rep->add_option("--matrix", rep_matrix, "matrix json path")->required();
    rep->add_option("--format", rep_format, "markdown | csv | plain");
    rep->add_option("--alpha", rep_alpha, "decision threshold");
    rep->add_option("--out", rep_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_config, gen_anneals, gen_out,
                                gen_seed >= 0 ? std::optional<std::uint64_t>(
                                                    static_cast<std::uint64_t>(gen_seed))
                                              : std::nullopt,
                                resolve_jobs(gen_jobs));
        if (ing->parsed()) return cmd_ingest(ing_spins, ing_out);
        if (tst->parsed())
            return cmd_test(tst_bits, tst_cfg, tst_out, tst_id, tst_jobs,
                            tst_alpha_opt->count() ? std::optional<double>(tst_alpha) : std::nullopt);
        if (exp->parsed()) return cmd_experiment(exp_plan, exp_ckpt, exp_out, exp_jobs);
        if (rep->parsed()) return cmd_report(rep_matrix, rep_format, rep_alpha, rep_out);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitUsage;
    } catch (const CheckpointMismatchError& e) {
        std::fprintf(stderr, "checkpoint error: %s\n", e.what());
        return kExitUsage;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitIo;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return kExitUsage;
}
