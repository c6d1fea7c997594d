// Acceptance suite: one pass/fail line per criterion (A1-A8). Exits nonzero
// if any criterion fails. Heavy workloads are sized for a small multicore
// machine; expect roughly 20-40 minutes end to end.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <omp.h>

#include "qaudit/annealer_sim.hpp"
#include "qaudit/bit_io.hpp"
#include "qaudit/chimera.hpp"
#include "qaudit/experiment.hpp"
#include "qaudit/report.hpp"
#include "qaudit/suite.hpp"

#include "reference_suite.hpp"

using namespace qaudit;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
    std::printf("%-4s %s  %s\n", id.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t peak_rss_bytes() {
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::uint64_t kb = 0;
            std::sscanf(line.c_str(), "VmHWM: %llu kB", (unsigned long long*)&kb);
            return kb * 1024;
        }
    }
    return 0;
}

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(const std::string& args, std::string* out = nullptr) {
    const char* bin = std::getenv("QRNG_AUDIT_BIN");
    if (!bin) {
        std::fprintf(stderr, "QRNG_AUDIT_BIN not set\n");
        return -1;
    }
    const std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    std::string text;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) text.append(buf, got);
    const int status = pclose(pipe);
    if (out) *out = text;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ------------------------------------------------------------------- A1

// For each test, compares impl vs the serial direct-definition build on at
// least 20 fixed-seed inputs between 1e4 and 1e6 bits, tolerance 1e-6.
void criterion_a1() {
    const auto t0 = Clock::now();
    SuiteConfig cfg;
    cfg.jobs = omp_get_max_threads();
    const double tol = 1e-6;

    struct Plan {
        std::string test;
        std::vector<std::uint64_t> sizes; // cycled until 20 applicable inputs
        SuiteConfig cfg;
    };
    SuiteConfig small = cfg;
    small.serial_m = 7; // applicable from 128 bits
    small.approximate_entropy_m = 6;
    std::vector<Plan> plans = {
        {"monobit", {10'000, 30'000, 100'000, 300'000, 1'000'000}, cfg},
        {"block_frequency", {10'000, 30'000, 100'000, 300'000, 1'000'000}, cfg},
        {"runs", {10'000, 30'000, 100'000, 300'000, 1'000'000}, cfg},
        {"longest_run", {10'000, 30'000, 100'000, 300'000, 1'000'000}, cfg},
        {"binary_matrix_rank", {50'000, 100'000, 300'000, 600'000, 1'000'000}, cfg},
        {"spectral_dft", {10'000, 30'000, 100'000, 262'144, 1'000'000}, cfg},
        {"non_overlapping_template", {10'000, 30'000, 100'000, 300'000, 1'000'000}, cfg},
        {"overlapping_template", {1'000'000}, cfg},
        {"maurers_universal", {400'000, 600'000, 800'000, 1'000'000}, cfg},
        {"linear_complexity", {1'000'000}, cfg},
        {"serial", {10'000, 30'000, 100'000, 300'000, 1'000'000}, small},
        {"serial", {100'000, 1'000'000}, cfg}, // default m=16 at larger sizes
        {"approximate_entropy", {10'000, 30'000, 100'000, 300'000, 1'000'000}, small},
        {"approximate_entropy", {100'000, 1'000'000}, cfg},
        {"cumulative_sums", {10'000, 30'000, 100'000, 300'000, 1'000'000}, cfg},
        {"random_excursions", {1'000'000}, cfg},
        {"random_excursions_variant", {1'000'000}, cfg},
    };

    std::map<std::string, int> compared;
    double worst = 0.0;
    std::string worst_at;
    bool ok = true;

    for (const auto& plan : plans) {
        int done = 0;
        std::uint64_t seed = 4242;
        int attempts = 0;
        while ((compared[plan.test] < 20 || done == 0) && attempts < 200) {
            const std::uint64_t n = plan.sizes[static_cast<std::size_t>(attempts) % plan.sizes.size()];
            ++attempts;
            const auto bits = reference_generator(ReferenceKind::crypto_quality, seed++, n);
            const TestResult mine = run_test(plan.test, bits, plan.cfg);
            const ref::RefResult theirs = ref::run_test(plan.test, bits, plan.cfg);
            if (mine.applicable != theirs.applicable) {
                report("A1", false, plan.test + ": applicability mismatch at n=" + std::to_string(n));
                return;
            }
            if (!mine.applicable) continue;
            if (mine.p_values.size() != theirs.p_values.size()) {
                report("A1", false, plan.test + ": p-value count mismatch");
                return;
            }
            for (std::size_t i = 0; i < mine.p_values.size(); ++i) {
                const double diff = std::fabs(mine.p_values[i].value - theirs.p_values[i].second);
                if (diff > worst) {
                    worst = diff;
                    worst_at = plan.test;
                }
                if (diff > tol) ok = false;
            }
            if (plan.test == "non_overlapping_template") {
                std::map<std::string, double> table(theirs.statistics.begin(),
                                                    theirs.statistics.end());
                for (const auto& [label, value] : mine.statistics) {
                    const auto it = table.find(label);
                    if (it == table.end()) continue;
                    const double diff = std::fabs(value - it->second);
                    if (diff > worst) {
                        worst = diff;
                        worst_at = plan.test + " table";
                    }
                    if (diff > tol) ok = false;
                }
            }
            ++compared[plan.test];
            ++done;
        }
    }
    for (const auto& name : suite_test_names()) {
        if (compared[name] < 20) {
            ok = false;
            report("A1", false, name + ": only " + std::to_string(compared[name]) +
                                    " applicable comparisons");
            return;
        }
    }
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "oracle equivalence: 15 tests x >=20 inputs, max |dp| = %.3g (tol 1e-6), %.0fs",
                  worst, elapsed_s(t0));
    report("A1", ok, detail);
}

// ------------------------------------------------------------------- A2

void criterion_a2() {
    const auto t0 = Clock::now();
    const int count = 1000;
    SuiteConfig cfg;
    cfg.jobs = 1; // sequences run in parallel instead
    static const char* names[10] = {
        "monobit",          "block_frequency",     "runs",
        "longest_run",      "binary_matrix_rank",  "spectral_dft",
        "overlapping_template", "maurers_universal",
        "linear_complexity", "approximate_entropy"};
    int pass[10] = {0}, total[10] = {0};

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        const auto bits =
            reference_generator(ReferenceKind::crypto_quality, 1000 + static_cast<std::uint64_t>(i),
                                1'000'000);
        for (int k = 0; k < 10; ++k) {
            const auto r = run_test(names[k], bits, cfg);
            if (!r.applicable) continue;
#pragma omp critical
            {
                ++total[k];
                pass[k] += r.p_values[0].value >= 0.01;
            }
        }
    }
    bool ok = true;
    std::string detail;
    for (int k = 0; k < 10; ++k) {
        const double prop = total[k] ? static_cast<double>(pass[k]) / total[k] : 0.0;
        const bool in_range = total[k] == count && prop >= 0.9806 && prop <= 0.9994;
        if (!in_range) {
            ok = false;
            detail += std::string(names[k]) + "=" + std::to_string(prop) + " ";
        }
    }
    char buf[200];
    if (ok)
        std::snprintf(buf, sizeof buf,
                      "1000 x 1e6-bit sequences, all 10 single-p tests in [0.9806, 0.9994], %.0fs",
                      elapsed_s(t0));
    else
        std::snprintf(buf, sizeof buf, "out of range: %s(%.0fs)", detail.c_str(), elapsed_s(t0));
    report("A2", ok, buf);
}

// ------------------------------------------------------------------- A3

void criterion_a3() {
    const auto t0 = Clock::now();
    const auto g = paper_device_graph();
    NoiseModel noise = NoiseModel::uniform_bias(5e-4, g.active_count(), 12345);
    SuiteConfig scfg;

    AnnealerConfig raw_cfg; // post-processing off
    const auto raw = generate_stream(g, raw_cfg, noise, 1'230'315).bits; // 2,500,000,080 bits
    const TestResult raw_monobit = monobit(raw, scfg);
    const bool raw_fails = raw_monobit.p_values[0].value < 1e-10 &&
                           raw_monobit.verdict == Verdict::non_random;

    AnnealerConfig pp_cfg;
    pp_cfg.postprocess_sampling = true; // attenuates bias by the default 0.01
    const auto pp = generate_stream(g, pp_cfg, noise, 1'230'315).bits;
    const TestResult pp_monobit = monobit(pp, scfg);
    const bool pp_passes = pp_monobit.p_values[0].value >= 0.01;

    char detail[200];
    std::snprintf(detail, sizeof detail,
                  "bias 5e-4 at n=2.5e9: monobit p=%.3g (<1e-10), post-processed p=%.3g (>=0.01), %.0fs",
                  raw_monobit.p_values[0].value, pp_monobit.p_values[0].value, elapsed_s(t0));
    report("A3", raw_fails && pp_passes, detail);
}

// ------------------------------------------------------------------- A4

void criterion_a4() {
    const auto t0 = Clock::now();
    // Smallest Chimera (one cell, 8 qubits): temporal correlation appears at
    // lag 8, within reach of the 16-bit serial window and the 10-bit
    // approximate-entropy window. Seed frozen from a pilot run.
    const std::uint64_t seed = 4;
    const auto g = build_chimera(1, 4, all_active_mask(1, 4));
    SuiteConfig scfg;

    NoiseModel corr;
    corr.rng_seed = seed;
    corr.temporal_rho = 0.01;
    const auto noisy = generate_stream(g, {}, corr, 12'500'000).bits; // 1e8 bits
    double best = 1.0;
    std::string best_name;
    for (const char* name : {"runs", "serial", "approximate_entropy"}) {
        const auto r = run_test(name, noisy, scfg);
        if (!r.applicable) continue;
        for (const auto& p : r.p_values)
            if (p.value < best) {
                best = p.value;
                best_name = name;
            }
    }
    const bool detected = best < 1e-6;

    NoiseModel ideal;
    ideal.rng_seed = seed;
    const auto clean = generate_stream(g, {}, ideal, 12'500'000).bits;
    const SuiteResult res = run_all(clean, scfg);
    bool clean_pass = res.dataset_verdict == Verdict::random;
    std::string failed;
    for (const auto& t : res.tests) {
        if (!t.applicable) continue;
        for (const auto& p : t.p_values)
            if (p.value < scfg.alpha) {
                clean_pass = false;
                failed = t.test_name;
            }
    }

    char detail[220];
    std::snprintf(detail, sizeof detail,
                  "rho=0.01 at n=1e8: min p=%.3g (%s) < 1e-6; zero-noise same seed passes all%s%s, %.0fs",
                  best, best_name.c_str(), clean_pass ? "" : " EXCEPT ", failed.c_str(),
                  elapsed_s(t0));
    report("A4", detected && clean_pass, detail);
}

// ------------------------------------------------------------------- A5

void criterion_a5() {
    auto verdict = [](std::vector<double> ps) {
        std::vector<LabeledP> labeled;
        for (const double p : ps) labeled.push_back({"p", p});
        return verdict_for(true, labeled, 0.01);
    };
    const bool ok = verdict({0.15763, 0.97128}) == Verdict::random &&
                    verdict({0.00298}) == Verdict::non_random &&
                    verdict({0.01337}) == Verdict::random &&
                    verdict({0.00952}) == Verdict::non_random;
    report("A5", ok, "published-cell verdicts reproduced (serial pair, monobit, excursion cells)");
}

// ------------------------------------------------------------------- A6

void criterion_a6() {
    const auto t0 = Clock::now();
    const std::uint64_t n = 1'000'000'000;
    const auto bits = reference_generator(ReferenceKind::crypto_quality, 6, n);
    const std::uint64_t input_bytes = bits.byte_len();

    const auto t1 = Clock::now();
    SuiteConfig cfg;
    const SuiteResult res = run_all(bits, cfg);
    const double suite_s = std::chrono::duration<double>(Clock::now() - t1).count();

    std::size_t applicable = 0, pvals = 0;
    for (const auto& t : res.tests) {
        applicable += t.applicable;
        pvals += t.p_values.size();
    }
    const std::uint64_t rss = peak_rss_bytes();
    const std::uint64_t budget = input_bytes + (2ull << 30);
    const bool ok = suite_s <= 3600.0 && rss <= budget && applicable == 15;

    char detail[240];
    std::snprintf(detail, sizeof detail,
                  "run_all on 1e9 bits: %.0fs (<=3600), peak rss %.2f GiB <= input+2GiB=%.2f GiB, "
                  "15/15 applicable, %zu p-values, %.0fs total",
                  suite_s, rss / 1073741824.0, budget / 1073741824.0, pvals, elapsed_s(t0));
    report("A6", ok, detail);
}

// ------------------------------------------------------------------- A7

void criterion_a7() {
    const auto t0 = Clock::now();
    const auto dir = fresh_dir("qaudit_acceptance_a7");
    const auto g = paper_device_graph();
    SuiteConfig scfg;

    // Canonical grid at ~1e7 bits per dataset: biased hardware for the
    // post-process-off datasets, the same models attenuated for the
    // post-process-on ones. Base seed frozen after a pilot.
    const std::uint64_t base_seed = 700;
    const double bias = 1e-3;
    std::vector<MatrixColumn> columns;
    std::uint64_t idx = 0;
    for (auto rec : canonical_experiments()) {
        NoiseModel noise = NoiseModel::uniform_bias(bias, g.active_count(), base_seed + idx++);
        AnnealerConfig acfg;
        acfg.annealing_time_us = rec.annealing_time_us;
        acfg.postprocess_sampling = rec.postprocess_sampling;
        const auto stream = generate_stream(g, acfg, noise, 4922); // 10,001,504 bits
        rec.source = "sim:" + stream.metadata.config_digest;
        columns.push_back(run_dataset(rec, stream.bits, scfg, dir / "ckpt"));
    }
    const ExperimentMatrix matrix = aggregate(columns, scfg);
    write_file_atomic(dir / "matrix.json", matrix.to_json());

    const auto summary = matrix.failure_summary(scfg.alpha);
    bool ok = true;
    std::string detail;
    for (std::size_t c = 0; c < summary.size(); ++c) {
        const bool pp = matrix.columns[c].record.postprocess_sampling;
        const auto& failed = summary[c].second;
        const bool freq_family_failed =
            std::find(failed.begin(), failed.end(), "Monobit") != failed.end() ||
            std::find(failed.begin(), failed.end(), "frequency within block") != failed.end() ||
            std::find(failed.begin(), failed.end(), "cumulative sums") != failed.end();
        const bool core_failed =
            std::find(failed.begin(), failed.end(), "Monobit") != failed.end() ||
            std::find(failed.begin(), failed.end(), "frequency within block") != failed.end() ||
            std::find(failed.begin(), failed.end(), "Runs") != failed.end();
        if (pp && core_failed) {
            ok = false;
            detail += summary[c].first + " (pp) fails a frequency test; ";
        }
        if (!pp && !freq_family_failed) {
            ok = false;
            detail += summary[c].first + " (raw) passes the frequency family; ";
        }
    }
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "8-dataset canonical grid at 1e7 bits: raw columns fail, post-processed columns "
                  "clean on {monobit, block frequency, runs}%s%s, %.0fs",
                  ok ? "" : " -- ", detail.c_str(), elapsed_s(t0));
    report("A7", ok, buf);
}

// ------------------------------------------------------------------- A8

void criterion_a8() {
    const auto t0 = Clock::now();
    const auto dir = fresh_dir("qaudit_acceptance_a8");
    write_packed(reference_generator(ReferenceKind::crypto_quality, 81, 1'000'000),
                 dir / "d1.bits");
    write_packed(reference_generator(ReferenceKind::crypto_quality, 82, 1'000'000),
                 dir / "d2.bits");
    std::ofstream(dir / "plan.json")
        << R"({"datasets":[{"id":"d1","bits_file":")" << (dir / "d1.bits").string()
        << R"("},{"id":"d2","bits_file":")" << (dir / "d2.bits").string() << R"("}]})";
    const std::string args = "experiment --plan " + (dir / "plan.json").string() +
                             " --checkpoints " + (dir / "ckpt").string() + " --out " +
                             (dir / "matrix.json").string();
    bool ok = run_cli(args) == 0;
    const std::string expected = read_file(dir / "matrix.json");

    fs::remove_all(dir / "ckpt");
    fs::remove(dir / "matrix.json");
    const char* bin = std::getenv("QRNG_AUDIT_BIN");
    const std::string crash_cmd =
        "env QRNG_AUDIT_ABORT_AFTER_CHECKPOINTS=11 " + std::string(bin ? bin : "") + " " + args +
        " > /dev/null 2>&1";
    const int crash_status = std::system(crash_cmd.c_str());
    const bool crashed = WIFEXITED(crash_status) && WEXITSTATUS(crash_status) == 9;
    ok = ok && crashed && !fs::exists(dir / "matrix.json");

    ok = ok && run_cli(args) == 0;
    ok = ok && read_file(dir / "matrix.json") == expected && !expected.empty();

    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "experiment killed mid-run resumes to a byte-identical matrix (%zu bytes), %.0fs",
                  expected.size(), elapsed_s(t0));
    report("A8", ok, detail);
}

// Supplementary spec-example check: the frozen crypto stream exits 0 end to
// end through the CLI.
void crypto_cli_check() {
    const auto t0 = Clock::now();
    const auto dir = fresh_dir("qaudit_acceptance_cli");
    write_packed(reference_generator(ReferenceKind::crypto_quality, 1, 100'000'000),
                 dir / "crypto.bits");
    const int code = run_cli("test --bits " + (dir / "crypto.bits").string() + " --out " +
                             (dir / "res.json").string());
    char detail[140];
    std::snprintf(detail, sizeof detail, "cmd_test on 1e8 crypto bits (frozen seed) exits %d, %.0fs",
                  code, elapsed_s(t0));
    report("CLI", code == 0, detail);
}

} // namespace

int main() {
    const auto t0 = Clock::now();
    std::printf("acceptance suite (threads: %d)\n", omp_get_max_threads());
    criterion_a5(); // cheap sanity first
    criterion_a1();
    criterion_a4();
    criterion_a3();
    criterion_a7();
    criterion_a8();
    crypto_cli_check();
    criterion_a6();
    criterion_a2();
    std::printf("acceptance total: %.0fs, %d failure(s)\n", elapsed_s(t0), g_failures);
    return g_failures == 0 ? 0 : 1;
}
