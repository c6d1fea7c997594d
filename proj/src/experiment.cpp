#include "qaudit/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "qaudit/bit_io.hpp"
#include "qaudit/errors.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace qaudit {

std::vector<DatasetRecord> canonical_experiments() {
    // The study's enumeration order: post-processing on for tests 1-4, off
    // for tests 5-8, each sweeping 1, 2000, 10, 100 microseconds.
    const double times[4] = {1, 2000, 10, 100};
    std::vector<DatasetRecord> out;
    for (int i = 0; i < 8; ++i) {
        DatasetRecord r;
        r.dataset_id = "test" + std::to_string(i + 1);
        r.annealing_time_us = times[i % 4];
        r.postprocess_sampling = i < 4;
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

// Fault-injection hook: abort the process after N checkpoint writes. Used to
// exercise resume behavior from tests.
std::atomic<long> g_checkpoints_until_abort{-2};

void maybe_abort_after_checkpoint() {
    if (g_checkpoints_until_abort.load() == -2) {
        const char* env = std::getenv("QRNG_AUDIT_ABORT_AFTER_CHECKPOINTS");
        g_checkpoints_until_abort.store(env ? std::atol(env) : -1);
    }
    long v = g_checkpoints_until_abort.load();
    if (v < 0) return;
    v = g_checkpoints_until_abort.fetch_sub(1) - 1;
    if (v <= 0) {
        std::fprintf(stderr, "fault injection: aborting after checkpoint write\n");
        _exit(9);
    }
}

ordered_json record_to_json(const DatasetRecord& r) {
    ordered_json j;
    j["dataset_id"] = r.dataset_id;
    j["annealing_time_us"] = r.annealing_time_us;
    j["postprocess_sampling"] = r.postprocess_sampling;
    j["bit_count"] = r.bit_count;
    j["source"] = r.source;
    return j;
}

DatasetRecord record_from_json(const ordered_json& j) {
    DatasetRecord r;
    r.dataset_id = j.at("dataset_id").get<std::string>();
    r.annealing_time_us = j.at("annealing_time_us").get<double>();
    r.postprocess_sampling = j.at("postprocess_sampling").get<bool>();
    r.bit_count = j.at("bit_count").get<std::uint64_t>();
    r.source = j.at("source").get<std::string>();
    return r;
}

} // namespace

MatrixColumn run_dataset(const DatasetRecord& record, const BitSequence& bits,
                         const SuiteConfig& cfg, const fs::path& checkpoint_dir) {
    cfg.validate();
    const std::string digest = cfg.digest();
    const fs::path dir = checkpoint_dir / record.dataset_id;
    fs::create_directories(dir);

    MatrixColumn col;
    col.record = record;
    col.record.bit_count = bits.bit_len();
    col.suite_digest = digest;

    for (const auto& name : suite_test_names()) {
        const fs::path cp = dir / (name + ".result");
        if (fs::exists(cp)) {
            std::ifstream in(cp);
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            ordered_json j;
            try {
                j = ordered_json::parse(text);
            } catch (const nlohmann::json::exception& e) {
                throw CheckpointMismatchError("unreadable checkpoint " + cp.string() + ": " + e.what());
            }
            if (j.value("suite_digest", "") != digest)
                throw CheckpointMismatchError("checkpoint " + cp.string() +
                                              " was produced under a different suite config; "
                                              "use a fresh checkpoint directory");
            col.tests.push_back(TestResult::from_json(j.at("result").dump()));
            continue;
        }
        TestResult result = run_test(name, bits, cfg);
        ordered_json wrap;
        wrap["suite_digest"] = digest;
        wrap["result"] = ordered_json::parse(result.to_json());
        write_file_atomic(cp, wrap.dump(2) + "\n");
        maybe_abort_after_checkpoint();
        col.tests.push_back(std::move(result));
    }
    return col;
}

ExperimentMatrix aggregate(const std::vector<MatrixColumn>& columns, const SuiteConfig& cfg) {
    ExperimentMatrix m;
    m.row_labels = table_row_labels();
    m.suite_digest = cfg.digest();
    for (const auto& c : columns) {
        if (c.suite_digest != m.suite_digest)
            throw ConfigError("column " + c.record.dataset_id +
                              " was computed under a different suite config");
        m.columns.push_back(c);
    }
    return m;
}

std::string ExperimentMatrix::to_json() const {
    ordered_json j;
    j["suite_digest"] = suite_digest;
    j["rows"] = row_labels;
    ordered_json cols = ordered_json::array();
    for (const auto& c : columns) {
        ordered_json cj;
        cj["dataset"] = record_to_json(c.record);
        cj["suite_digest"] = c.suite_digest;
        ordered_json tests = ordered_json::array();
        for (const auto& t : c.tests) tests.push_back(ordered_json::parse(t.to_json()));
        cj["tests"] = tests;
        cols.push_back(cj);
    }
    j["columns"] = cols;
    return j.dump(2) + "\n";
}

ExperimentMatrix ExperimentMatrix::from_json(const std::string& text) {
    ExperimentMatrix m;
    try {
        const auto j = ordered_json::parse(text);
        m.suite_digest = j.at("suite_digest").get<std::string>();
        m.row_labels = j.at("rows").get<std::vector<std::string>>();
        for (const auto& cj : j.at("columns")) {
            MatrixColumn c;
            c.record = record_from_json(cj.at("dataset"));
            c.suite_digest = cj.at("suite_digest").get<std::string>();
            for (const auto& tj : cj.at("tests"))
                c.tests.push_back(TestResult::from_json(tj.dump()));
            m.columns.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad matrix json: ") + e.what());
    }
    return m;
}

std::string ExperimentMatrix::to_csv() const {
    std::string out = "Test name";
    for (const auto& c : columns) out += "," + c.record.dataset_id;
    out += "\n";
    std::vector<std::vector<MatrixRow>> expanded;
    for (const auto& c : columns) expanded.push_back(expand_rows(c.tests));
    for (std::size_t r = 0; r < row_labels.size(); ++r) {
        out += row_labels[r];
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out += ",";
            const auto& row = expanded[c][r];
            if (row.verdict == Verdict::not_applicable || row.p_values.empty()) {
                out += "NA";
                continue;
            }
            char buf[32];
            for (std::size_t i = 0; i < row.p_values.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.5f", row.p_values[i]);
                if (i) out += ";";
                out += buf;
            }
        }
        out += "\n";
    }
    return out;
}

std::vector<std::pair<std::string, std::vector<std::string>>> ExperimentMatrix::failure_summary(
    double alpha) const {
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    for (const auto& c : columns) {
        std::vector<std::string> failed;
        for (const auto& row : expand_rows(c.tests)) {
            if (row.verdict == Verdict::not_applicable) continue;
            for (const double p : row.p_values) {
                if (p < alpha) {
                    failed.push_back(row.row_label);
                    break;
                }
            }
        }
        out.emplace_back(c.record.dataset_id, std::move(failed));
    }
    return out;
}

} // namespace qaudit
