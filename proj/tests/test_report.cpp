#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "qaudit/errors.hpp"
#include "qaudit/experiment.hpp"
#include "qaudit/report.hpp"

using namespace qaudit;
namespace fs = std::filesystem;

namespace {

// Builds a single-column matrix with hand-placed p-values so the rendering
// rules can be checked against exact cells.
ExperimentMatrix synthetic_matrix(double monobit_p, double second_serial_p = 0.5) {
    SuiteConfig cfg;
    MatrixColumn col;
    col.record.dataset_id = "d1";
    col.record.source = "synthetic";
    col.record.bit_count = 1000;
    col.suite_digest = cfg.digest();
    for (const auto& name : suite_test_names()) {
        TestResult t;
        t.test_name = name;
        t.applicable = true;
        if (name == "serial" || name == "cumulative_sums") {
            t.p_values = {{"p1", 0.5}, {"p2", second_serial_p}};
        } else if (name == "random_excursions") {
            for (int x = -4; x <= 4; ++x)
                if (x != 0) t.p_values.push_back({"x = " + std::to_string(x), 0.5});
        } else if (name == "random_excursions_variant") {
            for (int x = -9; x <= 9; ++x)
                if (x != 0) t.p_values.push_back({"x = " + std::to_string(x), 0.5});
        } else if (name == "monobit") {
            t.p_values = {{"p", monobit_p}};
        } else {
            t.p_values = {{"p", 0.5}};
        }
        t.verdict = verdict_for(true, t.p_values, cfg.alpha);
        col.tests.push_back(std::move(t));
    }
    return aggregate({col}, cfg);
}

} // namespace

TEST_CASE("flagging is exactly p < alpha") {
    // 0.00952 must be flagged at alpha 0.01; exactly 0.01 must not be.
    const auto failing = synthetic_matrix(0.00952);
    const auto rep = render(failing, ReportFormat::plain, 0.01);
    CHECK(rep.body.find("0.00952*") != std::string::npos);
    CHECK(rep.summary.find("d1: FAIL") != std::string::npos);
    CHECK(rep.summary.find("Monobit") != std::string::npos);

    const auto boundary = synthetic_matrix(0.01);
    const auto rep2 = render(boundary, ReportFormat::plain, 0.01);
    CHECK(rep2.body.find("0.01000*") == std::string::npos);
    CHECK(rep2.summary.find("d1: pass") != std::string::npos);
}

TEST_CASE("five decimal places; tiny values display as zero") {
    const auto m = synthetic_matrix(1.5e-23);
    const auto rep = render(m, ReportFormat::plain, 0.01);
    CHECK(rep.body.find("0.00000*") != std::string::npos);
    // Full precision survives in the matrix serialization.
    CHECK(m.to_json().find("1.5e-23") != std::string::npos);
}

TEST_CASE("markdown table renders rows and bolds failures") {
    const auto m = synthetic_matrix(0.001);
    const auto rep = render(m, ReportFormat::markdown, 0.01);
    CHECK(rep.body.find("| Test name | d1 |") != std::string::npos);
    CHECK(rep.body.find("| Monobit | **0.00100*** |") != std::string::npos);
    CHECK(rep.body.find("| Serial | 0.50000;0.50000 |") != std::string::npos);
}

TEST_CASE("csv rendering re-parses to the same numeric values") {
    const auto m = synthetic_matrix(0.00952);
    const auto rep = render(m, ReportFormat::csv, 0.01);
    std::istringstream in(rep.body);
    std::string line;
    std::getline(in, line);
    CHECK(line == "Test name,d1");
    std::size_t rows = 0;
    bool monobit_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        ++rows;
        const auto comma = line.rfind(',');
        const std::string label = line.substr(0, comma);
        const std::string cell = line.substr(comma + 1);
        if (label == "Monobit") {
            monobit_seen = true;
            CHECK(std::stod(cell) == doctest::Approx(0.00952));
        }
        // Every numeric fragment must re-parse at printed precision.
        std::istringstream cells(cell);
        std::string frag;
        while (std::getline(cells, frag, ';')) {
            if (frag == "NA") continue;
            const double v = std::stod(frag);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.5f", v);
            CHECK(frag == buf);
        }
    }
    CHECK(rows == 39);
    CHECK(monobit_seen);
    // Failure annotations ride behind comment lines.
    CHECK(rep.body.find("# d1: [Monobit]") != std::string::npos);
}

TEST_CASE("empty matrix renders a header and a no-datasets summary") {
    SuiteConfig cfg;
    const auto m = aggregate({}, cfg);
    const auto rep = render(m, ReportFormat::plain, 0.01);
    CHECK(rep.summary == "no datasets\n");
    CHECK(rep.body.find("no datasets") != std::string::npos);
}

TEST_CASE("rendering is deterministic") {
    const auto m = synthetic_matrix(0.25);
    for (const auto fmt : {ReportFormat::markdown, ReportFormat::csv, ReportFormat::plain}) {
        const auto a = render(m, fmt, 0.01);
        const auto b = render(m, fmt, 0.01);
        CHECK(a.body == b.body);
        CHECK(a.summary == b.summary);
    }
}

TEST_CASE("unknown format string is rejected") {
    CHECK_THROWS_AS(report_format_from_string("pdf"), ConfigError);
    CHECK(report_format_from_string("md") == ReportFormat::markdown);
}
