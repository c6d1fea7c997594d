#include "qaudit/report.hpp"

#include <cstdio>

#include "qaudit/errors.hpp"

namespace qaudit {

namespace {

std::string fmt_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", p);
    return buf;
}

std::string cell_text(const MatrixRow& row, double alpha, bool mark_flags) {
    if (row.verdict == Verdict::not_applicable || row.p_values.empty()) return "NA";
    std::string s;
    for (std::size_t i = 0; i < row.p_values.size(); ++i) {
        if (i) s += ";";
        s += fmt_p(row.p_values[i]);
        if (mark_flags && row.p_values[i] < alpha) s += "*";
    }
    return s;
}

std::string summary_text(const ExperimentMatrix& matrix, double alpha) {
    std::string s;
    if (matrix.columns.empty()) return "no datasets\n";
    for (const auto& [id, failed] : matrix.failure_summary(alpha)) {
        s += id + ": ";
        if (failed.empty()) {
            s += "pass (no test below alpha)\n";
        } else {
            s += "FAIL (" + std::to_string(failed.size()) + " failed): ";
            for (std::size_t i = 0; i < failed.size(); ++i) {
                if (i) s += ", ";
                s += failed[i];
            }
            s += "\n";
        }
    }
    return s;
}

} // namespace

ReportFormat report_format_from_string(const std::string& s) {
    if (s == "markdown" || s == "md") return ReportFormat::markdown;
    if (s == "csv") return ReportFormat::csv;
    if (s == "plain" || s == "text") return ReportFormat::plain;
    throw ConfigError("unknown report format: " + s);
}

RenderedReport render(const ExperimentMatrix& matrix, ReportFormat format, double alpha) {
    RenderedReport out;
    out.format = format;
    out.summary = summary_text(matrix, alpha);

    std::vector<std::vector<MatrixRow>> expanded;
    for (const auto& c : matrix.columns) expanded.push_back(expand_rows(c.tests));

    switch (format) {
        case ReportFormat::markdown: {
            std::string& b = out.body;
            b = "| Test name |";
            for (const auto& c : matrix.columns) b += " " + c.record.dataset_id + " |";
            b += "\n|---|";
            for (std::size_t i = 0; i < matrix.columns.size(); ++i) b += "---|";
            b += "\n";
            for (std::size_t r = 0; r < matrix.row_labels.size(); ++r) {
                b += "| " + matrix.row_labels[r] + " |";
                for (std::size_t c = 0; c < matrix.columns.size(); ++c) {
                    const auto& row = expanded[c][r];
                    std::string cell = cell_text(row, alpha, false);
                    if (row.verdict != Verdict::not_applicable) {
                        bool flagged = false;
                        for (const double p : row.p_values) flagged |= p < alpha;
                        if (flagged) cell = "**" + cell + "***"; // bold + trailing marker
                    }
                    b += " " + cell + " |";
                }
                b += "\n";
            }
            b += "\n";
            b += summary_text(matrix, alpha);
            break;
        }
        case ReportFormat::csv: {
            // Numeric cells stay parseable; flags and the per-dataset summary
            // ride behind '#' comment lines.
            out.body = matrix.to_csv();
            out.body += "\n";
            for (const auto& line : matrix.failure_summary(alpha)) {
                out.body += "# " + line.first + ":";
                if (line.second.empty()) {
                    out.body += " pass";
                } else {
                    for (const auto& f : line.second) out.body += " [" + f + "]";
                }
                out.body += "\n";
            }
            break;
        }
        case ReportFormat::plain: {
            std::string& b = out.body;
            std::size_t width = 0;
            for (const auto& l : matrix.row_labels) width = std::max(width, l.size());
            b += std::string(width, ' ') + "  ";
            for (const auto& c : matrix.columns) b += c.record.dataset_id + "  ";
            b += "\n";
            for (std::size_t r = 0; r < matrix.row_labels.size(); ++r) {
                std::string line = matrix.row_labels[r];
                line.resize(width, ' ');
                b += line + "  ";
                for (std::size_t c = 0; c < matrix.columns.size(); ++c)
                    b += cell_text(expanded[c][r], alpha, true) + "  ";
                b += "\n";
            }
            b += "\n" + summary_text(matrix, alpha);
            break;
        }
    }
    return out;
}

} // namespace qaudit
