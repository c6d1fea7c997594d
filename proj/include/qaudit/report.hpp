#pragma once

#include <string>

#include "qaudit/experiment.hpp"

namespace qaudit {

enum class ReportFormat { markdown, csv, plain };

ReportFormat report_format_from_string(const std::string& s);

struct RenderedReport {
    ReportFormat format;
    std::string body;
    std::string summary;
};

// Deterministic rendering of a verdict matrix. P-values print with 5 decimal
// places; every value below alpha is flagged. The summary lists failed rows
// and an overall verdict per dataset.
RenderedReport render(const ExperimentMatrix& matrix, ReportFormat format,
                      double alpha = kDefaultAlpha);

} // namespace qaudit
