// Experiment reports: a small lossless record of one empirical check, with
// line-oriented text and JSON serialisations.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace heckesign {

struct ExperimentReport {
    std::string id;
    std::vector<std::pair<std::string, std::string>> params; // insertion order kept
    std::vector<double> observed; // scalar = single element
    std::vector<double> expected;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool verdict = false; // pass iff deviation <= tolerance

    friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// %.17g formatting; round-trips every double bit-exactly.
std::string format_double(double v);

std::string report_to_text(const ExperimentReport& r);
ExperimentReport report_from_text(const std::string& text);

/// One JSON object per report: {id, params, observed, expected, deviation, verdict}.
std::string report_to_json(const ExperimentReport& r);

} // namespace heckesign
