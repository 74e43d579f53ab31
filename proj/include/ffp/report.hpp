#pragma once

// Convergence tables produced by the experiment drivers, and their emission as
// CSV + JSON sidecar + two-column curve files.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ffp/scalar.hpp"

namespace ffp {

struct Metric {
    std::string name;
    std::string text;  // exact rational or full-precision decimal
    double value = 0;
};

struct ReportRow {
    std::size_t n = 0;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> candidate;  // signed coefficients
    std::vector<std::string> target;
    std::vector<Metric> metrics;

    const Metric* find(const std::string& name) const;
    double value(const std::string& name) const;  // throws if absent
};

struct Curve {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct ExperimentReport {
    std::string id;
    ScalarMode mode = ScalarMode::rational;
    unsigned precision_bits = 0;  // effective BigFloat precision, 0 in rational mode
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<std::uint64_t> seeds;
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;  // profile mismatches, degenerate rows
    nlohmann::ordered_json certificates = nlohmann::ordered_json::array();
    std::vector<Curve> curves;
    double wall_clock_seconds = 0;  // written to a separate timing file

    /// Rows sorted by (n, seed).
    void sort_rows();
    std::vector<double> column(const std::string& metric) const;
};

template <Scalar T>
Metric make_metric(std::string name, const T& v) {
    return Metric{std::move(name), format_scalar(v), to_double(v)};
}

/// True when every entry is strictly smaller than the one before.
bool strictly_decreasing(const std::vector<double>& xs);

struct EmittedFiles {
    std::filesystem::path csv;
    std::filesystem::path sidecar;
    std::filesystem::path timing;
    std::vector<std::filesystem::path> curves;
};

/// Writes <id>.csv (experiment,n,seed,metric,value), <id>.json and one
/// <id>.<curve>.dat per curve into `dir`. Wall-clock goes to <id>.timing.json so
/// the other files stay byte-identical between runs.
EmittedFiles emit_report(const ExperimentReport& report, const std::filesystem::path& dir);

nlohmann::ordered_json report_to_json(const ExperimentReport& report);

}  // namespace ffp
