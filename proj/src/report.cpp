#include "ffp/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ffp {

const Metric* ReportRow::find(const std::string& name) const {
    for (const auto& m : metrics)
        if (m.name == name) return &m;
    return nullptr;
}

double ReportRow::value(const std::string& name) const {
    if (const auto* m = find(name)) return m->value;
    throw ParameterError("row has no metric '" + name + "'");
}

void ExperimentReport::sort_rows() {
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        if (a.n != b.n) return a.n < b.n;
        return a.seed.value_or(0) < b.seed.value_or(0);
    });
}

std::vector<double> ExperimentReport::column(const std::string& metric) const {
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.value(metric));
    return out;
}

bool strictly_decreasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] < xs[i - 1])) return false;
    return true;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
    nlohmann::ordered_json j;
    j["experiment"] = report.id;
    j["scalar_mode"] = std::string(to_string(report.mode));
    j["precision_bits"] = report.precision_bits;
    j["config"] = report.config;
    j["seeds"] = report.seeds;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json row;
        row["n"] = r.n;
        if (r.seed) row["seed"] = *r.seed;
        row["candidate"] = r.candidate;
        row["target"] = r.target;
        nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
        for (const auto& m : r.metrics) metrics[m.name] = m.text;
        row["metrics"] = metrics;
        rows.push_back(row);
    }
    j["rows"] = rows;
    j["notes"] = report.notes;
    j["certificates"] = report.certificates;
    return j;
}

EmittedFiles emit_report(const ExperimentReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    EmittedFiles files;
    files.csv = dir / (report.id + ".csv");
    files.sidecar = dir / (report.id + ".json");
    files.timing = dir / (report.id + ".timing.json");

    std::ostringstream csv;
    csv << "experiment,n,seed,metric,value\n";
    for (const auto& r : report.rows)
        for (const auto& m : r.metrics)
            csv << csv_field(report.id) << ',' << r.n << ',' << (r.seed ? std::to_string(*r.seed) : std::string()) << ','
                << csv_field(m.name) << ',' << csv_field(m.text) << '\n';
    write_file(files.csv, csv.str());
    write_file(files.sidecar, report_to_json(report).dump(2) + "\n");

    nlohmann::ordered_json timing;
    timing["experiment"] = report.id;
    timing["wall_clock_seconds"] = report.wall_clock_seconds;
    write_file(files.timing, timing.dump(2) + "\n");

    for (const auto& c : report.curves) {
        auto path = dir / (report.id + "." + c.name + ".dat");
        std::ostringstream os;
        os << "# " << c.name << "\n";
        for (const auto& [x, y] : c.points) os << format_double(x) << ' ' << format_double(y) << '\n';
        write_file(path, os.str());
        files.curves.push_back(path);
    }
    return files;
}

}  // namespace ffp
