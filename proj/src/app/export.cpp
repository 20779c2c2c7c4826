#include "fdrs/app/export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace fdrs::app {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
    out << kTraceHeader << '\n';
    for (const auto& r : trace.records) {
        out << r.k << ',' << format_double(r.fpr_sq) << ',' << format_double(r.objective_at_xh) << ','
            << format_double(r.objective_split) << ',' << format_double(r.feasibility) << ','
            << format_double(r.lambda) << '\n';
    }
}

void write_trace_csv(const std::filesystem::path& path, const IterationTrace& trace) {
    auto out = open_out(path);
    write_trace_csv(out, trace);
    finish(out, path);
}

void write_series_tsv(const std::filesystem::path& path, const Series& series) {
    auto out = open_out(path);
    for (const auto& [k, v] : series) out << k << '\t' << format_double(v) << '\n';
    finish(out, path);
}

nlohmann::json number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

nlohmann::json to_json(const CertificateEntry& e) {
    nlohmann::json j{{"name", e.name},
                     {"anchor", e.anchor},
                     {"pass", e.pass},
                     {"worst_violation", number(e.worst_violation)},
                     {"at_iteration", e.at_iteration},
                     {"first_violation", e.first_violation},
                     {"tolerance", number(e.tolerance)}};
    if (e.ratio) j["ratio"] = number(*e.ratio);
    return j;
}

nlohmann::json to_json(const RateReport& r) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : r.entries) entries.push_back(to_json(e));
    return {{"all_pass", r.all_pass()}, {"tolerance", number(r.tolerance)}, {"entries", std::move(entries)}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

}  // namespace fdrs::app
