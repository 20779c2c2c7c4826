#pragma once

#include "fdrs/certificates.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace fdrs::app {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

inline constexpr const char* kTraceHeader = "k,fpr_sq,objective_at_xh,objective_split,feasibility,lambda";

void write_trace_csv(std::ostream& out, const IterationTrace& trace);
void write_trace_csv(const std::filesystem::path& path, const IterationTrace& trace);

using Series = std::vector<std::pair<long, double>>;
/// `k<TAB>value` lines.
void write_series_tsv(const std::filesystem::path& path, const Series& series);

nlohmann::json to_json(const CertificateEntry& e);
nlohmann::json to_json(const RateReport& r);
/// Non-finite values become strings ("inf", "-inf", "nan").
nlohmann::json number(double x);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Raised when an output file cannot be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fdrs::app
