#pragma once

#include "fdrs/problems.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fdrs::app {

using SparseRow = std::vector<std::pair<int, double>>;  // 1-based feature index, value

struct SvmDataset {
    std::vector<SparseRow> samples;
    std::vector<int> labels;  // +1 or -1
    int dim = 0;              // largest feature index seen

    std::size_t size() const noexcept { return samples.size(); }
};

/// Raised for malformed input; the message names the line.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads `label idx:val idx:val ...` lines; blank lines and `#` comments are skipped.
SvmDataset load_svm_file(const std::string& path);
SvmDataset read_svm(std::istream& in, const std::string& source = "<stream>");
void write_svm(std::ostream& out, const SvmDataset& ds);

/// Q_ij = y_i y_j exp(-kernel_scale ||x_i - x_j||^2), box [0, box_upper]^n,
/// A = y^T, b = 0, c = linear (default -1).  Rows are assembled in parallel
/// blocks; every entry is computed independently of the worker count.
QpSpec build_dual_svm_qp(const SvmDataset& ds, double kernel_scale = 0.125, double box_upper = 10.0,
                         double linear = -1.0, unsigned threads = 0);

/// Sparse binary data shaped like the a7a benchmark: `dim` features split
/// into `active` one-hot groups with skewed frequencies, labels from a noisy
/// linear rule.
SvmDataset synthetic_svm_dataset(std::size_t n, int dim = 123, int active = 14, std::uint64_t seed = 7);

}  // namespace fdrs::app
