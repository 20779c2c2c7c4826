#include "fdrs/app/svm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace fdrs::app {

namespace {

std::string where(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line) + ": ";
}

template <class T>
bool parse_number(std::string_view s, T& out) {
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

double squared_distance(const SparseRow& a, const SparseRow& b) {
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        double d;
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            d = a[i++].second;
        } else if (i == a.size() || b[j].first < a[i].first) {
            d = b[j++].second;
        } else {
            d = a[i++].second - b[j++].second;
        }
        sum += d * d;
    }
    return sum;
}

}  // namespace

SvmDataset read_svm(std::istream& in, const std::string& source) {
    SvmDataset ds;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::string tok;
        if (!(tokens >> tok)) continue;

        std::string_view label_text(tok);
        if (!label_text.empty() && label_text.front() == '+') label_text.remove_prefix(1);
        double label = 0.0;
        if (!parse_number(label_text, label)) throw ParseError(where(source, lineno) + "bad label '" + tok + "'");
        if (label != 1.0 && label != -1.0) {
            throw ParseError(where(source, lineno) + "label must be +1 or -1, got '" + tok + "'");
        }
        SparseRow row;
        while (tokens >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos) throw ParseError(where(source, lineno) + "expected idx:val, got '" + tok + "'");
            int idx = 0;
            double val = 0.0;
            if (!parse_number(std::string_view(tok).substr(0, colon), idx) || idx < 1) {
                throw ParseError(where(source, lineno) + "bad feature index in '" + tok + "'");
            }
            if (!parse_number(std::string_view(tok).substr(colon + 1), val) || !std::isfinite(val)) {
                throw ParseError(where(source, lineno) + "bad feature value in '" + tok + "'");
            }
            if (!row.empty() && idx <= row.back().first) {
                throw ParseError(where(source, lineno) + "feature indices must be strictly increasing");
            }
            row.emplace_back(idx, val);
            ds.dim = std::max(ds.dim, idx);
        }
        ds.samples.push_back(std::move(row));
        ds.labels.push_back(label > 0 ? 1 : -1);
    }
    if (in.bad()) throw ParseError(source + ": read error");
    return ds;
}

SvmDataset load_svm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_svm(in, path);
}

void write_svm(std::ostream& out, const SvmDataset& ds) {
    char buf[64];
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out << (ds.labels[i] > 0 ? "+1" : "-1");
        for (const auto& [idx, val] : ds.samples[i]) {
            auto res = std::to_chars(buf, buf + sizeof buf, val);
            out << ' ' << idx << ':' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
        }
        out << '\n';
    }
}

QpSpec build_dual_svm_qp(const SvmDataset& ds, double kernel_scale, double box_upper, double linear,
                         unsigned threads) {
    const auto n = static_cast<Index>(ds.size());
    if (n == 0) throw ParameterError("build_dual_svm_qp: empty dataset");
    if (!(kernel_scale > 0.0)) throw ParameterError("build_dual_svm_qp: kernel_scale must be positive");
    if (!(box_upper > 0.0)) throw ParameterError("build_dual_svm_qp: box_upper must be positive");

    QpSpec qp;
    qp.Q.resize(n, n);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<Index>(threads, n));

    // Row i fills Q(i, j) and Q(j, i) for j >= i, so workers never share an entry.
    auto fill_rows = [&](Index begin, Index end) {
        for (Index i = begin; i < end; ++i) {
            for (Index j = i; j < n; ++j) {
                const double k = std::exp(-kernel_scale * squared_distance(ds.samples[static_cast<std::size_t>(i)],
                                                                           ds.samples[static_cast<std::size_t>(j)]));
                const double v = ds.labels[static_cast<std::size_t>(i)] * ds.labels[static_cast<std::size_t>(j)] * k;
                qp.Q(i, j) = v;
                qp.Q(j, i) = v;
            }
        }
    };
    // Interleaved blocks balance the triangular workload.
    const Index block = std::max<Index>(1, n / (8 * static_cast<Index>(threads)));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (Index start = static_cast<Index>(t) * block; start < n; start += static_cast<Index>(threads) * block) {
                fill_rows(start, std::min(n, start + block));
            }
        });
    }
    for (auto& th : pool) th.join();

    qp.c = Vector::Constant(n, linear);
    qp.lower = Vector::Zero(n);
    qp.upper = Vector::Constant(n, box_upper);
    qp.A.resize(1, n);
    for (Index i = 0; i < n; ++i) qp.A(0, i) = ds.labels[static_cast<std::size_t>(i)];
    qp.b = Vector::Zero(1);
    return qp;
}

SvmDataset synthetic_svm_dataset(std::size_t n, int dim, int active, std::uint64_t seed) {
    if (dim <= 0 || active <= 0 || active > dim) throw ParameterError("synthetic_svm_dataset: bad shape");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> w(static_cast<std::size_t>(dim));
    for (auto& x : w) x = normal(rng);

    // `active` one-hot groups partitioning the features; within a group the
    // j-th feature is drawn with weight 0.1^j, so most rows share most features.
    std::vector<std::discrete_distribution<int>> groups;
    std::vector<int> first;
    for (int g = 0; g < active; ++g) {
        const int lo = g * dim / active;
        const int hi = (g + 1) * dim / active;
        std::vector<double> weights;
        for (int j = lo; j < hi; ++j) weights.push_back(std::pow(0.1, j - lo));
        groups.emplace_back(weights.begin(), weights.end());
        first.push_back(lo + 1);
    }

    SvmDataset ds;
    for (std::size_t i = 0; i < n; ++i) {
        SparseRow row;
        for (int g = 0; g < active; ++g) {
            row.emplace_back(first[static_cast<std::size_t>(g)] + groups[static_cast<std::size_t>(g)](rng), 1.0);
        }
        double score = 0.5 * normal(rng);
        for (const auto& [idx, val] : row) score += w[static_cast<std::size_t>(idx - 1)] * val;
        ds.labels.push_back(score >= 0.0 ? 1 : -1);
        ds.dim = std::max(ds.dim, row.back().first);
        ds.samples.push_back(std::move(row));
    }
    return ds;
}

}  // namespace fdrs::app
