#include "doctest.h"

#include "fdrs/app/commands.hpp"
#include "fdrs/app/experiments.hpp"
#include "fdrs/app/export.hpp"
#include "fdrs/app/svm.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace fdrs;
using namespace fdrs::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("fdrs_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json report(const fs::path& dir) {
    return nlohmann::json::parse(slurp(dir / "report.json"));
}

}  // namespace

TEST_CASE("svm parsing") {
    std::istringstream in("# header\n+1 1:0.5 3:1\n\n-1 2:2  # trailing\n");
    const auto ds = read_svm(in);
    REQUIRE(ds.size() == 2);
    CHECK(ds.labels == std::vector<int>{1, -1});
    CHECK(ds.dim == 3);
    CHECK(ds.samples[0] == SparseRow{{1, 0.5}, {3, 1.0}});

    for (const char* bad : {"2 1:1\n", "x 1:1\n", "+1 1-1\n", "+1 0:1\n", "+1 a:1\n", "+1 1:z\n", "+1 3:1 2:1\n"}) {
        std::istringstream b(bad);
        CHECK_THROWS_AS(read_svm(b, "bad.svm"), ParseError);
    }
    std::istringstream b("+1 1:1\n-1 2:1 2:3\n");
    try {
        read_svm(b, "f.svm");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("f.svm:2:", 0) == 0);
    }
    CHECK_THROWS_AS(load_svm_file("/nonexistent/file.svm"), std::exception);
}

TEST_CASE("svm round trip") {
    const auto ds = synthetic_svm_dataset(40, 30, 5, 3);
    std::ostringstream out;
    write_svm(out, ds);
    std::istringstream in(out.str());
    const auto back = read_svm(in);
    CHECK(back.labels == ds.labels);
    CHECK(back.samples == ds.samples);
}

TEST_CASE("dual SVM QP entries") {
    SvmDataset ds;
    ds.samples = {{{1, 1.0}}, {{2, 1.0}}, {{1, 1.0}, {2, 1.0}}};
    ds.labels = {1, -1, 1};
    ds.dim = 2;
    const auto qp = build_dual_svm_qp(ds);
    CHECK(qp.Q(0, 0) == 1.0);
    CHECK(qp.Q(0, 1) == doctest::Approx(-std::exp(-0.25)).epsilon(1e-15));
    CHECK(qp.Q(0, 2) == doctest::Approx(std::exp(-0.125)).epsilon(1e-15));
    CHECK(qp.Q(1, 2) == doctest::Approx(-std::exp(-0.125)).epsilon(1e-15));
    CHECK((qp.Q - qp.Q.transpose()).norm() == 0.0);
    CHECK(qp.c == -Vector::Ones(3));
    CHECK(qp.upper == Vector::Constant(3, 10.0));
    CHECK(qp.lower == Vector::Zero(3));
    CHECK(qp.A.rows() == 1);
    CHECK(qp.A(0, 1) == -1.0);
    CHECK(qp.b.norm() == 0.0);
    CHECK_THROWS_AS(build_dual_svm_qp(SvmDataset{}), ParameterError);
    CHECK_THROWS_AS(build_dual_svm_qp(ds, -1.0), ParameterError);
}

TEST_CASE("dual SVM QP is independent of the worker count") {
    const auto ds = synthetic_svm_dataset(150);
    const auto one = build_dual_svm_qp(ds, 0.125, 10.0, -1.0, 1);
    for (unsigned t : {2u, 3u, 8u}) CHECK(build_dual_svm_qp(ds, 0.125, 10.0, -1.0, t).Q == one.Q);
}

TEST_CASE("synthetic data") {
    const auto a = synthetic_svm_dataset(100), b = synthetic_svm_dataset(100);
    CHECK(a.samples == b.samples);
    CHECK(a.labels == b.labels);
    CHECK(synthetic_svm_dataset(100, 123, 14, 8).samples != a.samples);
    for (const auto& row : a.samples) {
        CHECK(row.size() == 14);
        for (const auto& [idx, val] : row) {
            CHECK(idx >= 1);
            CHECK(idx <= 123);
            CHECK(val == 1.0);
        }
    }
}

TEST_CASE("number formatting round-trips") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int t = 0; t < 1000; ++t) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(kInf) == "inf");
    CHECK(format_double(-kInf) == "-inf");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(number(kInf) == "inf");
    CHECK(number(1.5) == 1.5);
}

TEST_CASE("trace csv") {
    const auto red = qp_problem(random_box_qp(5, 1, 2));
    SolveConfig cfg;
    cfg.gamma = red.problem.beta_v;
    cfg.max_iter = 3;
    cfg.fpr_tol = 0.0;
    cfg.z0 = Vector::Zero(5);
    const auto t = run(red.problem, cfg);
    std::ostringstream out;
    write_trace_csv(out, t);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == kTraceHeader);
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("normalized fpr iteration count") {
    IterationTrace t;
    for (long k = 0; k < 4; ++k) {
        IterationRecord r;
        r.k = k;
        r.fpr_sq = std::pow(10.0, -2.0 * static_cast<double>(k));
        t.records.push_back(r);
    }
    CHECK(iterations_to_normalized_fpr(t, 1e-4) == 2);
    CHECK(iterations_to_normalized_fpr(t, 1e-9) == -1);
}

TEST_CASE("cli solve writes its outputs and is deterministic") {
    const auto d1 = scratch("solve1"), d2 = scratch("solve2");
    const std::vector<std::string> base = {"solve", "--dim", "12", "--rank", "3", "--max-iter", "200", "--emit-plot-data"};
    auto a1 = base, a2 = base;
    a1.insert(a1.end(), {"--out", d1.string()});
    a2.insert(a2.end(), {"--out", d2.string()});
    const auto r1 = cli(a1), r2 = cli(a2);
    REQUIRE(r1.code == kOk);
    REQUIRE(r2.code == kOk);
    CHECK(r1.out == r2.out);
    CHECK(slurp(d1 / "trace.csv") == slurp(d2 / "trace.csv"));
    CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
    CHECK(fs::exists(d1 / "fpr.tsv"));
    CHECK(fs::exists(d1 / "objective_error.tsv"));
    const auto j = report(d1);
    CHECK(j["command"] == "solve");
    CHECK(j["config"]["dim"] == "12");
    CHECK(j["config"]["gamma-mode"] == "aggressive");
    CHECK(j["config"]["emit-plot-data"] != "false");
    CHECK(j["result"]["solution"].size() == 12);
}

TEST_CASE("cli config file precedence and environment output directory") {
    const auto dir = scratch("config");
    const auto cfg = dir / "run.toml";
    std::ofstream(cfg) << "dim = 9\nmax-iter = 17\nfpr-tol = 0\n";
    const auto r = cli({"solve", "--config", cfg.string(), "--max-iter", "5", "--out", dir.string()});
    REQUIRE(r.code == kOk);
    const auto j = report(dir);
    CHECK(j["config"]["dim"] == "9");
    CHECK(j["config"]["max-iter"] == "5");
    CHECK(j["result"]["iterations"] == 5);

    const auto envdir = scratch("env");
    ::setenv("FDRS_OUT_DIR", envdir.string().c_str(), 1);
    const auto e = cli({"solve", "--dim", "6", "--rank", "1", "--max-iter", "10"});
    ::unsetenv("FDRS_OUT_DIR");
    CHECK(e.code == kOk);
    CHECK(fs::exists(envdir / "trace.csv"));

    std::ofstream(dir / "bad.toml") << "no-such-key = 1\n";
    CHECK(cli({"solve", "--config", (dir / "bad.toml").string(), "--out", dir.string()}).code == kUsageError);
    std::ofstream(dir / "section.toml") << "[solve]\ndim = 4\n";
    CHECK(cli({"solve", "--config", (dir / "section.toml").string(), "--out", dir.string()}).code == kUsageError);
    CHECK(cli({"solve", "--config", (dir / "missing.toml").string()}).code == kUsageError);
}

TEST_CASE("cli exit codes") {
    const auto dir = scratch("codes");
    CHECK(cli({}).code == kUsageError);
    CHECK(cli({"solve", "--no-such-flag"}).code == kUsageError);
    CHECK(cli({"solve", "--qp", "nope"}).code == kUsageError);
    CHECK(cli({"solve", "--gamma", "100", "--out", dir.string()}).code == kUsageError);
    CHECK(cli({"--help"}).code == kOk);
    CHECK(cli({"solve", "--svm-file", "/nonexistent.svm", "--qp", "svm", "--out", dir.string()}).code == kUsageError);

    const auto ok = cli({"certify", "--dim", "10", "--rank", "2", "--max-iter", "300", "--fpr-tol", "0",
                         "--gamma-mode", "conservative", "--out", dir.string()});
    CHECK(ok.code == kOk);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    CHECK(ok.out.find("PASS fejer") != std::string::npos);
    const auto j = report(dir);
    CHECK(j["certificates"]["entries"].size() > 5);
}

TEST_CASE("cli counterexamples, spectral and pdcompare") {
    const auto dir = scratch("misc");
    auto r = cli({"counterexample", "sublinear", "--blocks", "5000", "--k", "20", "--emit-plot-data", "--out",
                  dir.string()});
    CHECK(r.code == kOk);
    CHECK(fs::exists(dir / "xh_sq.tsv"));
    r = cli({"counterexample", "slow", "--k", "30", "--out", dir.string()});
    CHECK(r.code == kOk);
    CHECK(r.out.rfind("PASS", 0) == 0);
    r = cli({"pdcompare", "--dim", "5", "--rank", "2", "--max-iter", "100", "--out", dir.string()});
    CHECK(r.code == kOk);
    r = cli({"spectral", "--samples", "40", "--out", dir.string()});
    CHECK(r.code == kOk);
    const auto j = report(dir);
    CHECK(j["ratio"].is_number());
    CHECK(cli({"counterexample"}).code == kUsageError);
}
