#include "fdrs/app/commands.hpp"

#include "fdrs/app/experiments.hpp"
#include "fdrs/app/export.hpp"
#include "fdrs/app/svm.hpp"
#include "fdrs/certificates.hpp"
#include "fdrs/primal_dual.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>

namespace fdrs::app {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Options {
    std::string config;
    std::string out;
    // problem
    std::string qp = "random";
    std::string svm_file;
    long samples = 200;
    Index dim = 20;
    Index rank = 5;
    std::uint64_t seed = 7;
    double a = 1.0;
    double slow_a = 0.0;
    double q_max = 1.0;
    double kernel_scale = 0.125;
    double box_upper = 10.0;
    double linear = -1.0;
    std::string beta_v = "estimate";
    // run
    double gamma = 0.0;
    std::string gamma_mode = "aggressive";
    double lambda = 1.0;
    double epsilon = 0.1;
    long max_iter = 1000;
    double fpr_tol = 1e-20;
    long record_every = 1;
    bool emit_plot_data = false;
    // certify
    double lipschitz = 0.0;
    bool auto_lipschitz = false;
    double linear_c = 0.0;
    double ref_tol = 1e-13;
    // counterexamples
    double alpha = 0.75;
    Index blocks = 100000;
    long k = 300;
    double eta = 0.5;
    double power = 0.25;
    // spectral
    std::string spectral_qp = "svm";
    std::uint64_t spectral_seed = 42;
    bool compare = false;
    double factor = 1.99;
    double target = 1e-6;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- options

void add_output(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config, "Config file of `key = value` lines; flags take precedence");
    sub->add_option("--out", o.out, "Output directory (default: $FDRS_OUT_DIR or .)");
}

void add_problem(CLI::App* sub, Options& o) {
    sub->add_option("--qp", o.qp, "Problem: random, svm, strong, smooth or surrogate")
        ->check(CLI::IsMember({"random", "svm", "strong", "smooth", "surrogate"}));
    sub->add_option("--svm-file", o.svm_file, "Sparse `label idx:val` data for --qp svm (synthetic when absent)");
    sub->add_option("--samples", o.samples, "Rows of the synthetic SVM dataset / leading rows of --svm-file")
        ->check(CLI::PositiveNumber);
    sub->add_option("--dim", o.dim, "Dimension of generated problems")->check(CLI::PositiveNumber);
    sub->add_option("--rank", o.rank, "Rows of the equality constraint A")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "Problem generation seed");
    sub->add_option("--a", o.a, "Curvature of the smooth f");
    sub->add_option("--q-max", o.q_max, "Largest eigenvalue of Q for --qp smooth");
    sub->add_option("--kernel-scale", o.kernel_scale, "RBF kernel scale for --qp svm");
    sub->add_option("--box-upper", o.box_upper, "Upper box bound for --qp svm");
    sub->add_option("--linear", o.linear, "Constant entry of the dual SVM linear term c");
    sub->add_option("--beta-v", o.beta_v, "beta_V source: estimate (power method) or fallback (beta_V = beta)")
        ->check(CLI::IsMember({"estimate", "fallback"}));
}

void add_run(CLI::App* sub, Options& o) {
    sub->add_option("--gamma", o.gamma, "Step size; overrides --gamma-mode when positive");
    sub->add_option("--gamma-mode", o.gamma_mode, "conservative (beta_V) or aggressive (1.99 beta_V)")
        ->check(CLI::IsMember({"conservative", "aggressive"}));
    sub->add_option("--lambda", o.lambda, "Constant relaxation parameter");
    sub->add_option("--epsilon", o.epsilon, "Relaxation window parameter");
    sub->add_option("--max-iter", o.max_iter, "Iteration limit")->check(CLI::PositiveNumber);
    sub->add_option("--fpr-tol", o.fpr_tol, "Stop once ||Tz - z||^2 falls below this");
    sub->add_option("--record-every", o.record_every, "Record stride")->check(CLI::PositiveNumber);
    sub->add_flag("--emit-plot-data", o.emit_plot_data, "Write fpr.tsv and objective_error.tsv");
}

// ------------------------------------------------------------ config file

std::string option_key(const CLI::Option* opt) {
    return opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames().front();
}

/// Applies `key = value` lines to options not given on the command line.
void apply_config(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigTOML().from_file(path);
    } catch (const CLI::Error& e) {
        throw UsageError("config " + path + ": " + e.what());
    }
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--") continue;
        if (!item.parents.empty()) throw UsageError("config " + path + ": sections are not supported (" + item.fullname() + ")");
        CLI::Option* opt = sub->get_option_no_throw("--" + item.name);
        if (opt == nullptr || item.name == "config") {
            throw UsageError("config " + path + ": unknown key '" + item.name + "' for " + sub->get_name());
        }
        if (opt->count() > 0) continue;
        try {
            for (const auto& v : item.inputs) opt->add_result(v);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError("config " + path + ": key '" + item.name + "': " + e.what());
        }
    }
}

/// Every option of the subcommand with the value in effect.
json effective_config(const CLI::App* sub) {
    json cfg = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string key = option_key(opt);
        if (key == "help" || key == "config" || key == "out") continue;
        if (opt->count() > 0) {
            const auto& r = opt->results();
            cfg[key] = r.size() == 1 ? json(r.front()) : json(r);
        } else if (opt->get_expected_min() == 0) {
            cfg[key] = "false";
        } else {
            cfg[key] = opt->get_default_str();
        }
    }
    return cfg;
}

fs::path output_dir(const Options& o) {
    if (!o.out.empty()) return o.out;
    if (const char* env = std::getenv("FDRS_OUT_DIR"); env != nullptr && *env != '\0') return env;
    return ".";
}

// --------------------------------------------------------------- problems

struct Built {
    SplitProblem problem;
    Vector shift;  // solution of the reduced problem maps back via + shift
    std::string description;
    std::string advisory;
};

QpSpec load_qp(const Options& o) {
    if (o.qp == "random" || o.qp == "surrogate") return random_box_qp(o.dim, o.rank, o.seed);
    SvmDataset ds;
    if (!o.svm_file.empty()) {
        ds = load_svm_file(o.svm_file);
        if (static_cast<long>(ds.size()) > o.samples) {
            ds.samples.resize(static_cast<std::size_t>(o.samples));
            ds.labels.resize(static_cast<std::size_t>(o.samples));
        }
    } else {
        ds = synthetic_svm_dataset(static_cast<std::size_t>(o.samples), 123, 14, o.seed);
    }
    return build_dual_svm_qp(ds, o.kernel_scale, o.box_upper, o.linear);
}

Built build_problem(const Options& o) {
    if (o.qp == "strong") {
        return {random_strongly_convex_problem(o.dim, o.rank, o.seed), Vector::Zero(o.dim), "strongly convex", ""};
    }
    if (o.qp == "smooth") {
        return {random_smooth_problem(o.dim, o.rank, o.a, o.q_max, o.seed), Vector::Zero(o.dim), "smooth f", ""};
    }
    QpSpec qp = load_qp(o);
    const Index n = qp.Q.rows();
    std::string advisory;
    std::optional<double> beta_v;
    FunctionDescriptor f = FunctionDescriptor::box(qp.lower, qp.upper);
    if (o.qp == "surrogate") f = FunctionDescriptor::shifted_sq_norm(o.a, Vector::Constant(n, 0.5));
    FunctionDescriptor g = FunctionDescriptor::quadratic(qp.Q, qp.c);
    if (o.beta_v == "estimate") {
        const Subspace V = qp.A.rows() > 0 ? Subspace::null_space(qp.A) : Subspace::whole(n);
        const BetaEstimate est = estimate_betas(qp.Q, V);
        beta_v = est.beta_v;
        advisory = est.advisory;
    }
    AffineReduction red = qp.A.rows() > 0
                              ? affine_reduction(f, g, qp.A, qp.b, beta_v)
                              : AffineReduction{make_problem(f, g, Subspace::whole(n), beta_v), Vector::Zero(n)};
    return {std::move(red.problem), std::move(red.shift), o.qp == "surrogate" ? "box QP data, smooth f" : "box QP",
            advisory};
}

double pick_gamma(const Options& o, const SplitProblem& p) {
    if (o.gamma > 0.0) return o.gamma;
    return default_gamma(p, o.gamma_mode == "conservative" ? GammaMode::Conservative : GammaMode::Aggressive);
}

SolveConfig solve_config(const Options& o, const SplitProblem& p) {
    SolveConfig cfg;
    cfg.gamma = pick_gamma(o, p);
    cfg.lambda_schedule = schedule::Constant{o.lambda};
    cfg.epsilon = o.epsilon;
    cfg.max_iter = o.max_iter;
    cfg.fpr_tol = o.fpr_tol;
    cfg.record_every = o.record_every;
    cfg.z0 = Vector::Zero(p.dim());
    return cfg;
}

json vector_json(const Vector& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(number(v(i)));
    return arr;
}

json problem_json(const Built& b, double gamma, double alpha) {
    json j{{"kind", b.description},
           {"dim", b.problem.dim()},
           {"beta", number(b.problem.beta)},
           {"beta_v", number(b.problem.beta_v)},
           {"mu_f", number(b.problem.mu_f)},
           {"mu_g", number(b.problem.mu_g)},
           {"beta_f", number(b.problem.beta_f)},
           {"gamma", number(gamma)},
           {"alpha", number(alpha)}};
    if (!b.advisory.empty()) j["advisory"] = b.advisory;
    return j;
}

json trace_summary(const IterationTrace& t, const Vector& shift) {
    const auto& last = t.back();
    json warnings = json::array();
    for (const auto& w : t.warnings) warnings.push_back(w);
    return {{"iterations", t.iterations},
            {"converged", t.converged},
            {"final_fpr_sq", number(last.fpr_sq)},
            {"objective_at_xh", number(last.objective_at_xh)},
            {"objective_split", number(last.objective_split)},
            {"feasibility", number(last.feasibility)},
            {"solution", vector_json(last.x_h + shift)},
            {"warnings", std::move(warnings)}};
}

void write_plot_data(const fs::path& dir, const IterationTrace& t, double f_star) {
    Series fpr, obj;
    for (const auto& r : t.records) {
        fpr.emplace_back(r.k, r.fpr_sq);
        obj.emplace_back(r.k, std::abs(r.objective_split - f_star));
    }
    write_series_tsv(dir / "fpr.tsv", fpr);
    write_series_tsv(dir / "objective_error.tsv", obj);
}

/// Lipschitz constant of f on the ball B(center, radius), where it has one.
double lipschitz_on_ball(const FunctionDescriptor& f, const Vector& center, double radius) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, fn::Zero>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, fn::ShiftedScaledSqNorm>) {
                return v.a * ((center - v.u).norm() + radius);
            } else if constexpr (std::is_same_v<T, fn::Quadratic>) {
                const double qn = v.Q.size() > 0 ? v.Q.operatorNorm() : 0.0;
                return (v.Q * center + v.c).norm() + qn * radius;
            } else {
                throw UsageError("--auto-lipschitz needs a finite-valued f, got " + std::string(f.kind_name()));
            }
        },
        f.variant());
}

// ---------------------------------------------------------------- commands

int cmd_solve(const Options& o, const CLI::App* sub, std::ostream& out) {
    const Built b = build_problem(o);
    const SolveConfig cfg = solve_config(o, b.problem);
    const IterationTrace t = run(b.problem, cfg);
    const fs::path dir = output_dir(o);
    write_trace_csv(dir / "trace.csv", t);
    json report{{"command", "solve"},
                {"config", effective_config(sub)},
                {"problem", problem_json(b, t.gamma, t.alpha)},
                {"result", trace_summary(t, b.shift)}};
    write_json(dir / "report.json", report);
    if (o.emit_plot_data) write_plot_data(dir, t, t.back().objective_split);
    out << "iterations " << t.iterations << "  final fpr_sq " << format_double(t.back().fpr_sq) << "  objective "
        << format_double(t.back().objective_split) << (t.converged ? "  (converged)" : "") << '\n';
    for (const auto& w : t.warnings) out << "warning: " << w << '\n';
    return kOk;
}

int cmd_certify(const Options& o, const CLI::App* sub, std::ostream& out) {
    const Built b = build_problem(o);
    const SolveConfig cfg = solve_config(o, b.problem);
    const IterationTrace t = run(b.problem, cfg);
    const ReferenceSolution ref = reference_solution(b.problem, t.gamma, t.back().z_next, o.ref_tol);
    const CertContext ctx(b.problem, t, ref);

    CertifyOptions opt;
    if (o.auto_lipschitz) {
        opt.lipschitz = lipschitz_on_ball(b.problem.f, ref.x_star, ctx.D);
    } else if (o.lipschitz > 0.0) {
        opt.lipschitz = o.lipschitz;
    }
    if (o.linear_c > 0.0) opt.linear_c = o.linear_c;
    const RateReport rep = certify(ctx, opt);

    const fs::path dir = output_dir(o);
    write_trace_csv(dir / "trace.csv", t);
    json reference{{"residual", number(ref.residual)},
                   {"distance", number(ctx.D)},
                   {"objective", number(ref.f_star + ref.g_star)}};
    if (opt.lipschitz) reference["lipschitz"] = number(*opt.lipschitz);
    json report{{"command", "certify"},
                {"config", effective_config(sub)},
                {"problem", problem_json(b, t.gamma, t.alpha)},
                {"result", trace_summary(t, b.shift)},
                {"reference", std::move(reference)},
                {"certificates", to_json(rep)}};
    write_json(dir / "report.json", report);
    if (o.emit_plot_data) write_plot_data(dir, t, ref.f_star + ref.g_star);

    for (const auto& e : rep.entries) {
        out << (e.pass ? "PASS " : "FAIL ") << e.name << "  worst " << format_double(e.worst_violation) << " at k="
            << e.at_iteration;
        if (!e.pass) out << "  first violation k=" << e.first_violation;
        out << '\n';
    }
    return rep.all_pass() ? kOk : kCertificateFailure;
}

int cmd_sublinear(const Options& o, const CLI::App* sub, std::ostream& out) {
    const SublinearCheck c = check_sublinear(o.alpha, o.a, o.blocks, o.k);
    const fs::path dir = output_dir(o);
    json report{{"command", "counterexample sublinear"},
                {"config", effective_config(sub)},
                {"truncation_deficit", number(c.max_deficit)},
                {"xh_lower_bound", {{"pass", c.first_xh_failure < 0}, {"first_failure", c.first_xh_failure},
                                    {"min_ratio", number(c.min_xh_ratio)}}},
                {"xf_lower_bound", {{"pass", c.first_xf_failure < 0}, {"first_failure", c.first_xf_failure},
                                    {"min_ratio", number(c.min_xf_ratio)}}},
                {"strictly_decreasing", {{"pass", c.first_monotone_failure < 0},
                                         {"first_failure", c.first_monotone_failure}}},
                {"last_xh_step_ratio", number(c.last_xh_step_ratio)},
                {"pass", c.pass()}};
    write_json(dir / "report.json", report);
    if (o.emit_plot_data) {
        Series xh, xf;
        for (long k = 0; k <= o.k; ++k) {
            xh.emplace_back(k, c.run.xh_sq[static_cast<std::size_t>(k)]);
            xf.emplace_back(k, c.run.xf_sq[static_cast<std::size_t>(k)]);
        }
        write_series_tsv(dir / "xh_sq.tsv", xh);
        write_series_tsv(dir / "xf_sq.tsv", xf);
    }
    out << (c.first_xh_failure < 0 ? "PASS" : "FAIL") << " ||x_h^k||^2 lower bound  min ratio "
        << format_double(c.min_xh_ratio) << '\n'
        << (c.first_xf_failure < 0 ? "PASS" : "FAIL") << " ||x_f^k||^2 lower bound  min ratio "
        << format_double(c.min_xf_ratio) << '\n'
        << (c.first_monotone_failure < 0 ? "PASS" : "FAIL") << " ||z^k|| strictly decreasing\n"
        << "truncation deficit at k=" << o.k << ": " << format_double(c.max_deficit) << '\n';
    return c.pass() ? kOk : kCertificateFailure;
}

int cmd_slow(const Options& o, const CLI::App* sub, std::ostream& out) {
    const SlowCheck c = check_arbitrarily_slow(power_decay(o.power), o.k, o.eta, o.slow_a);
    const fs::path dir = output_dir(o);
    json report{{"command", "counterexample slow"},
                {"config", effective_config(sub)},
                {"blocks", c.blocks},
                {"schedule_margin", number(c.schedule.margin())},
                {"lower_bound", {{"pass", c.pass()}, {"first_failure", c.first_failure},
                                 {"min_ratio", number(c.min_ratio)}}},
                {"pass", c.pass()}};
    write_json(dir / "report.json", report);
    if (o.emit_plot_data) {
        Series z;
        for (long k = 0; k <= o.k; ++k) z.emplace_back(k, std::sqrt(c.run.z_sq[static_cast<std::size_t>(k)]));
        write_series_tsv(dir / "z_norm.tsv", z);
    }
    out << (c.pass() ? "PASS" : "FAIL") << " ||z^k|| >= exp(-1) F(k) for 1 <= k <= " << o.k << "  min ratio "
        << format_double(c.min_ratio) << "  blocks " << c.blocks << '\n';
    return c.pass() ? kOk : kCertificateFailure;
}

int cmd_pdcompare(const Options& o, const CLI::App* sub, std::ostream& out) {
    const Built b = build_problem(o);
    SolveConfig cfg = solve_config(o, b.problem);
    cfg.lambda_schedule = schedule::Constant{1.0};
    cfg.fpr_tol = -1.0;
    cfg.record_every = 1;
    const IterationTrace t = run(b.problem, cfg);
    const PdState s0 = initial_state_from_fdrs(b.problem, cfg.z0, t.gamma);
    const auto pd = run_pd(b.problem, t.gamma, t.iterations, s0.y, s0.x_f);
    const EquivalenceReport rep = equivalence_check(t, pd, t.gamma);
    const bool primal_ok = rep.max_primal_deviation <= 1e-10 * (1.0 + rep.max_primal_norm);
    const bool dual_ok = rep.max_dual_deviation <= 1e-10;

    const fs::path dir = output_dir(o);
    write_trace_csv(dir / "trace.csv", t);
    json report{{"command", "pdcompare"},
                {"config", effective_config(sub)},
                {"problem", problem_json(b, t.gamma, t.alpha)},
                {"mapping", rep.mapping},
                {"compared", rep.compared},
                {"max_primal_deviation", number(rep.max_primal_deviation)},
                {"max_dual_deviation", number(rep.max_dual_deviation)},
                {"max_primal_norm", number(rep.max_primal_norm)},
                {"pass", primal_ok && dual_ok}};
    write_json(dir / "report.json", report);
    out << (primal_ok ? "PASS" : "FAIL") << " max ||x_f^FDRS - x_f^PD|| = " << format_double(rep.max_primal_deviation)
        << '\n'
        << (dual_ok ? "PASS" : "FAIL") << " max ||y^PD + grad chi_V(x_h)|| = " << format_double(rep.max_dual_deviation)
        << '\n';
    return primal_ok && dual_ok ? kOk : kCertificateFailure;
}

int cmd_spectral(const Options& o, const CLI::App* sub, std::ostream& out) {
    Options source = o;
    source.qp = o.spectral_qp;
    const QpSpec qp = load_qp(source);
    const Subspace V = qp.A.rows() > 0 ? Subspace::null_space(qp.A) : Subspace::whole(qp.Q.rows());
    const BetaEstimate est = estimate_betas(qp.Q, V, 1e-10, o.spectral_seed);
    json report{{"command", "spectral"},
                {"config", effective_config(sub)},
                {"n", qp.Q.rows()},
                {"inverse_beta", number(est.full.value)},
                {"inverse_beta_v", number(est.restricted.value)},
                {"ratio", number(est.beta_v / est.beta)},
                {"power_iterations", {est.full.iterations, est.restricted.iterations}}};
    if (!est.advisory.empty()) report["advisory"] = est.advisory;
    out << "1/beta    " << format_double(est.full.value) << '\n'
        << "1/beta_V  " << format_double(est.restricted.value) << '\n'
        << "ratio     " << format_double(est.beta_v / est.beta) << '\n';
    if (!est.advisory.empty()) out << "note: " << est.advisory << '\n';
    if (o.compare) {
        const StepSizeComparison cmp = compare_step_sizes(qp, o.factor, o.target, o.max_iter, o.spectral_seed);
        auto run_json = [](const StepSizeRun& r) {
            return json{{"gamma", number(r.gamma)},
                        {"iterations", r.iterations},
                        {"final_normalized_fpr", number(r.final_normalized_fpr)}};
        };
        report["comparison"] = {{"target", number(o.target)},
                                {"with_beta", run_json(cmp.with_beta)},
                                {"with_beta_v", run_json(cmp.with_beta_v)}};
        out << "iterations to normalized fpr <= " << format_double(o.target) << ": gamma = " << o.factor
            << " beta: " << cmp.with_beta.iterations << ", gamma = " << o.factor
            << " beta_V: " << cmp.with_beta_v.iterations << '\n';
    }
    write_json(output_dir(o) / "report.json", report);
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Forward-Douglas-Rachford splitting: solver, rate certificates and counterexamples", "fdrs"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    Options o;

    CLI::App* solve = app.add_subcommand("solve", "Run FDRS and write trace.csv and report.json");
    add_output(solve, o);
    add_problem(solve, o);
    add_run(solve, o);

    CLI::App* certify_cmd = app.add_subcommand("certify", "Run FDRS and verify every applicable rate bound");
    add_output(certify_cmd, o);
    add_problem(certify_cmd, o);
    add_run(certify_cmd, o);
    certify_cmd->add_option("--lipschitz", o.lipschitz, "Lipschitz constant of f near the solution");
    certify_cmd->add_flag("--auto-lipschitz", o.auto_lipschitz, "Derive the Lipschitz constant of a smooth f");
    certify_cmd->add_option("--linear-c", o.linear_c, "c > 1/2 for the linear-rate check");
    certify_cmd->add_option("--ref-tol", o.ref_tol, "Relative residual of the reference fixed point");

    CLI::App* counter = app.add_subcommand("counterexample", "Rotation-subspace instances with slow FDRS");
    counter->require_subcommand(1);
    CLI::App* sublinear = counter->add_subcommand("sublinear", "Sublinear but strongly convergent instance");
    add_output(sublinear, o);
    sublinear->add_option("--alpha", o.alpha, "Decay exponent, > 1/2");
    sublinear->add_option("--a", o.a, "Curvature of f");
    sublinear->add_option("--blocks", o.blocks, "Number of 2x2 blocks")->check(CLI::PositiveNumber);
    sublinear->add_option("--k", o.k, "Last iteration checked")->check(CLI::PositiveNumber);
    sublinear->add_flag("--emit-plot-data", o.emit_plot_data, "Write xh_sq.tsv and xf_sq.tsv");
    CLI::App* slow = counter->add_subcommand("slow", "Arbitrarily slow instance for F(t) = (t+2)^-power");
    add_output(slow, o);
    slow->add_option("--power", o.power, "Decay power of F");
    slow->add_option("--a", o.slow_a, "Curvature of f");
    slow->add_option("--eta", o.eta, "Floor of the eigenvalue schedule, in (a/(a+1), 1)");
    slow->add_option("--k", o.k, "Last iteration checked")->check(CLI::PositiveNumber);
    slow->add_flag("--emit-plot-data", o.emit_plot_data, "Write z_norm.tsv");

    CLI::App* pd = app.add_subcommand("pdcompare", "Compare FDRS with the equivalent primal-dual recursion");
    add_output(pd, o);
    add_problem(pd, o);
    add_run(pd, o);

    CLI::App* spectral = app.add_subcommand("spectral", "Estimate 1/beta and 1/beta_V of a QP");
    add_output(spectral, o);
    spectral->add_option("--qp", o.spectral_qp, "svm (default) or random")->check(CLI::IsMember({"svm", "random"}));
    spectral->add_option("--svm-file", o.svm_file, "Sparse `label idx:val` data (synthetic when absent)");
    spectral->add_option("--samples", o.samples, "Rows used")->check(CLI::PositiveNumber);
    spectral->add_option("--dim", o.dim, "Dimension for --qp random")->check(CLI::PositiveNumber);
    spectral->add_option("--rank", o.rank, "Constraint rows for --qp random")->check(CLI::NonNegativeNumber);
    spectral->add_option("--seed", o.seed, "Problem generation seed");
    spectral->add_option("--kernel-scale", o.kernel_scale, "RBF kernel scale");
    spectral->add_option("--box-upper", o.box_upper, "Upper box bound");
    spectral->add_option("--linear", o.linear, "Constant entry of the dual SVM linear term c");
    spectral->add_option("--spectral-seed", o.spectral_seed, "Power-method seed");
    spectral->add_flag("--compare", o.compare, "Also compare gamma = factor*beta with gamma = factor*beta_V");
    spectral->add_option("--factor", o.factor, "Step-size factor for --compare");
    spectral->add_option("--target", o.target, "Normalized FPR target for --compare");
    spectral->add_option("--max-iter", o.max_iter, "Iteration limit for --compare")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }
    struct Route {
        CLI::App* sub;
        int (*fn)(const Options&, const CLI::App*, std::ostream&);
    };
    const Route routes[] = {{solve, cmd_solve},         {certify_cmd, cmd_certify}, {sublinear, cmd_sublinear},
                            {slow, cmd_slow},           {pd, cmd_pdcompare},        {spectral, cmd_spectral}};
    try {
        for (const auto& r : routes) {
            if (!r.sub->parsed()) continue;
            apply_config(r.sub, o.config);
            return r.fn(o, r.sub, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace fdrs::app
