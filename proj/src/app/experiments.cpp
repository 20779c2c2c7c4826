#include "fdrs/app/experiments.hpp"

#include <cmath>

namespace fdrs::app {

SublinearCheck check_sublinear(double alpha, double a, Index blocks, long k_max) {
    if (k_max < 1) throw ParameterError("check_sublinear: k_max must be at least 1");
    const auto start = sublinear_instance(alpha, a, blocks);
    SublinearCheck out;
    out.alpha = alpha;
    out.a = a;
    out.blocks = blocks;
    out.k_max = k_max;
    out.max_deficit = truncation_deficit(k_max, blocks, alpha);
    out.run = run_blocks(start.instance, start.z0, k_max);

    const double xf_const = (a + 0.5) * (a + 0.5) / ((a + 1.0) * (a + 1.0));
    for (long k = 0; k <= k_max; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const double decay = (1.0 - truncation_deficit(k, blocks, alpha)) / std::pow(static_cast<double>(k + 1), 2.0 * alpha);
        const double xh_ratio = out.run.xh_sq[i] / decay;
        const double xf_ratio = out.run.xf_sq[i] / (xf_const * decay);
        out.min_xh_ratio = std::min(out.min_xh_ratio, xh_ratio);
        out.min_xf_ratio = std::min(out.min_xf_ratio, xf_ratio);
        if (xh_ratio < 1.0 && out.first_xh_failure < 0) out.first_xh_failure = k;
        if (xf_ratio < 1.0 && out.first_xf_failure < 0) out.first_xf_failure = k;
        if (k > 0 && !(out.run.z_sq[i] < out.run.z_sq[i - 1]) && out.first_monotone_failure < 0) {
            out.first_monotone_failure = k;
        }
    }
    const auto last = static_cast<std::size_t>(k_max);
    out.last_xh_step_ratio = std::sqrt(out.run.xh_sq[last] / out.run.xh_sq[last - 1]);
    return out;
}

std::function<double(double)> power_decay(double power) {
    if (!(power > 0.0)) throw ParameterError("power_decay: power must be positive");
    return [power](double t) { return std::pow(t + 2.0, -power); };
}

SlowCheck check_arbitrarily_slow(std::function<double(double)> F, long k_max, double eta, double a) {
    SlowCheck out;
    out.schedule = build_slow_schedule(F, k_max, eta, a);
    out.k_max = k_max;
    const auto start = arbitrarily_slow_instance(out.schedule);
    out.blocks = start.instance.blocks();
    out.run = run_blocks(start.instance, start.z0, k_max);
    for (long k = 1; k <= k_max; ++k) {
        const double bound = std::exp(-1.0) * F(static_cast<double>(k));
        const double ratio = std::sqrt(out.run.z_sq[static_cast<std::size_t>(k)]) / bound;
        out.min_ratio = std::min(out.min_ratio, ratio);
        if (ratio < 1.0 && out.first_failure < 0) out.first_failure = k;
    }
    return out;
}

long iterations_to_normalized_fpr(const IterationTrace& trace, double target) {
    if (trace.records.empty()) return -1;
    const double base = trace.records.front().fpr_sq;
    if (base == 0.0) return 0;
    for (const auto& r : trace.records) {
        if (r.fpr_sq / base <= target) return r.k;
    }
    return -1;
}

namespace {

StepSizeRun run_with_gamma(const SplitProblem& p, double gamma, double target, long max_iter) {
    SolveConfig cfg;
    cfg.gamma = gamma;
    cfg.lambda_schedule = schedule::Constant{1.0};
    cfg.max_iter = max_iter;
    cfg.z0 = Vector::Zero(p.dim());
    // Stop as soon as the normalized target is met.
    const FdrsStep first = apply_fdrs(p, cfg.z0, gamma);
    const double base = (first.z_next - cfg.z0).squaredNorm();
    cfg.fpr_tol = target * base;
    const IterationTrace trace = run(p, cfg);
    StepSizeRun out;
    out.gamma = gamma;
    out.iterations = iterations_to_normalized_fpr(trace, target);
    out.final_normalized_fpr = base > 0.0 ? trace.back().fpr_sq / base : 0.0;
    return out;
}

}  // namespace

StepSizeComparison compare_step_sizes(const QpSpec& qp, double factor, double target, long max_iter,
                                      std::uint64_t seed) {
    if (!(factor > 0.0 && factor < 2.0)) throw ParameterError("compare_step_sizes: factor must lie in (0, 2)");
    const AffineReduction plain = qp_problem(qp);
    StepSizeComparison out;
    out.betas = estimate_betas(qp.Q, plain.problem.V, 1e-10, seed);
    const AffineReduction red = qp_problem(qp, out.betas.beta_v);
    out.with_beta = run_with_gamma(red.problem, factor * out.betas.beta, target, max_iter);
    out.with_beta_v = run_with_gamma(red.problem, factor * out.betas.beta_v, target, max_iter);
    return out;
}

}  // namespace fdrs::app
