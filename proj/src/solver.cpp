#include "fdrs/solver.hpp"

#include <algorithm>
#include <cmath>

namespace fdrs {

const IterationRecord& IterationTrace::at(long k) const {
    auto it = std::lower_bound(records.begin(), records.end(), k,
                               [](const IterationRecord& r, long key) { return r.k < key; });
    if (it == records.end() || it->k != k) {
        throw std::out_of_range("IterationTrace: no record for k = " + std::to_string(k));
    }
    return *it;
}

bool IterationTrace::dense() const {
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].k != static_cast<long>(i)) return false;
    }
    return true;
}

double lambda_at(const LambdaSchedule& s, long k) {
    if (const auto* c = std::get_if<schedule::Constant>(&s)) return c->lambda;
    if (const auto* w = std::get_if<schedule::EpsilonWindow>(&s)) return w->lambda;
    const auto& seq = std::get<schedule::Sequence>(s).values;
    if (seq.empty()) throw ParameterError("lambda sequence is empty");
    return seq[static_cast<std::size_t>(std::min<long>(k, static_cast<long>(seq.size()) - 1))];
}

void validate_config(const SplitProblem& p, const SolveConfig& cfg) {
    const double alpha = alpha_fdrs(cfg.gamma, p.beta_v);
    require_dim(cfg.z0.size(), p.dim(), "SolveConfig: z0");
    if (!cfg.z0.allFinite()) throw ParameterError("SolveConfig: z0 is not finite");
    if (cfg.max_iter < 1) throw ParameterError("SolveConfig: max_iter must be at least 1");
    if (cfg.record_every < 1) throw ParameterError("SolveConfig: record_every must be at least 1");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ParameterError("SolveConfig: epsilon must lie in (0, 1)");

    auto check = [&](double lambda, double upper, const char* window) {
        if (!(lambda > 0.0 && lambda < upper)) {
            throw ParameterError("SolveConfig: lambda = " + std::to_string(lambda) + " outside " + window +
                                 " (0, " + std::to_string(upper) + ")");
        }
    };
    const double upper = 1.0 / alpha;
    if (const auto* w = std::get_if<schedule::EpsilonWindow>(&cfg.lambda_schedule)) {
        if (!(w->epsilon > 0.0 && w->epsilon < 1.0)) {
            throw ParameterError("SolveConfig: window epsilon must lie in (0, 1)");
        }
        check(w->lambda, upper, "the averagedness window");
        const double eps_upper = (1.0 - w->epsilon) * (1.0 + w->epsilon * alpha) / alpha;
        if (w->lambda > eps_upper) {
            throw ParameterError("SolveConfig: lambda = " + std::to_string(w->lambda) +
                                 " exceeds the epsilon window bound " + std::to_string(eps_upper));
        }
    } else if (const auto* c = std::get_if<schedule::Constant>(&cfg.lambda_schedule)) {
        check(c->lambda, upper, "the averagedness window");
    } else {
        const auto& seq = std::get<schedule::Sequence>(cfg.lambda_schedule).values;
        if (seq.empty()) throw ParameterError("SolveConfig: lambda sequence is empty");
        for (double l : seq) check(l, upper, "the averagedness window");
    }
}

namespace {

void fill_record(IterationRecord& r, const SplitProblem& p, FdrsStep&& s, const Vector& z, double lambda) {
    r.z = z;
    r.z_next = relax(z, s.z_next, lambda);
    r.fpr_sq = (s.x_f - s.x_h).squaredNorm();
    r.feasibility = std::sqrt(r.fpr_sq);
    r.f_xf = p.f.eval(s.x_f);
    r.h_xh = p.g.eval(s.x_h);
    r.objective_split = r.f_xf + r.h_xh;
    r.objective_at_xh = p.f.eval(s.x_h) + r.h_xh;
    r.lambda = lambda;
    r.x_h = std::move(s.x_h);
    r.x_f = std::move(s.x_f);
    r.grad_h = std::move(s.grad_h);
    r.subgrad_chi = std::move(s.subgrad_chi);
    r.subgrad_f = std::move(s.subgrad_f);
}

}  // namespace

IterationTrace run(const SplitProblem& p, const SolveConfig& cfg) {
    validate_config(p, cfg);
    IterationTrace trace;
    trace.gamma = cfg.gamma;
    trace.alpha = alpha_fdrs(cfg.gamma, p.beta_v);
    trace.epsilon = cfg.epsilon;
    if (const auto* w = std::get_if<schedule::EpsilonWindow>(&cfg.lambda_schedule)) trace.epsilon = w->epsilon;

    const double guard = 1e12 * (1.0 + cfg.z0.norm());
    Vector z = cfg.z0;
    Vector sum_xh = Vector::Zero(p.dim());
    Vector sum_xf = Vector::Zero(p.dim());
    double Lambda = 0.0;
    double min_progress = kInf;

    for (long k = 0;; ++k) {
        const double lambda = lambda_at(cfg.lambda_schedule, k);
        min_progress = std::min(min_progress, lambda * (1.0 - lambda * trace.alpha));
        IterationRecord r;
        r.k = k;
        fill_record(r, p, apply_fdrs(p, z, cfg.gamma), z, lambda);
        Lambda += lambda;
        sum_xh += lambda * r.x_h;
        sum_xf += lambda * r.x_f;
        r.Lambda = Lambda;

        const bool last = r.fpr_sq <= cfg.fpr_tol || k + 1 >= cfg.max_iter;
        if (!r.z_next.allFinite() || r.z_next.norm() > guard) {
            throw NumericalError("FDRS iterate diverged at k = " + std::to_string(k) +
                                 " (||z|| = " + std::to_string(r.z_next.norm()) + ")");
        }
        Vector next = r.z_next;
        if (last || k % cfg.record_every == 0) {
            r.sum_lambda_xh = sum_xh;
            r.sum_lambda_xf = sum_xf;
            trace.records.push_back(std::move(r));
        }
        z = std::move(next);
        if (last) {
            trace.iterations = k + 1;
            trace.converged = trace.records.back().fpr_sq <= cfg.fpr_tol;
            break;
        }
    }
    if (min_progress < 1e-6) {
        trace.warnings.push_back("lambda_k (1 - lambda_k alpha) came within 1e-6 of zero; "
                                 "the weak-convergence condition may fail");
    }
    return trace;
}

ErgodicPoint ergodic_averages(const IterationTrace& trace, long k) {
    const IterationRecord& r = trace.at(k);
    return ErgodicPoint{r.sum_lambda_xh / r.Lambda, r.sum_lambda_xf / r.Lambda};
}

double default_gamma(const SplitProblem& p, GammaMode mode) {
    if (std::isinf(p.beta_v)) throw ParameterError("default_gamma: beta_v is infinite, choose gamma explicitly");
    return mode == GammaMode::Conservative ? p.beta_v : 1.99 * p.beta_v;
}

ReferenceSolution make_reference(const SplitProblem& p, const Vector& z_star, double gamma) {
    FdrsStep s = apply_fdrs(p, z_star, gamma);
    ReferenceSolution ref;
    ref.residual = (s.z_next - z_star).norm();
    ref.z_star = z_star;
    ref.x_star = std::move(s.x_h);
    ref.subgrad_chi_star = std::move(s.subgrad_chi);
    ref.grad_h_star = std::move(s.grad_h);
    ref.subgrad_f_star = -ref.grad_h_star - ref.subgrad_chi_star;
    ref.f_star = p.f.eval(ref.x_star);
    ref.g_star = p.g.eval(ref.x_star);
    return ref;
}

ReferenceSolution reference_solution(const SplitProblem& p, double gamma, const Vector& z0, double rel_tol,
                                     long max_iter) {
    alpha_fdrs(gamma, p.beta_v);
    Vector z = z0;
    Vector best = z0;
    double best_res = kInf;
    for (long k = 0; k < max_iter; ++k) {
        FdrsStep s = apply_fdrs(p, z, gamma);
        const double res = (s.z_next - z).norm();
        if (res < best_res) {
            best_res = res;
            best = z;
        }
        if (res <= rel_tol * (1.0 + z.norm())) break;
        if (!s.z_next.allFinite()) throw NumericalError("reference_solution: iterate is not finite");
        z = std::move(s.z_next);
    }
    return make_reference(p, best, gamma);
}

}  // namespace fdrs
