#include "fdrs/certificates.hpp"

#include <algorithm>
#include <cmath>

namespace fdrs {

namespace {

// beta/2 * sq where an infinite beta accompanies a constant gradient.
double half_scaled(double beta, double sq) {
    if (std::isinf(beta)) return 0.0;
    return 0.5 * beta * sq;
}

double ratio_over(double gamma, double beta) {
    return std::isinf(beta) ? 0.0 : gamma / beta;
}

class Tracker {
public:
    Tracker(std::string name, std::string anchor, double tol) {
        e_.name = std::move(name);
        e_.anchor = std::move(anchor);
        e_.tolerance = tol;
    }

    // Records the residual (lhs - rhs) / scale at iteration k.
    void add(double lhs, double rhs, double scale, long k) {
        double v = (lhs - rhs) / scale;
        if (std::isnan(v)) v = kInf;
        if (e_.at_iteration < 0 || v > e_.worst_violation) {
            e_.worst_violation = v;
            e_.at_iteration = k;
        }
        if (v > e_.tolerance && e_.first_violation < 0) e_.first_violation = k;
    }

    CertificateEntry finish(std::optional<double> ratio = std::nullopt) {
        if (e_.at_iteration < 0) e_.worst_violation = 0.0;
        e_.pass = e_.worst_violation <= e_.tolerance;
        e_.ratio = ratio;
        return e_;
    }

private:
    CertificateEntry e_;
};

void require_dense(const CertContext& c, const char* what) {
    if (!c.trace.dense()) {
        throw ParameterError(std::string(what) + " needs a trace recorded at every iteration");
    }
}

void require_epsilon_window(const CertContext& c, const char* what) {
    if (!c.epsilon_window_holds()) {
        throw ParameterError(std::string(what) + " needs every lambda inside the epsilon window");
    }
}

double dist_floor(const CertContext& c) {
    return 1e-12 * (1.0 + c.ref.z_star.squaredNorm());
}

double objective_error_split(const CertContext& c, const IterationRecord& r) {
    return r.f_xf + r.h_xh - c.ref.f_star - c.ref.g_star;
}

double objective_error_xh(const CertContext& c, const IterationRecord& r) {
    return r.objective_at_xh - c.ref.f_star - c.ref.g_star;
}

// Ergodic upper-bound numerator; the bound is this over Lambda_k.
double ergodic_upper_constant(const CertContext& c) {
    const double D = c.D;
    const double g = c.gamma;
    const double e = c.epsilon;
    const double tail = std::isinf(c.problem.beta_v) ? 0.0 : (1.0 + e) * g * D / (e * e * e * (2.0 * c.problem.beta_v - g));
    return (D + 4.0 * g * c.ref.grad_h_star.norm() + tail) * D / (2.0 * g);
}

// Nonergodic upper-bound numerator; the bound is this over sqrt(tau (k+1)).
double nonergodic_upper_constant(const CertContext& c) {
    const double D = c.D;
    const double g = c.gamma;
    return ((c.ref.z_star - c.ref.x_star).norm() + (1.0 + ratio_over(g, c.problem.beta_v)) * D +
            g * c.ref.grad_h_star.norm()) *
           D / g;
}

double strong_best_constant(const CertContext& c) {
    const double g = c.gamma;
    const double e = c.epsilon;
    const double extra = std::isinf(c.problem.beta_v) ? 0.0 : (1.0 + e) * g / (e * e * e * (2.0 * c.problem.beta_v - g));
    return (1.0 + extra) * c.D * c.D / (4.0 * g);
}

CertificateEntry little_o(const CertContext& c, const std::string& name, const std::string& anchor,
                          const std::vector<double>& q) {
    Tracker t(name, anchor, 0.0);
    const long K = static_cast<long>(q.size()) - 1;
    if (K < 10) {
        throw ParameterError(name + " needs at least 11 recorded iterations");
    }
    double running = kInf;
    double early = 0.0;
    for (long k = 0; k <= K; ++k) {
        running = std::min(running, std::max(q[static_cast<std::size_t>(k)], 0.0));
        if (k == 10) early = 11.0 * running;
    }
    const double tail = static_cast<double>(K + 1) * running;
    const double ref = 0.01 * early;
    const double scale = early > 0.0 ? early : 1.0;
    t.add(tail, ref, scale, K);
    (void)c;
    return t.finish(early > 0.0 ? std::optional<double>(tail / early) : std::optional<double>(0.0));
}

}  // namespace

bool RateReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const CertificateEntry& e) { return e.pass; });
}

const CertificateEntry& RateReport::get(const std::string& name) const {
    for (const auto& e : entries) {
        if (e.name == name) return e;
    }
    throw std::out_of_range("RateReport: no entry named " + name);
}

CertContext::CertContext(const SplitProblem& p, const IterationTrace& t, const ReferenceSolution& r)
    : problem(p), trace(t), ref(r) {
    if (t.records.empty()) throw ParameterError("CertContext: empty trace");
    if (t.records.front().k != 0) throw ParameterError("CertContext: trace must start at k = 0");
    require_dim(r.z_star.size(), p.dim(), "CertContext: z_star");
    gamma = t.gamma;
    alpha = alpha_fdrs(gamma, p.beta_v);
    epsilon = t.epsilon;
    D = (t.records.front().z - r.z_star).norm();
    tau_min = kInf;
    lambda_min = kInf;
    lambda_max = 0.0;
    delta = kInf;
    for (const auto& rec : t.records) {
        const double l = rec.lambda;
        tau_min = std::min(tau_min, (1.0 - l * alpha) * l / alpha);
        delta = std::min(delta, (1.0 - l * alpha) / (l * alpha));
        lambda_min = std::min(lambda_min, l);
        lambda_max = std::max(lambda_max, l);
    }
    const double d_eff = std::max(D, 1e-12 * (1.0 + r.z_star.norm()));
    tolerance = 1e-7 + 10.0 * r.residual / d_eff;
    fn_scale = std::abs(r.f_star) + std::abs(r.g_star);
}

bool CertContext::epsilon_window_holds() const {
    const double upper = (1.0 - epsilon) * (1.0 + epsilon * alpha) / alpha;
    return std::all_of(trace.records.begin(), trace.records.end(),
                       [&](const IterationRecord& r) { return r.lambda <= upper; });
}

double s_f(const CertContext& c, const Vector& x_f, const Vector& grad_f) {
    const double strong = 0.5 * c.problem.mu_f * (x_f - c.ref.x_star).squaredNorm();
    if (c.problem.beta_f > 0.0) {
        return std::max(strong, half_scaled(c.problem.beta_f, (grad_f - c.ref.subgrad_f_star).squaredNorm()));
    }
    return strong;
}

double s_h(const CertContext& c, const Vector& x_h, const Vector& grad_h) {
    const double strong = 0.5 * c.problem.mu_g * (c.problem.V.project(x_h) - c.ref.x_star).squaredNorm();
    return std::max(strong, half_scaled(c.problem.beta_v, (grad_h - c.ref.grad_h_star).squaredNorm()));
}

CertificateEntry check_fejer(const CertContext& c) {
    Tracker t("fejer", "Fejer monotonicity of ||z^k - z*||", c.tolerance);
    const double scale = std::max(c.D * c.D, dist_floor(c));
    for (const auto& r : c.trace.records) {
        t.add((r.z_next - c.ref.z_star).squaredNorm(), (r.z - c.ref.z_star).squaredNorm(), scale, r.k + 1);
    }
    return t.finish();
}

CertificateEntry check_fpr_summability(const CertContext& c) {
    require_dense(c, "fpr_summability");
    Tracker t("fpr_summability", "sum of weighted squared steps <= ||z^0 - z*||^2", c.tolerance);
    const double bound = c.D * c.D;
    const double scale = std::max(bound, dist_floor(c));
    double sum = 0.0;
    for (const auto& r : c.trace.records) {
        const double la = r.lambda * c.alpha;
        sum += (1.0 - la) / la * (r.z_next - r.z).squaredNorm();
        t.add(sum, bound, scale, r.k + 1);
    }
    return t.finish(bound > 0.0 ? std::optional<double>(sum / bound) : std::nullopt);
}

CertificateEntry check_fpr_envelope(const CertContext& c) {
    Tracker t("fpr_envelope", "||Tz^k - z^k||^2 <= ||z^0 - z*||^2 / (tau (k+1))", c.tolerance);
    const double num = c.D * c.D / c.tau_min;
    const double scale = std::max(num, dist_floor(c));
    for (const auto& r : c.trace.records) {
        t.add(r.fpr_sq, num / static_cast<double>(r.k + 1), scale, r.k);
    }
    return t.finish();
}

CertificateEntry check_gradient_sum(const CertContext& c) {
    require_dense(c, "gradient_sum");
    require_epsilon_window(c, "gradient_sum");
    Tracker t("gradient_sum", "sum lambda_k ||grad h(x_h^k) - grad h(x*)||^2", c.tolerance);
    const double e = c.epsilon;
    const double bound = std::isinf(c.problem.beta_v)
                             ? 0.0
                             : (1.0 + e) / (c.gamma * e * (2.0 * c.problem.beta_v - c.gamma)) * c.D * c.D;
    const double floor = dist_floor(c) / (c.gamma * c.gamma);
    const double scale = std::max(bound, floor);
    double sum = 0.0;
    for (const auto& r : c.trace.records) {
        sum += r.lambda * (r.grad_h - c.ref.grad_h_star).squaredNorm();
        t.add(sum, bound, scale, r.k);
    }
    return t.finish(bound > 0.0 ? std::optional<double>(sum / bound) : std::nullopt);
}

CertificateEntry check_ergodic_objective(const CertContext& c) {
    require_epsilon_window(c, "ergodic_objective");
    Tracker t("ergodic_objective", "ergodic objective and feasibility envelopes", c.tolerance);
    const double lower_num = 2.0 * c.D * c.ref.subgrad_f_star.norm();
    const double upper_num = ergodic_upper_constant(c);
    const double obj_floor = c.fn_scale + 1e-12;
    const double feas_scale = std::max(2.0 * c.D, std::sqrt(dist_floor(c)));
    for (const auto& r : c.trace.records) {
        const Vector xh = r.sum_lambda_xh / r.Lambda;
        const Vector xf = r.sum_lambda_xf / r.Lambda;
        const double E = c.problem.f.eval(xf) + c.problem.eval_h(xh) - c.ref.f_star - c.ref.g_star;
        t.add(-E, lower_num / r.Lambda, lower_num + obj_floor, r.k);
        t.add(E, upper_num / r.Lambda, upper_num + obj_floor, r.k);
        t.add((xf - xh).norm(), 2.0 * c.D / r.Lambda, feas_scale, r.k);
    }
    return t.finish();
}

CertificateEntry check_nonergodic_objective(const CertContext& c) {
    Tracker t("nonergodic_objective", "nonergodic objective and feasibility envelopes", c.tolerance);
    const double rt = std::sqrt(c.tau_min);
    const double lower_num = c.D * c.ref.subgrad_f_star.norm() / rt;
    const double upper_num = nonergodic_upper_constant(c) / rt;
    const double obj_floor = c.fn_scale + 1e-12;
    const double feas_num = c.D / rt;
    const double feas_scale = std::max(feas_num, std::sqrt(dist_floor(c)));
    for (const auto& r : c.trace.records) {
        const double s = std::sqrt(static_cast<double>(r.k + 1));
        const double E = objective_error_split(c, r);
        t.add(-E, lower_num / s, lower_num + obj_floor, r.k);
        t.add(E, upper_num / s, upper_num + obj_floor, r.k);
        t.add(r.feasibility, feas_num / s, feas_scale, r.k);
    }
    return t.finish();
}

CertificateEntry check_lipschitz_objective(const CertContext& c, double L) {
    if (!(L >= 0.0)) throw ParameterError("lipschitz_objective: L must be nonnegative");
    require_epsilon_window(c, "lipschitz_objective");
    Tracker t("lipschitz_objective", "objective at x_h with Lipschitz f, ergodic and nonergodic", c.tolerance);
    const double rt = std::sqrt(c.tau_min);
    const double ne_num = (nonergodic_upper_constant(c) + L * c.D) / rt;
    const double er_num = ergodic_upper_constant(c) + 2.0 * L * c.D;
    const double floor = c.fn_scale + 1e-12;
    for (const auto& r : c.trace.records) {
        const double s = std::sqrt(static_cast<double>(r.k + 1));
        const double E = objective_error_xh(c, r);
        t.add(-E, 0.0, ne_num + floor, r.k);
        t.add(E, ne_num / s, ne_num + floor, r.k);
        const Vector xh = r.sum_lambda_xh / r.Lambda;
        const double Eb = c.problem.f.eval(xh) + c.problem.eval_h(xh) - c.ref.f_star - c.ref.g_star;
        t.add(-Eb, 0.0, er_num + floor, r.k);
        t.add(Eb, er_num / r.Lambda, er_num + floor, r.k);
    }
    return t.finish();
}

CertificateEntry check_strong_convexity(const CertContext& c) {
    require_dense(c, "strong_convexity");
    require_epsilon_window(c, "strong_convexity");
    Tracker t("strong_convexity", "best, ergodic and nonergodic bounds on S_f + S_h", c.tolerance);
    const double best_num = strong_best_constant(c);
    const double ne_num = (1.0 + ratio_over(c.gamma, c.problem.beta_v)) * c.D * c.D / (2.0 * c.gamma * std::sqrt(c.tau_min));
    const double floor = dist_floor(c) / c.gamma;
    double best = kInf;
    for (const auto& r : c.trace.records) {
        const double S = s_f(c, r.x_f, r.subgrad_f) + s_h(c, r.x_h, r.grad_h);
        best = std::min(best, S);
        const double kk = static_cast<double>(r.k + 1);
        t.add(best, best_num / (c.lambda_min * kk), best_num / c.lambda_min + floor, r.k);
        const Vector xh = r.sum_lambda_xh / r.Lambda;
        const Vector xf = r.sum_lambda_xf / r.Lambda;
        const double erg = 0.5 * c.problem.mu_f * (xf - c.ref.x_star).squaredNorm() +
                           0.5 * c.problem.mu_g * (xh - c.ref.x_star).squaredNorm();
        t.add(erg, best_num / r.Lambda, best_num + floor, r.k);
        t.add(S, ne_num / std::sqrt(kk), ne_num + floor, r.k);
    }
    return t.finish();
}

CertificateEntry check_best_iterate_smooth(const CertContext& c) {
    if (!(c.problem.beta_f > 0.0)) throw ParameterError("best_iterate_smooth needs a smooth f");
    require_dense(c, "best_iterate_smooth");
    require_epsilon_window(c, "best_iterate_smooth");
    Tracker t("best_iterate_smooth", "nonnegativity and summability of the objective error at x_h", c.tolerance);
    const double g = c.gamma;
    const double bf = c.problem.beta_f;
    const double e = c.epsilon;
    const double grad_term = std::isinf(c.problem.beta_v) ? 0.0 : (1.0 + e) * g / (e * (2.0 * c.problem.beta_v - g));
    double bound = (1.0 + 1.0 / c.delta + grad_term + 1.0 / (c.lambda_min * c.delta)) * c.D * c.D /
                   (2.0 * g * c.lambda_min);
    if (g > bf) bound *= 1.0 + (g - bf) / (2.0 * bf);
    const double floor = c.fn_scale + 1e-12;
    double sum = 0.0;
    for (const auto& r : c.trace.records) {
        const double E = objective_error_xh(c, r);
        t.add(-E, 0.0, bound + floor, r.k);
        sum += E;
        t.add(sum, bound, bound + floor, r.k);
    }
    return t.finish(bound > 0.0 ? std::optional<double>(sum / bound) : std::nullopt);
}

LinearFactors linear_contraction_factors(double gamma, double lambda, double c, double mu_f, double mu_g,
                                         double beta_f, double beta_v) {
    if (!(c > 0.5)) throw ParameterError("linear_contraction_factors: c must exceed 1/2");
    if (!(gamma > 0.0) || !(gamma < beta_v / c)) {
        throw ParameterError("linear_contraction_factors: gamma must lie in (0, beta_v / c)");
    }
    const double width = (2.0 * c - 1.0) / c;
    if (!(lambda > 0.0 && lambda < width)) {
        throw ParameterError("linear_contraction_factors: lambda must lie in (0, (2c - 1)/c)");
    }
    if (mu_f < 0.0 || mu_g < 0.0 || beta_f < 0.0) {
        throw ParameterError("linear_contraction_factors: moduli must be nonnegative");
    }
    const double rv = ratio_over(gamma, beta_v);
    const double rf = beta_f > 0.0 ? ratio_over(gamma, beta_f) : kInf;
    const double m1 = std::min({gamma * mu_g / ((1.0 + rv) * (1.0 + rv)), beta_f / gamma, width - lambda});
    const double m2 = std::min({std::isinf(rf) ? 0.0 : gamma * mu_f / ((1.0 + rf) * (1.0 + rf)),
                                (beta_v - c * gamma) / gamma, 0.25 * (width - lambda)});
    return LinearFactors{std::sqrt(1.0 - lambda / 3.0 * m1), std::sqrt(1.0 - lambda / 3.0 * m2)};
}

CertificateEntry check_linear_convergence(const CertContext& c, double cparam) {
    const auto& p = c.problem;
    const bool use1 = p.mu_g * p.beta_f > 0.0;
    const bool use2 = p.mu_f * p.beta_f > 0.0;
    if (!use1 && !use2) throw ParameterError("linear_convergence needs beta_f (mu_f + mu_g) > 0");
    require_dense(c, "linear_convergence");
    Tracker t("linear_convergence", "per-step and cumulative contraction of ||z^k - z*||", c.tolerance);
    const double scale = std::max(c.D, std::sqrt(dist_floor(c)));
    double product = 1.0;
    for (const auto& r : c.trace.records) {
        const LinearFactors lf =
            linear_contraction_factors(c.gamma, r.lambda, cparam, p.mu_f, p.mu_g, p.beta_f, p.beta_v);
        double factor = kInf;
        if (use1) factor = std::min(factor, lf.c1);
        if (use2) factor = std::min(factor, lf.c2);
        product *= factor;
        const double next = (r.z_next - c.ref.z_star).norm();
        t.add(next, factor * (r.z - c.ref.z_star).norm(), scale, r.k + 1);
        t.add(next, product * c.D, scale, r.k + 1);
    }
    return t.finish();
}

CertificateEntry check_upper_fundamental(const CertContext& c) {
    Tracker t("upper_fundamental", "per-step upper fundamental inequality at x*", c.tolerance);
    const Vector& xs = c.ref.x_star;
    const double reach = c.D + (c.ref.z_star - xs).norm();
    const double scale = reach * reach + 2.0 * c.gamma * c.lambda_max * c.fn_scale + dist_floor(c);
    const double h_star = c.ref.g_star;
    for (const auto& r : c.trace.records) {
        const double l = r.lambda;
        const double lhs = 2.0 * c.gamma * l *
                           (r.f_xf + r.h_xh - c.ref.f_star - h_star + s_f(c, r.x_f, r.subgrad_f) +
                            s_h(c, r.x_h, r.grad_h));
        const Vector step = r.z - r.z_next;
        const double rhs = (r.z - xs).squaredNorm() - (r.z_next - xs).squaredNorm() +
                           (1.0 - 2.0 / l) * step.squaredNorm() + 2.0 * c.gamma * r.grad_h.dot(step);
        t.add(lhs, rhs, scale, r.k + 1);
    }
    return t.finish();
}

CertificateEntry check_lower_fundamental(const CertContext& c) {
    Tracker t("lower_fundamental", "lower fundamental inequality at x*", c.tolerance);
    const double gnorm = c.ref.subgrad_f_star.norm();
    const double scale = c.fn_scale + c.D * gnorm + c.D * c.D / c.gamma + dist_floor(c) / c.gamma;
    for (const auto& r : c.trace.records) {
        const double lhs = objective_error_split(c, r);
        const double rhs = (r.x_f - r.x_h).dot(c.ref.subgrad_f_star) + s_f(c, r.x_f, r.subgrad_f) +
                           s_h(c, r.x_h, r.grad_h);
        t.add(rhs, lhs, scale, r.k);
    }
    return t.finish();
}

CertificateEntry check_strong_fundamental(const CertContext& c) {
    Tracker t("strong_fundamental", "per-step bound on 4 gamma lambda (S_f + S_h)", c.tolerance);
    const Vector& zs = c.ref.z_star;
    const double scale = std::max(c.D * c.D, dist_floor(c));
    for (const auto& r : c.trace.records) {
        const double l = r.lambda;
        const double lhs = 4.0 * c.gamma * l * (s_f(c, r.x_f, r.subgrad_f) + s_h(c, r.x_h, r.grad_h));
        const Vector step = r.z - r.z_next;
        const double rhs = (r.z - zs).squaredNorm() - (r.z_next - zs).squaredNorm() +
                           (1.0 - 2.0 / l) * step.squaredNorm() +
                           2.0 * c.gamma * (r.grad_h - c.ref.grad_h_star).dot(step);
        t.add(lhs, rhs, scale, r.k + 1);
    }
    return t.finish();
}

CertificateEntry check_smooth_fundamental(const CertContext& c) {
    const double bf = c.problem.beta_f;
    if (!(bf > 0.0)) throw ParameterError("smooth_fundamental needs a smooth f");
    Tracker t("smooth_fundamental", "per-step fundamental inequality for smooth f", c.tolerance);
    const Vector& zs = c.ref.z_star;
    const double g = c.gamma;
    const double scale = c.D * c.D + 2.0 * g * c.lambda_max * c.fn_scale + dist_floor(c);
    for (const auto& r : c.trace.records) {
        const double l = r.lambda;
        const double lhs = 2.0 * g * l * objective_error_xh(c, r);
        const Vector step = r.z - r.z_next;
        const double dz = (r.z - zs).squaredNorm() - (r.z_next - zs).squaredNorm();
        const double cross = 2.0 * g * (r.grad_h - c.ref.grad_h_star).dot(step);
        double rhs;
        if (g <= bf) {
            rhs = dz + (1.0 + (g - bf) / (bf * l)) * step.squaredNorm() + cross;
        } else {
            const double m = 1.0 + (g - bf) / (2.0 * bf);
            rhs = m * (dz + step.squaredNorm()) + m * cross;
        }
        t.add(lhs, rhs, scale, r.k + 1);
    }
    return t.finish();
}

CertificateEntry little_o_fpr(const CertContext& c) {
    require_dense(c, "little_o_fpr");
    std::vector<double> q;
    q.reserve(c.trace.records.size());
    for (const auto& r : c.trace.records) q.push_back(r.fpr_sq);
    return little_o(c, "fpr_little_o", "(k+1) min_j ||Tz^j - z^j||^2 tail diagnostic", q);
}

CertificateEntry little_o_strong(const CertContext& c) {
    require_dense(c, "little_o_strong");
    std::vector<double> q;
    for (const auto& r : c.trace.records) q.push_back(s_f(c, r.x_f, r.subgrad_f) + s_h(c, r.x_h, r.grad_h));
    return little_o(c, "strong_convexity_little_o", "(k+1) min_j (S_f + S_h) tail diagnostic", q);
}

CertificateEntry little_o_smooth(const CertContext& c) {
    require_dense(c, "little_o_smooth");
    std::vector<double> q;
    for (const auto& r : c.trace.records) q.push_back(objective_error_xh(c, r));
    return little_o(c, "smooth_objective_little_o", "(k+1) min_j objective error at x_h tail diagnostic", q);
}

RateReport certify(const CertContext& c, const CertifyOptions& opt) {
    RateReport rep;
    rep.tolerance = c.tolerance;
    const auto& p = c.problem;
    const bool dense = c.trace.dense();
    const bool window = c.epsilon_window_holds();
    const bool long_enough = c.trace.records.size() > 10;

    rep.entries.push_back(check_fejer(c));
    if (dense) rep.entries.push_back(check_fpr_summability(c));
    rep.entries.push_back(check_fpr_envelope(c));
    if (dense && window) rep.entries.push_back(check_gradient_sum(c));
    if (window) rep.entries.push_back(check_ergodic_objective(c));
    rep.entries.push_back(check_nonergodic_objective(c));
    if (opt.lipschitz && window) rep.entries.push_back(check_lipschitz_objective(c, *opt.lipschitz));
    if (dense && window) rep.entries.push_back(check_strong_convexity(c));
    if (p.beta_f > 0.0 && dense && window) rep.entries.push_back(check_best_iterate_smooth(c));
    if (opt.linear_c && dense && p.beta_f * (p.mu_f + p.mu_g) > 0.0) {
        rep.entries.push_back(check_linear_convergence(c, *opt.linear_c));
    }
    rep.entries.push_back(check_upper_fundamental(c));
    rep.entries.push_back(check_lower_fundamental(c));
    rep.entries.push_back(check_strong_fundamental(c));
    if (p.beta_f > 0.0) rep.entries.push_back(check_smooth_fundamental(c));
    if (opt.diagnostics && dense && long_enough) {
        rep.entries.push_back(little_o_fpr(c));
        if (p.mu_f + p.mu_g > 0.0) rep.entries.push_back(little_o_strong(c));
        if (p.beta_f > 0.0) rep.entries.push_back(little_o_smooth(c));
    }
    return rep;
}

IterationTrace knock_iterate(const IterationTrace& trace, const SplitProblem& p, const ReferenceSolution& ref, long j,
                             double t) {
    if (!trace.dense()) throw ParameterError("knock_iterate: trace must be dense");
    const long last = trace.records.back().k;
    if (j < 1 || j > last) throw ParameterError("knock_iterate: index out of range");
    IterationTrace out = trace;
    auto& prev = out.records[static_cast<std::size_t>(j - 1)];
    auto& rec = out.records[static_cast<std::size_t>(j)];
    Vector u = prev.z - ref.z_star;
    if (u.norm() == 0.0) {
        u = Vector::Zero(p.dim());
        u(0) = 1.0;
    }
    u.normalize();
    const Vector z = rec.z + t * u;
    FdrsStep s = apply_fdrs(p, z, trace.gamma);
    const double lambda = rec.lambda;
    rec.z = z;
    rec.z_next = relax(z, s.z_next, lambda);
    rec.fpr_sq = (s.x_f - s.x_h).squaredNorm();
    rec.feasibility = std::sqrt(rec.fpr_sq);
    rec.f_xf = p.f.eval(s.x_f);
    rec.h_xh = p.g.eval(s.x_h);
    rec.objective_split = rec.f_xf + rec.h_xh;
    rec.objective_at_xh = p.f.eval(s.x_h) + rec.h_xh;
    const Vector dxh = s.x_h - rec.x_h;
    const Vector dxf = s.x_f - rec.x_f;
    rec.x_h = std::move(s.x_h);
    rec.x_f = std::move(s.x_f);
    rec.grad_h = std::move(s.grad_h);
    rec.subgrad_chi = std::move(s.subgrad_chi);
    rec.subgrad_f = std::move(s.subgrad_f);
    prev.z_next = z;
    for (auto it = out.records.begin() + j; it != out.records.end(); ++it) {
        it->sum_lambda_xh += lambda * dxh;
        it->sum_lambda_xf += lambda * dxf;
    }
    return out;
}

IterationTrace perturb_primal(const IterationTrace& trace, long j, const Vector& shift) {
    IterationTrace out = trace;
    for (auto& r : out.records) {
        if (r.k == j) {
            require_dim(shift.size(), r.x_f.size(), "perturb_primal");
            r.x_f += shift;
            return out;
        }
    }
    throw ParameterError("perturb_primal: no record for the requested index");
}

}  // namespace fdrs
