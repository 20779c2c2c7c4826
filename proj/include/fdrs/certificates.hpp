#pragma once

#include "fdrs/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fdrs {

/// One verified inequality family.  Residuals are (lhs - rhs) divided by a
/// fixed, iteration-independent scale of the bound, so negative values mean
/// the inequality holds with room to spare.
struct CertificateEntry {
    std::string name;
    std::string anchor;
    double worst_violation = -kInf;
    long at_iteration = -1;
    long first_violation = -1;  // first k whose residual exceeds the tolerance
    double tolerance = 0.0;
    bool pass = true;
    std::optional<double> ratio;  // tightness (lhs / rhs) where meaningful
};

struct RateReport {
    std::vector<CertificateEntry> entries;
    double tolerance = 0.0;

    bool all_pass() const;
    const CertificateEntry& get(const std::string& name) const;
};

/// Everything a certificate may read.  The trace must come from a run of
/// the same problem and gamma that the reference was built for.
struct CertContext {
    const SplitProblem& problem;
    const IterationTrace& trace;
    const ReferenceSolution& ref;

    double D = 0.0;          // ||z^0 - z*||
    double alpha = 0.0;
    double gamma = 0.0;
    double epsilon = 0.0;
    double tau_min = 0.0;     // inf_k (1 - lambda_k alpha) lambda_k / alpha
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double delta = 0.0;       // inf_k (1 - lambda_k alpha) / (lambda_k alpha)
    double tolerance = 0.0;   // 1e-7 + 10 ||T z* - z*|| / D
    double fn_scale = 0.0;    // |f(x*)| + |g(x*)|

    CertContext(const SplitProblem& p, const IterationTrace& t, const ReferenceSolution& r);

    /// True when every recorded lambda satisfies the epsilon window.
    bool epsilon_window_holds() const;
};

/// S_f(x, x*) and S_h(x, x*) at record quantities.
double s_f(const CertContext& c, const Vector& x_f, const Vector& grad_f);
double s_h(const CertContext& c, const Vector& x_h, const Vector& grad_h);

CertificateEntry check_fejer(const CertContext& c);
CertificateEntry check_fpr_summability(const CertContext& c);
CertificateEntry check_fpr_envelope(const CertContext& c);
CertificateEntry check_gradient_sum(const CertContext& c);
CertificateEntry check_ergodic_objective(const CertContext& c);
CertificateEntry check_nonergodic_objective(const CertContext& c);
CertificateEntry check_lipschitz_objective(const CertContext& c, double L);
CertificateEntry check_strong_convexity(const CertContext& c);
CertificateEntry check_best_iterate_smooth(const CertContext& c);
CertificateEntry check_linear_convergence(const CertContext& c, double cparam);

CertificateEntry check_upper_fundamental(const CertContext& c);
CertificateEntry check_lower_fundamental(const CertContext& c);
CertificateEntry check_strong_fundamental(const CertContext& c);
CertificateEntry check_smooth_fundamental(const CertContext& c);

/// (k+1) min_{j<=k} q_j at the last record compared with its value at k = 10;
/// passes when the tail is at most 1% of the early value.
CertificateEntry little_o_fpr(const CertContext& c);
CertificateEntry little_o_strong(const CertContext& c);
CertificateEntry little_o_smooth(const CertContext& c);

struct LinearFactors {
    double c1;
    double c2;
};
/// Contraction factors for strongly convex, smooth instances.  Requires
/// c > 1/2, gamma < beta_v / c and lambda in (0, (2c - 1)/c).
LinearFactors linear_contraction_factors(double gamma, double lambda, double c, double mu_f, double mu_g,
                                         double beta_f, double beta_v);

struct CertifyOptions {
    std::optional<double> lipschitz;  // L for f on B(x*, D)
    std::optional<double> linear_c;   // c for the linear-rate check
    bool diagnostics = true;          // include the little-o entries
};

/// Runs every certificate whose hypotheses hold for the context.
RateReport certify(const CertContext& c, const CertifyOptions& opt = {});

/// Negative control: replaces z^j by z^j + t u with u the outward unit
/// direction from z* (falls back to a coordinate direction), recomputes
/// record j from the new point, and repairs z^j in record j-1 and the
/// running sums.  Requires a dense trace and 1 <= j <= last record.
IterationTrace knock_iterate(const IterationTrace& trace, const SplitProblem& p, const ReferenceSolution& ref, long j,
                             double t);

/// Negative control for inequalities that hold at every admissible point:
/// shifts the stored x_f^j by `shift` without touching any stored values.
IterationTrace perturb_primal(const IterationTrace& trace, long j, const Vector& shift);

}  // namespace fdrs
