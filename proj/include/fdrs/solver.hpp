#pragma once

#include "fdrs/operators.hpp"

#include <string>
#include <variant>
#include <vector>

namespace fdrs {

namespace schedule {
struct Constant {
    double lambda;
};
/// lambda_k = values[k]; the last value is repeated once the list runs out.
struct Sequence {
    std::vector<double> values;
};
/// Constant lambda additionally validated against the epsilon window.
struct EpsilonWindow {
    double epsilon;
    double lambda;
};
}  // namespace schedule

using LambdaSchedule = std::variant<schedule::Constant, schedule::Sequence, schedule::EpsilonWindow>;

struct SolveConfig {
    double gamma = 0.0;
    LambdaSchedule lambda_schedule = schedule::Constant{1.0};
    double epsilon = 0.1;
    long max_iter = 1000;
    double fpr_tol = 1e-20;  // stop once ||Tz - z||^2 <= fpr_tol; negative runs all max_iter steps
    long record_every = 1;
    Vector z0;
};

/// State of one iteration k: z^k, the quantities of the FDRS step taken
/// from it, and z^{k+1}.
struct IterationRecord {
    long k = 0;
    Vector z;
    Vector z_next;
    Vector x_h;
    Vector x_f;
    Vector grad_h;
    Vector subgrad_chi;
    Vector subgrad_f;
    double lambda = 0.0;
    double fpr_sq = 0.0;            // ||T z^k - z^k||^2
    double feasibility = 0.0;       // ||x_f - x_h||
    double f_xf = 0.0;
    double h_xh = 0.0;
    double objective_at_xh = 0.0;   // f(x_h) + g(x_h), may be +inf
    double objective_split = 0.0;   // f(x_f) + h(x_h)
    double Lambda = 0.0;            // sum_{i <= k} lambda_i
    Vector sum_lambda_xh;           // sum_{i <= k} lambda_i x_h^i
    Vector sum_lambda_xf;
};

struct IterationTrace {
    std::vector<IterationRecord> records;
    double gamma = 0.0;
    double alpha = 0.0;
    double epsilon = 0.0;
    long iterations = 0;  // steps taken; z^{iterations} is the last iterate
    bool converged = false;
    std::vector<std::string> warnings;

    const IterationRecord& at(long k) const;
    const IterationRecord& back() const { return records.back(); }
    /// True when every k from 0 to the last record is present.
    bool dense() const;
};

/// lambda_k of a schedule.
double lambda_at(const LambdaSchedule& s, long k);

/// Throws ParameterError unless gamma and every scheduled lambda lie in
/// their admissible windows for p.
void validate_config(const SplitProblem& p, const SolveConfig& cfg);

/// z^{k+1} = (1 - lambda_k) z^k + lambda_k T z^k until fpr_sq <= fpr_tol
/// or max_iter steps.  Records k = 0, every record_every-th step, and the
/// final step.
IterationTrace run(const SplitProblem& p, const SolveConfig& cfg);

struct ErgodicPoint {
    Vector x_h;
    Vector x_f;
};
ErgodicPoint ergodic_averages(const IterationTrace& trace, long k);

enum class GammaMode { Conservative, Aggressive };
double default_gamma(const SplitProblem& p, GammaMode mode);

struct ReferenceSolution {
    Vector z_star;
    Vector x_star;
    Vector subgrad_chi_star;
    Vector grad_h_star;
    Vector subgrad_f_star;  // -grad_h_star - subgrad_chi_star
    double f_star = 0.0;
    double g_star = 0.0;
    double residual = 0.0;  // ||T z* - z*||
};

/// Completes a reference from a fixed point z*.
ReferenceSolution make_reference(const SplitProblem& p, const Vector& z_star, double gamma);

/// High-accuracy fixed point from z0 with lambda = 1: iterates until
/// ||Tz - z|| <= rel_tol (1 + ||z||) or max_iter steps.
ReferenceSolution reference_solution(const SplitProblem& p, double gamma, const Vector& z0, double rel_tol = 1e-13,
                                     long max_iter = 1000000);

}  // namespace fdrs
