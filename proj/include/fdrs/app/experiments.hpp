#pragma once

#include "fdrs/counterexamples.hpp"
#include "fdrs/problems.hpp"
#include "fdrs/solver.hpp"
#include "fdrs/spectral.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace fdrs::app {

/// Lower-bound check of the sublinear rotation instance at k = 0 .. k_max.
struct SublinearCheck {
    double alpha = 0.0;
    double a = 0.0;
    Index blocks = 0;
    long k_max = 0;
    double max_deficit = 0.0;       // truncation deficit at k_max
    long first_xh_failure = -1;
    long first_xf_failure = -1;
    long first_monotone_failure = -1;  // first k with ||z^{k+1}|| >= ||z^k||
    double min_xh_ratio = kInf;     // min_k ||x_h^k||^2 / bound
    double min_xf_ratio = kInf;
    double last_xh_step_ratio = 0.0;  // ||x_h^{k_max}|| / ||x_h^{k_max - 1}||
    BlockRun run;

    bool pass() const noexcept {
        return first_xh_failure < 0 && first_xf_failure < 0 && first_monotone_failure < 0;
    }
};

/// ||x_h^k||^2 >= (1 - d_k)/(k+1)^{2 alpha} and
/// ||x_f^k||^2 >= (1 - d_k)(a + 1/2)^2/((a+1)^2 (k+1)^{2 alpha}) with d_k the truncation deficit.
SublinearCheck check_sublinear(double alpha, double a, Index blocks, long k_max);

struct SlowCheck {
    SlowSchedule schedule;
    Index blocks = 0;
    long k_max = 0;
    long first_failure = -1;  // first k >= 1 with ||z^k|| < e^{-1} F(k)
    double min_ratio = kInf;  // min_k ||z^k|| / (e^{-1} F(k))
    BlockRun run;

    bool pass() const noexcept { return first_failure < 0; }
};

/// F(t) = (t + 2)^{-power}.
std::function<double(double)> power_decay(double power);

SlowCheck check_arbitrarily_slow(std::function<double(double)> F, long k_max, double eta, double a);

/// Iterations until ||T z^k - z^k||^2 / ||T z^0 - z^0||^2 <= target; -1 when never reached.
long iterations_to_normalized_fpr(const IterationTrace& trace, double target);

struct StepSizeRun {
    double gamma = 0.0;
    long iterations = -1;
    double final_normalized_fpr = 0.0;
};

struct StepSizeComparison {
    BetaEstimate betas;
    StepSizeRun with_beta;    // gamma = factor * beta
    StepSizeRun with_beta_v;  // gamma = factor * beta_v
};

/// Runs FDRS on the QP twice from z0 = 0 with lambda = 1.
StepSizeComparison compare_step_sizes(const QpSpec& qp, double factor = 1.99, double target = 1e-6,
                                      long max_iter = 100000, std::uint64_t seed = 42);

}  // namespace fdrs::app
