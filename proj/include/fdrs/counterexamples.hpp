#pragma once

#include "fdrs/operators.hpp"

#include <functional>
#include <vector>

namespace fdrs {

/// (1/(a+1)) [[0, -s c], [0, c^2 + a]] with s = sqrt(1 - c^2): one block of
/// the FDRS operator for U = span e_theta, V = span e_0, gamma = 1.
Eigen::Matrix2d fdrs_block_matrix(double c, double a);

/// Eigenvector (-c s / (a + c^2), 1) of the block for eigenvalue
/// (a + c^2)/(a + 1).  For c = a = 0 the block vanishes and (0, 1) is used.
Eigen::Vector2d block_eigenvector(double c, double a);
double block_eigenvalue(double c, double a);

/// f = chi_U + (a/2)||.||^2, g = (1/2)||.||^2, V = (+) span e_0 and
/// U = (+) span e_{theta_i} on (R^2)^N, run with gamma = 1 and lambda = 1.
struct RotationInstance {
    std::vector<double> cosines;
    double a = 0.0;

    Index blocks() const noexcept { return static_cast<Index>(cosines.size()); }
    /// The assembled problem over R^{2N}; beta_v = 1.
    SplitProblem problem() const;
};

struct SlowSchedule {
    std::vector<double> b;   // b_j for j = 0 .. n_{k_max}, nondecreasing in (eta, 1)
    std::vector<long> n;     // n_k for k = 0 .. k_max, nondecreasing
    double eta = 0.0;
    double a = 0.0;
    std::function<double(double)> F;

    /// c_j = sqrt(b_j (1 + a) - a).
    std::vector<double> cosines() const;
    /// min over k of b_{n_k}^{k+1}/(n_k + 1) - e^{-1} F(k+1); positive when the schedule is valid.
    double margin() const;
};

/// Builds (b_j) and (n_k) with b_{n_k}^{k+1}/(n_k+1) > e^{-1} F(k+1) for
/// k <= k_max.  n_k is the largest block index with (n_k + 1) e^{-1} F(k+1) <= 1/2
/// (never decreasing), and each b_n is the smallest admissible value above
/// the running maximum, eta + eps0 and the requirement of every k mapped to n.
SlowSchedule build_slow_schedule(std::function<double(double)> F, long k_max, double eta, double a,
                                 double eps0 = 1e-3);

struct CounterexampleStart {
    RotationInstance instance;
    Vector z0;
};

/// Blocks z_i^0 = z_i / (||z_i|| (i+1)) over N = n_{k_max} + 1 blocks.
CounterexampleStart arbitrarily_slow_instance(const SlowSchedule& schedule);

/// c_i = sqrt(i/(i+1)) and z^0 = sqrt(2 alpha kappa_a) e^{1/(a+1)} (z_i / (||z_i|| (i+1)^alpha)),
/// kappa_a = 1/2 + 2 (a+1)^2.
CounterexampleStart sublinear_instance(double alpha, double a, Index blocks);

/// ((k+1)/(N+1))^{2 alpha}: relative loss of the lower bounds from truncating at N blocks.
double truncation_deficit(long k, Index blocks, double alpha);

/// Squared norms of z^k, x_h^k = P_V z^k and x_f^k = (T - P_{V^perp}) z^k for
/// k = 0 .. iterations, applying T block by block.
struct BlockRun {
    std::vector<double> z_sq;
    std::vector<double> xh_sq;
    std::vector<double> xf_sq;
};
BlockRun run_blocks(const RotationInstance& inst, const Vector& z0, long iterations);

/// Neumaier-compensated sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace fdrs
