#pragma once

#include "fdrs/functions.hpp"
#include "fdrs/subspace.hpp"

#include <optional>

namespace fdrs {

/// minimize f(x) + g(x) over x in V, with h = g o P_V.
///
/// beta is 1/Lip(grad g) and beta_v is 1/Lip(grad h) = 1/Lip(P_V grad g P_V).
/// Either may be +inf when the corresponding gradient is constant.
struct SplitProblem {
    FunctionDescriptor f;
    FunctionDescriptor g;
    Subspace V;
    double beta;
    double beta_v;
    double mu_f;
    double mu_g;
    double beta_f;

    Index dim() const noexcept { return V.dim(); }

    /// grad h(x) = P_V grad g(P_V x).
    Vector grad_h(const Vector& x) const;
    /// h(x) = g(P_V x).
    double eval_h(const Vector& x) const;
};

/// Builds a problem from its parts.  When beta_v is not supplied the
/// always-valid fallback beta_v = beta is used.
SplitProblem make_problem(FunctionDescriptor f, FunctionDescriptor g, Subspace V,
                          std::optional<double> beta_v = std::nullopt);

/// Everything one application of the FDRS operator produces.
struct FdrsStep {
    Vector z_next;       // T z
    Vector x_h;          // P_V z
    Vector x_f;          // prox_{gamma f}(refl_V(z - gamma grad_h(z)))
    Vector subgrad_chi;  // (1/gamma) P_{V^perp} z
    Vector grad_h;       // grad h(x_h)
    Vector subgrad_f;    // subgradient of f at x_f selected by the prox
};

/// Averagedness parameter of T1 o T2 for alpha1- and alpha2-averaged maps.
double averaged_composition_coefficient(double alpha1, double alpha2);

/// 2 beta_v / (4 beta_v - gamma) for 0 < gamma < 2 beta_v; 1/2 when beta_v is infinite.
double alpha_fdrs(double gamma, double beta_v);

/// One application of T = (I/2 + refl_{gamma f} refl_V / 2) o (I - gamma grad h).
FdrsStep apply_fdrs(const SplitProblem& p, const Vector& z, double gamma);

/// (1 - lambda) z + lambda Tz.
Vector relax(const Vector& z, const Vector& Tz, double lambda);

/// z* = x* + gamma * subgrad_chi* for an optimal triple; verifies
/// ||T z* - z*|| <= 1e-10 (1 + ||z*||) and throws NumericalError otherwise.
Vector fixed_point_from_minimizer(const SplitProblem& p, const Vector& x_star, const Vector& subgrad_chi_star,
                                  double gamma);

}  // namespace fdrs
