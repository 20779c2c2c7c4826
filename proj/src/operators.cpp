#include "fdrs/operators.hpp"

#include <cmath>
#include <string>

namespace fdrs {

Vector SplitProblem::grad_h(const Vector& x) const {
    return V.project(g.grad(V.project(x)));
}

double SplitProblem::eval_h(const Vector& x) const {
    return g.eval(V.project(x));
}

SplitProblem make_problem(FunctionDescriptor f, FunctionDescriptor g, Subspace V, std::optional<double> beta_v) {
    require_dim(f.dim(), V.dim(), "make_problem: f");
    require_dim(g.dim(), V.dim(), "make_problem: g");
    if (!g.is_smooth()) throw ParameterError("make_problem: g must be differentiable");
    // A smooth g reporting beta = 0 has a constant gradient.
    const double beta = g.beta() > 0.0 ? g.beta() : kInf;
    double bv = beta_v.value_or(beta);
    if (!(bv > 0.0)) throw ParameterError("make_problem: beta_v must be positive");
    if (bv < beta * (1.0 - 1e-9)) {
        throw ParameterError("make_problem: beta_v must be at least beta");
    }
    const double mu_f = f.mu();
    const double mu_g = g.mu();
    const double beta_f = f.is_smooth() ? (f.beta() > 0.0 ? f.beta() : kInf) : 0.0;
    return SplitProblem{std::move(f), std::move(g), std::move(V), beta, bv, mu_f, mu_g, beta_f};
}

double averaged_composition_coefficient(double alpha1, double alpha2) {
    if (!(alpha1 > 0.0 && alpha1 < 1.0 && alpha2 > 0.0 && alpha2 < 1.0)) {
        throw ParameterError("averaged_composition_coefficient: inputs must lie in (0, 1)");
    }
    return (alpha1 + alpha2 - 2.0 * alpha1 * alpha2) / (1.0 - alpha1 * alpha2);
}

double alpha_fdrs(double gamma, double beta_v) {
    if (!(gamma > 0.0) || !(gamma < 2.0 * beta_v)) {
        throw ParameterError("alpha_fdrs: gamma must lie in (0, 2 beta_v); gamma = " + std::to_string(gamma) +
                             ", beta_v = " + std::to_string(beta_v));
    }
    if (std::isinf(beta_v)) return 0.5;
    return 2.0 * beta_v / (4.0 * beta_v - gamma);
}

FdrsStep apply_fdrs(const SplitProblem& p, const Vector& z, double gamma) {
    require_dim(z.size(), p.dim(), "apply_fdrs");
    if (!(gamma > 0.0)) throw ParameterError("apply_fdrs: gamma must be positive");
    FdrsStep s;
    s.x_h = p.V.project(z);
    const Vector perp = z - s.x_h;
    s.subgrad_chi = perp / gamma;
    // grad h(z) = grad h(x_h), already in V.
    s.grad_h = p.V.project(p.g.grad(s.x_h));
    // refl_V(z - gamma grad_h) = x_h - gamma grad_h - P_{V^perp} z
    const Vector reflected = s.x_h - gamma * s.grad_h - perp;
    s.x_f = p.f.prox(reflected, gamma);
    s.subgrad_f = (reflected - s.x_f) / gamma;
    s.z_next = s.x_f + perp;
    return s;
}

Vector relax(const Vector& z, const Vector& Tz, double lambda) {
    require_dim(Tz.size(), z.size(), "relax");
    return (1.0 - lambda) * z + lambda * Tz;
}

Vector fixed_point_from_minimizer(const SplitProblem& p, const Vector& x_star, const Vector& subgrad_chi_star,
                                  double gamma) {
    require_dim(x_star.size(), p.dim(), "fixed_point_from_minimizer: x_star");
    require_dim(subgrad_chi_star.size(), p.dim(), "fixed_point_from_minimizer: subgrad_chi_star");
    Vector z = x_star + gamma * subgrad_chi_star;
    const FdrsStep s = apply_fdrs(p, z, gamma);
    const double residual = (s.z_next - z).norm();
    if (residual > 1e-10 * (1.0 + z.norm())) {
        throw NumericalError("fixed_point_from_minimizer: triple is not optimal, ||Tz - z|| = " +
                             std::to_string(residual));
    }
    return z;
}

}  // namespace fdrs
