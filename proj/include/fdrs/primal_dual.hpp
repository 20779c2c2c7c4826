#pragma once

#include "fdrs/solver.hpp"

#include <string>
#include <vector>

namespace fdrs {

struct PdState {
    Vector y;    // dual variable, kept in V^perp
    Vector x_f;  // primal variable
};

/// Iterates y+ = P_{V^perp}(y - x_f / gamma),
///          x_f+ = prox_{gamma f}(x_f - gamma grad h(x_f) + gamma (2 y+ - y)).
/// Returns iters + 1 states, the first being (y0, xf0).
std::vector<PdState> run_pd(const SplitProblem& p, double gamma, long iters, const Vector& y0, const Vector& xf0);

/// The state matching an FDRS run from z0 with lambda = 1:
/// y^0 = -(1/gamma) P_{V^perp} z0 and x_f^0 from the first FDRS step.
PdState initial_state_from_fdrs(const SplitProblem& p, const Vector& z0, double gamma);

struct EquivalenceReport {
    double max_primal_deviation = 0.0;  // max_k ||x_f^FDRS - x_f^PD||
    double max_dual_deviation = 0.0;    // max_k ||y^PD + subgrad_chi^FDRS||
    double max_primal_norm = 0.0;       // max_k ||x_f^FDRS||
    long compared = 0;
    std::string mapping;
};

EquivalenceReport equivalence_check(const IterationTrace& fdrs, const std::vector<PdState>& pd, double gamma);

}  // namespace fdrs
