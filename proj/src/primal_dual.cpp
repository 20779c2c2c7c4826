#include "fdrs/primal_dual.hpp"

#include <algorithm>
#include <cmath>

namespace fdrs {

std::vector<PdState> run_pd(const SplitProblem& p, double gamma, long iters, const Vector& y0, const Vector& xf0) {
    require_dim(y0.size(), p.dim(), "run_pd: y0");
    require_dim(xf0.size(), p.dim(), "run_pd: xf0");
    if (!(gamma > 0.0)) throw ParameterError("run_pd: gamma must be positive");
    if (iters < 0) throw ParameterError("run_pd: iters must be nonnegative");
    std::vector<PdState> out;
    out.reserve(static_cast<std::size_t>(iters + 1));
    out.push_back(PdState{y0, xf0});
    for (long k = 0; k < iters; ++k) {
        const PdState& s = out.back();
        Vector y = p.V.project_complement(s.y - s.x_f / gamma);
        Vector arg = s.x_f - gamma * p.grad_h(s.x_f) + gamma * (2.0 * y - s.y);
        Vector xf = p.f.prox(arg, gamma);
        out.push_back(PdState{std::move(y), std::move(xf)});
    }
    return out;
}

PdState initial_state_from_fdrs(const SplitProblem& p, const Vector& z0, double gamma) {
    FdrsStep s = apply_fdrs(p, z0, gamma);
    return PdState{-s.subgrad_chi, std::move(s.x_f)};
}

EquivalenceReport equivalence_check(const IterationTrace& fdrs, const std::vector<PdState>& pd, double gamma) {
    EquivalenceReport rep;
    rep.mapping = "y^k = -(1/gamma) P_{V^perp} z^k and x_f^k from FDRS step k, gamma = " + std::to_string(gamma);
    for (const auto& r : fdrs.records) {
        if (r.k < 0 || r.k >= static_cast<long>(pd.size())) continue;
        const PdState& s = pd[static_cast<std::size_t>(r.k)];
        require_dim(s.x_f.size(), r.x_f.size(), "equivalence_check");
        rep.max_primal_deviation = std::max(rep.max_primal_deviation, (r.x_f - s.x_f).norm());
        rep.max_dual_deviation = std::max(rep.max_dual_deviation, (s.y + r.subgrad_chi).norm());
        rep.max_primal_norm = std::max(rep.max_primal_norm, r.x_f.norm());
        ++rep.compared;
    }
    return rep;
}

}  // namespace fdrs
