#include "fdrs/spectral.hpp"

#include <cmath>
#include <random>

namespace fdrs {

SpectralEstimate power_method(const LinearMap& apply, Index dim, double tol, long max_iter, std::uint64_t seed) {
    if (dim <= 0) throw DimensionError("power_method: dimension must be positive");
    if (!(tol > 0.0)) throw ParameterError("power_method: tol must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = normal(rng);
    v.normalize();

    SpectralEstimate est;
    for (long it = 1; it <= max_iter; ++it) {
        Vector w = apply(v);
        require_dim(w.size(), dim, "power_method: map output");
        const double wn = w.norm();
        if (wn == 0.0) {
            // The start is in the kernel; for a PSD map with a Gaussian start
            // this means the map is zero.
            est.value = 0.0;
            est.iterations = it;
            est.residual = 0.0;
            return est;
        }
        const double rq = v.dot(w);
        est.value = rq;
        est.iterations = it;
        est.residual = rq > 0.0 ? (w - rq * v).norm() / rq : kInf;
        if (est.residual <= tol) return est;
        v = w / wn;
    }
    throw NumericalError("power_method: residual " + std::to_string(est.residual) + " above tolerance after " +
                         std::to_string(max_iter) + " iterations");
}

BetaEstimate estimate_betas(const Matrix& Q, const Subspace& V, double tol, std::uint64_t seed) {
    if (Q.rows() != Q.cols()) throw DimensionError("estimate_betas: Q is not square");
    require_dim(Q.rows(), V.dim(), "estimate_betas: Q");
    BetaEstimate out;
    out.full = power_method([&](const Vector& x) -> Vector { return Q * x; }, Q.rows(), tol, 1000000, seed);
    out.restricted = power_method([&](const Vector& x) -> Vector { return V.project(Q * V.project(x)); }, Q.rows(),
                                  tol, 1000000, seed);
    // A relative threshold separates a genuinely zero restriction from roundoff.
    const double floor = 1e-14 * std::max(out.full.value, 1e-300);
    out.beta = out.full.value > 0.0 ? 1.0 / out.full.value : kInf;
    if (out.restricted.value <= floor) {
        out.beta_v = kInf;
        out.advisory = "Q vanishes on V: beta_v is unbounded and gamma must be capped by the caller";
    } else {
        out.beta_v = 1.0 / out.restricted.value;
    }
    if (out.beta_v < out.beta * (1.0 - tol)) {
        // lambda_max(P Q P) <= lambda_max(Q) always; a violation is estimation error.
        out.beta_v = out.beta;
    }
    return out;
}

}  // namespace fdrs
