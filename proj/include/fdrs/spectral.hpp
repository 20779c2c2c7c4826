#pragma once

#include "fdrs/subspace.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace fdrs {

struct SpectralEstimate {
    double value = 0.0;
    long iterations = 0;
    double residual = 0.0;  // ||M v - value v|| / value
};

using LinearMap = std::function<Vector(const Vector&)>;

/// Dominant eigenvalue of a symmetric PSD map by power iteration from a
/// seeded Gaussian start.  Returns value 0 for the zero map and throws
/// NumericalError when the residual does not reach tol in max_iter steps.
SpectralEstimate power_method(const LinearMap& apply, Index dim, double tol = 1e-10, long max_iter = 100000,
                              std::uint64_t seed = 42);

struct BetaEstimate {
    double beta = 0.0;    // 1 / lambda_max(Q)
    double beta_v = 0.0;  // 1 / lambda_max(P_V Q P_V); +inf when Q vanishes on V
    SpectralEstimate full;
    SpectralEstimate restricted;
    std::string advisory;
};

BetaEstimate estimate_betas(const Matrix& Q, const Subspace& V, double tol = 1e-10, std::uint64_t seed = 42);

}  // namespace fdrs
