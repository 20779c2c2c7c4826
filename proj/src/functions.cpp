#include "fdrs/functions.hpp"

#include <cmath>
#include <mutex>
#include <optional>

namespace fdrs {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Cached LDL^T of I + gamma Q, refactored when gamma changes.
struct FunctionDescriptor::FactorCache {
    std::mutex mutex;
    double gamma = 0.0;
    std::optional<Eigen::LDLT<Matrix>> ldlt;
};

double domain_tolerance(const Vector& x) {
    return 1e-9 * (1.0 + x.norm());
}

FunctionDescriptor::FunctionDescriptor(Variant v) : v_(std::move(v)) {
    std::visit(
        Overloaded{
            [&](const fn::Zero& z) {
                if (z.dim <= 0) throw DimensionError("Zero: dimension must be positive");
                dim_ = z.dim;
                mu_ = 0.0;
                beta_ = kInf;
            },
            [&](const fn::Quadratic& q) {
                if (q.Q.rows() != q.Q.cols()) throw DimensionError("Quadratic: Q is not square");
                require_dim(q.c.size(), q.Q.rows(), "Quadratic: c");
                dim_ = q.Q.rows();
                const double scale = std::max(q.Q.cwiseAbs().maxCoeff(), 1e-300);
                if ((q.Q - q.Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
                    throw ParameterError("Quadratic: Q is not symmetric");
                }
                Eigen::SelfAdjointEigenSolver<Matrix> eig(q.Q, Eigen::EigenvaluesOnly);
                const double lmin = eig.eigenvalues().minCoeff();
                const double lmax = eig.eigenvalues().maxCoeff();
                const double spectral = std::max(std::abs(lmin), std::abs(lmax));
                if (lmin < -1e-10 * spectral) throw ParameterError("Quadratic: Q is not positive semidefinite");
                mu_ = std::max(lmin, 0.0);
                beta_ = lmax > 0.0 ? 1.0 / lmax : 0.0;
                cache_ = std::make_shared<FactorCache>();
            },
            [&](const fn::BoxIndicator& b) {
                require_dim(b.upper.size(), b.lower.size(), "BoxIndicator: upper");
                if (b.lower.size() == 0) throw DimensionError("BoxIndicator: empty box");
                if ((b.lower.array() > b.upper.array()).any()) {
                    throw ParameterError("BoxIndicator: lower bound exceeds upper bound");
                }
                if (b.lower.array().isNaN().any() || b.upper.array().isNaN().any()) {
                    throw ParameterError("BoxIndicator: NaN bound");
                }
                dim_ = b.lower.size();
            },
            [&](const fn::SubspacePlusScaledSqNorm& s) {
                if (!(s.a >= 0.0)) throw ParameterError("SubspacePlusScaledSqNorm: a must be nonnegative");
                dim_ = s.U.dim();
                mu_ = s.a;
            },
            [&](const fn::ShiftedScaledSqNorm& s) {
                if (!(s.a > 0.0)) throw ParameterError("ShiftedScaledSqNorm: a must be positive");
                if (s.u.size() == 0) throw DimensionError("ShiftedScaledSqNorm: empty center");
                dim_ = s.u.size();
                mu_ = s.a;
                beta_ = 1.0 / s.a;
            },
        },
        v_);
}

std::string_view FunctionDescriptor::kind_name() const noexcept {
    return std::visit(Overloaded{
                          [](const fn::Zero&) -> std::string_view { return "zero"; },
                          [](const fn::Quadratic&) -> std::string_view { return "quadratic"; },
                          [](const fn::BoxIndicator&) -> std::string_view { return "box_indicator"; },
                          [](const fn::SubspacePlusScaledSqNorm&) -> std::string_view {
                              return "subspace_plus_scaled_sq_norm";
                          },
                          [](const fn::ShiftedScaledSqNorm&) -> std::string_view {
                              return "shifted_scaled_sq_norm";
                          },
                      },
                      v_);
}

bool FunctionDescriptor::is_smooth() const noexcept {
    return std::holds_alternative<fn::Zero>(v_) || std::holds_alternative<fn::Quadratic>(v_) ||
           std::holds_alternative<fn::ShiftedScaledSqNorm>(v_);
}

double FunctionDescriptor::eval(const Vector& x) const {
    require_dim(x.size(), dim_, "FunctionDescriptor::eval");
    return std::visit(
        Overloaded{
            [&](const fn::Zero&) { return 0.0; },
            [&](const fn::Quadratic& q) { return 0.5 * x.dot(q.Q * x) + q.c.dot(x) + q.offset; },
            [&](const fn::BoxIndicator& b) {
                const double tol = domain_tolerance(x);
                const double below = (b.lower - x).cwiseMax(0.0).maxCoeff();
                const double above = (x - b.upper).cwiseMax(0.0).maxCoeff();
                return std::max(below, above) > tol ? kInf : 0.0;
            },
            [&](const fn::SubspacePlusScaledSqNorm& s) {
                if (s.U.project_complement(x).norm() > domain_tolerance(x)) return kInf;
                return 0.5 * s.a * x.squaredNorm();
            },
            [&](const fn::ShiftedScaledSqNorm& s) { return 0.5 * s.a * (x - s.u).squaredNorm(); },
        },
        v_);
}

Vector FunctionDescriptor::prox(const Vector& x, double gamma) const {
    require_dim(x.size(), dim_, "FunctionDescriptor::prox");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("prox: gamma must be positive and finite");
    return std::visit(
        Overloaded{
            [&](const fn::Zero&) -> Vector { return x; },
            [&](const fn::Quadratic& q) -> Vector {
                std::lock_guard lock(cache_->mutex);
                if (!cache_->ldlt || cache_->gamma != gamma) {
                    Matrix M = gamma * q.Q;
                    M.diagonal().array() += 1.0;
                    cache_->ldlt.emplace(M);
                    cache_->gamma = gamma;
                    if (cache_->ldlt->info() != Eigen::Success || !cache_->ldlt->isPositive()) {
                        cache_->ldlt.reset();
                        throw NumericalError("Quadratic prox: factorization of I + gamma Q failed");
                    }
                }
                return cache_->ldlt->solve(x - gamma * q.c);
            },
            [&](const fn::BoxIndicator& b) -> Vector { return x.cwiseMax(b.lower).cwiseMin(b.upper); },
            [&](const fn::SubspacePlusScaledSqNorm& s) -> Vector {
                return s.U.project(x) / (1.0 + gamma * s.a);
            },
            [&](const fn::ShiftedScaledSqNorm& s) -> Vector {
                return (x + gamma * s.a * s.u) / (1.0 + gamma * s.a);
            },
        },
        v_);
}

Vector FunctionDescriptor::refl(const Vector& x, double gamma) const {
    return 2.0 * prox(x, gamma) - x;
}

Vector FunctionDescriptor::grad(const Vector& x) const {
    require_dim(x.size(), dim_, "FunctionDescriptor::grad");
    return std::visit(Overloaded{
                          [&](const fn::Zero&) -> Vector { return Vector::Zero(dim_); },
                          [&](const fn::Quadratic& q) -> Vector { return q.Q * x + q.c; },
                          [&](const fn::ShiftedScaledSqNorm& s) -> Vector { return s.a * (x - s.u); },
                          [&](const auto&) -> Vector {
                              throw ParameterError(std::string("grad: ") + std::string(kind_name()) +
                                                   " is not differentiable");
                          },
                      },
                      v_);
}

FunctionDescriptor shifted(const FunctionDescriptor& f, const Vector& shift) {
    require_dim(shift.size(), f.dim(), "shifted");
    return std::visit(
        Overloaded{
            [&](const fn::Zero& z) { return FunctionDescriptor(z); },
            [&](const fn::Quadratic& q) {
                const Vector Qs = q.Q * shift;
                return FunctionDescriptor::quadratic(q.Q, q.c + Qs, q.offset + 0.5 * shift.dot(Qs) + q.c.dot(shift));
            },
            [&](const fn::BoxIndicator& b) { return FunctionDescriptor::box(b.lower - shift, b.upper - shift); },
            [&](const fn::SubspacePlusScaledSqNorm& s) {
                if (shift.norm() != 0.0) {
                    throw ParameterError("shifted: SubspacePlusScaledSqNorm cannot absorb a nonzero shift");
                }
                return FunctionDescriptor(s);
            },
            [&](const fn::ShiftedScaledSqNorm& s) { return FunctionDescriptor::shifted_sq_norm(s.a, s.u - shift); },
        },
        f.variant());
}

}  // namespace fdrs
