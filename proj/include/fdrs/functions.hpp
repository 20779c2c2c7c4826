#pragma once

#include "fdrs/subspace.hpp"
#include "fdrs/types.hpp"

#include <memory>
#include <string_view>
#include <variant>

namespace fdrs {

/// Convex function descriptors with exact proximal maps.
namespace fn {

struct Zero {
    Index dim;
};

/// (1/2) <Qx, x> + <c, x> + offset, Q symmetric PSD.
struct Quadratic {
    Matrix Q;
    Vector c;
    double offset = 0.0;
};

/// Indicator of the box [l, u]; entries may be +-infinity.
struct BoxIndicator {
    Vector lower;
    Vector upper;
};

/// chi_U(x) + (a/2) ||x||^2.
struct SubspacePlusScaledSqNorm {
    Subspace U;
    double a;
};

/// (a/2) ||x - u||^2 with a > 0.
struct ShiftedScaledSqNorm {
    double a;
    Vector u;
};

}  // namespace fn

class FunctionDescriptor {
public:
    using Variant =
        std::variant<fn::Zero, fn::Quadratic, fn::BoxIndicator, fn::SubspacePlusScaledSqNorm, fn::ShiftedScaledSqNorm>;

    /// Validates the variant's invariants and derives mu and beta.
    explicit FunctionDescriptor(Variant v);

    static FunctionDescriptor zero(Index dim) { return FunctionDescriptor(fn::Zero{dim}); }
    static FunctionDescriptor quadratic(Matrix Q, Vector c, double offset = 0.0) {
        return FunctionDescriptor(fn::Quadratic{std::move(Q), std::move(c), offset});
    }
    static FunctionDescriptor box(Vector lower, Vector upper) {
        return FunctionDescriptor(fn::BoxIndicator{std::move(lower), std::move(upper)});
    }
    static FunctionDescriptor subspace_plus_sq_norm(Subspace U, double a) {
        return FunctionDescriptor(fn::SubspacePlusScaledSqNorm{std::move(U), a});
    }
    static FunctionDescriptor shifted_sq_norm(double a, Vector u) {
        return FunctionDescriptor(fn::ShiftedScaledSqNorm{a, std::move(u)});
    }

    const Variant& variant() const noexcept { return v_; }
    std::string_view kind_name() const noexcept;
    Index dim() const noexcept { return dim_; }

    /// Strong-convexity modulus.
    double mu() const noexcept { return mu_; }
    /// Reciprocal Lipschitz constant of the gradient; 0 when not Lipschitz
    /// differentiable.
    double beta() const noexcept { return beta_; }
    /// True for variants with a gradient (Zero, Quadratic, ShiftedScaledSqNorm).
    bool is_smooth() const noexcept;

    /// Extended-real value.  Indicator violations below 1e-9 (1 + ||x||)
    /// are ignored; larger ones give +inf.
    double eval(const Vector& x) const;

    /// argmin_y f(y) + (1/(2 gamma)) ||y - x||^2.
    Vector prox(const Vector& x, double gamma) const;

    /// 2 prox(x) - x.
    Vector refl(const Vector& x, double gamma) const;

    /// Exact gradient; throws ParameterError on nonsmooth variants.
    Vector grad(const Vector& x) const;

private:
    struct FactorCache;

    Variant v_;
    Index dim_ = 0;
    double mu_ = 0.0;
    double beta_ = 0.0;
    std::shared_ptr<FactorCache> cache_;
};

/// Domain-membership tolerance used by eval.
double domain_tolerance(const Vector& x);

/// The descriptor of x -> f(x + shift).  Not defined for
/// SubspacePlusScaledSqNorm unless the shift is zero.
FunctionDescriptor shifted(const FunctionDescriptor& f, const Vector& shift);

}  // namespace fdrs
