#pragma once

#include "fdrs/types.hpp"

#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace fdrs {

/// A closed linear subspace V of R^d together with its exact orthogonal
/// projector.  Instances are immutable; copies share the underlying factors.
class Subspace {
public:
    enum class Kind { Whole, NullSpace, Span, CoordinateSpan, DiagonalOfProduct, BlockRotation };

    /// V = R^d.
    static Subspace whole(Index dim);

    /// V = {x : A x = 0}.  Rows of A may be redundant; singular values below
    /// 1e-12 * sigma_max are treated as zero.
    static Subspace null_space(const Matrix& A);

    /// V = range(B) for a column-orthonormal B (B^T B = I within 1e-12).
    static Subspace span(const Matrix& B);

    /// V = range(M) for arbitrary columns; orthonormalized internally.
    static Subspace span_of(const Matrix& M);

    /// V = span{e_i : keep[i]}.
    static Subspace coordinate_span(const std::vector<bool>& keep);

    /// Diagonal {(x, ..., x)} of the n-fold product of R^{d0}.
    static Subspace diagonal_of_product(Index copies, Index base_dim);

    /// U = (+)_i span{e_{theta_i}} in (R^2)^N from angles theta_i in (0, pi/2].
    static Subspace block_rotation_angles(std::span<const double> angles);

    /// Same subspace from cosines c_i = cos(theta_i) in [0, 1), stored as given.
    static Subspace block_rotation_cosines(std::span<const double> cosines);

    /// V = (+)_i span{e_0} in (R^2)^N, i.e. the even coordinates.
    static Subspace block_axis(Index blocks);

    Index dim() const noexcept { return dim_; }
    Kind kind() const noexcept;
    std::string_view kind_name() const noexcept;

    /// Orthogonal projection onto V.
    Vector project(const Vector& x) const;
    /// x - P_V x, the projection onto V^perp.
    Vector project_complement(const Vector& x) const;
    /// 2 P_V x - x.
    Vector reflect(const Vector& x) const;

    /// Dimension of V (rank of P_V).
    Index rank() const;

    /// Dense d x d projector.  Intended for small problems and tests.
    Matrix dense_projector() const;

    /// Cosines of a BlockRotation subspace; empty for other kinds.
    const std::vector<double>& cosines() const;

private:
    struct WholeRep {};
    struct BasisRep {
        Kind kind;
        Matrix basis;       // orthonormal columns
        bool spans_subspace;  // true: P = B B^T, false: P = I - B B^T
        Index rank;
    };
    struct MaskRep {
        Eigen::ArrayXd mask;
        Index rank;
    };
    struct DiagonalRep {
        Index copies;
        Index base_dim;
    };
    struct RotationRep {
        std::vector<double> cosines;
        std::vector<double> sines;
    };
    using Rep = std::variant<WholeRep, BasisRep, MaskRep, DiagonalRep, RotationRep>;

    Subspace(Index dim, Rep rep);

    Index dim_ = 0;
    std::shared_ptr<const Rep> rep_;
};

/// 2x2 projector onto span{(cos t, sin t)}.
Eigen::Matrix2d rotation_projector_block(double theta);

}  // namespace fdrs
