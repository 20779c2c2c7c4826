#include "fdrs/subspace.hpp"

#include <cmath>
#include <numbers>

namespace fdrs {

namespace {

constexpr double kRankTol = 1e-12;
constexpr double kOrthoTol = 1e-12;

// Orthonormal basis of the column space of M, rank decided relative to the
// largest singular value.  Returns the basis and the full right/left factor.
Matrix column_space_basis(const Matrix& M) {
    if (M.cols() == 0 || M.rows() == 0) return Matrix(M.rows(), 0);
    Eigen::BDCSVD<Matrix> svd(M, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    const double smax = s.size() > 0 ? s(0) : 0.0;
    Index r = 0;
    while (r < s.size() && smax > 0.0 && s(r) > kRankTol * smax) ++r;
    return svd.matrixU().leftCols(r);
}

// Orthonormal basis of the orthogonal complement of range(W) for an
// orthonormal W with d rows.
Matrix complement_basis(const Matrix& W) {
    const Index d = W.rows();
    const Index r = W.cols();
    if (r == 0) return Matrix::Identity(d, d);
    Eigen::HouseholderQR<Matrix> qr(W);
    Matrix Q = qr.householderQ() * Matrix::Identity(d, d);
    return Q.rightCols(d - r);
}

}  // namespace

Subspace::Subspace(Index dim, Rep rep) : dim_(dim), rep_(std::make_shared<const Rep>(std::move(rep))) {}

Subspace Subspace::whole(Index dim) {
    if (dim <= 0) throw DimensionError("Subspace::whole: dimension must be positive");
    return Subspace(dim, WholeRep{});
}

Subspace Subspace::null_space(const Matrix& A) {
    const Index d = A.cols();
    if (d <= 0) throw DimensionError("Subspace::null_space: A has no columns");
    Matrix rows = column_space_basis(A.transpose());  // orthonormal basis of range(A^T) = V^perp
    const Index r = rows.cols();
    if (r == 0) return Subspace(d, WholeRep{});
    // Apply through whichever orthonormal factor is thinner.
    if (2 * r <= d) {
        return Subspace(d, BasisRep{Kind::NullSpace, std::move(rows), false, d - r});
    }
    Matrix null_basis = complement_basis(rows);
    return Subspace(d, BasisRep{Kind::NullSpace, std::move(null_basis), true, d - r});
}

Subspace Subspace::span(const Matrix& B) {
    const Index d = B.rows();
    if (d <= 0) throw DimensionError("Subspace::span: B has no rows");
    const Index r = B.cols();
    const Matrix gram = B.transpose() * B;
    if ((gram - Matrix::Identity(r, r)).cwiseAbs().maxCoeff() > kOrthoTol * std::max<Index>(1, r)) {
        throw ParameterError("Subspace::span: columns are not orthonormal (use span_of)");
    }
    if (2 * r <= d) return Subspace(d, BasisRep{Kind::Span, B, true, r});
    return Subspace(d, BasisRep{Kind::Span, complement_basis(B), false, r});
}

Subspace Subspace::span_of(const Matrix& M) {
    if (M.rows() <= 0) throw DimensionError("Subspace::span_of: M has no rows");
    Matrix B = column_space_basis(M);
    const Index d = M.rows();
    const Index r = B.cols();
    if (2 * r <= d) return Subspace(d, BasisRep{Kind::Span, std::move(B), true, r});
    return Subspace(d, BasisRep{Kind::Span, complement_basis(B), false, r});
}

Subspace Subspace::coordinate_span(const std::vector<bool>& keep) {
    const Index d = static_cast<Index>(keep.size());
    if (d == 0) throw DimensionError("Subspace::coordinate_span: empty mask");
    Eigen::ArrayXd mask(d);
    Index r = 0;
    for (Index i = 0; i < d; ++i) {
        mask(i) = keep[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
        r += keep[static_cast<std::size_t>(i)] ? 1 : 0;
    }
    return Subspace(d, MaskRep{std::move(mask), r});
}

Subspace Subspace::diagonal_of_product(Index copies, Index base_dim) {
    if (copies <= 0 || base_dim <= 0) {
        throw DimensionError("Subspace::diagonal_of_product: copies and base dimension must be positive");
    }
    return Subspace(copies * base_dim, DiagonalRep{copies, base_dim});
}

Subspace Subspace::block_rotation_angles(std::span<const double> angles) {
    std::vector<double> c;
    c.reserve(angles.size());
    for (double t : angles) {
        if (!(t > 0.0 && t <= std::numbers::pi / 2)) {
            throw ParameterError("Subspace::block_rotation_angles: angle outside (0, pi/2]");
        }
        c.push_back(std::cos(t));
    }
    return block_rotation_cosines(c);
}

Subspace Subspace::block_rotation_cosines(std::span<const double> cosines) {
    if (cosines.empty()) throw DimensionError("Subspace::block_rotation_cosines: no blocks");
    RotationRep rep;
    rep.cosines.assign(cosines.begin(), cosines.end());
    rep.sines.reserve(cosines.size());
    for (double c : cosines) {
        if (!(c >= 0.0 && c < 1.0)) {
            throw ParameterError("Subspace::block_rotation_cosines: cosine outside [0, 1)");
        }
        rep.sines.push_back(std::sqrt((1.0 - c) * (1.0 + c)));
    }
    const Index d = 2 * static_cast<Index>(cosines.size());
    return Subspace(d, std::move(rep));
}

Subspace Subspace::block_axis(Index blocks) {
    if (blocks <= 0) throw DimensionError("Subspace::block_axis: no blocks");
    std::vector<bool> keep(static_cast<std::size_t>(2 * blocks), false);
    for (Index i = 0; i < blocks; ++i) keep[static_cast<std::size_t>(2 * i)] = true;
    return coordinate_span(keep);
}

Subspace::Kind Subspace::kind() const noexcept {
    return std::visit(
        [](const auto& r) -> Kind {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, WholeRep>) return Kind::Whole;
            else if constexpr (std::is_same_v<T, BasisRep>) return r.kind;
            else if constexpr (std::is_same_v<T, MaskRep>) return Kind::CoordinateSpan;
            else if constexpr (std::is_same_v<T, DiagonalRep>) return Kind::DiagonalOfProduct;
            else return Kind::BlockRotation;
        },
        *rep_);
}

std::string_view Subspace::kind_name() const noexcept {
    switch (kind()) {
        case Kind::Whole: return "whole";
        case Kind::NullSpace: return "null_space";
        case Kind::Span: return "span";
        case Kind::CoordinateSpan: return "coordinate_span";
        case Kind::DiagonalOfProduct: return "diagonal_of_product";
        case Kind::BlockRotation: return "block_rotation";
    }
    return "unknown";
}

Vector Subspace::project(const Vector& x) const {
    require_dim(x.size(), dim_, "Subspace::project");
    return std::visit(
        [&](const auto& r) -> Vector {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, WholeRep>) {
                return x;
            } else if constexpr (std::is_same_v<T, BasisRep>) {
                Vector coeffs = r.basis.transpose() * x;
                if (r.spans_subspace) return r.basis * coeffs;
                return x - r.basis * coeffs;
            } else if constexpr (std::is_same_v<T, MaskRep>) {
                return (x.array() * r.mask).matrix();
            } else if constexpr (std::is_same_v<T, DiagonalRep>) {
                Vector mean = Vector::Zero(r.base_dim);
                for (Index i = 0; i < r.copies; ++i) mean += x.segment(i * r.base_dim, r.base_dim);
                mean /= static_cast<double>(r.copies);
                Vector out(dim_);
                for (Index i = 0; i < r.copies; ++i) out.segment(i * r.base_dim, r.base_dim) = mean;
                return out;
            } else {
                Vector out(dim_);
                for (std::size_t i = 0; i < r.cosines.size(); ++i) {
                    const double c = r.cosines[i];
                    const double s = r.sines[i];
                    const Index k = 2 * static_cast<Index>(i);
                    const double t = c * x(k) + s * x(k + 1);
                    out(k) = c * t;
                    out(k + 1) = s * t;
                }
                return out;
            }
        },
        *rep_);
}

Vector Subspace::project_complement(const Vector& x) const {
    return x - project(x);
}

Vector Subspace::reflect(const Vector& x) const {
    return 2.0 * project(x) - x;
}

Index Subspace::rank() const {
    return std::visit(
        [&](const auto& r) -> Index {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, WholeRep>) return dim_;
            else if constexpr (std::is_same_v<T, BasisRep>) return r.rank;
            else if constexpr (std::is_same_v<T, MaskRep>) return r.rank;
            else if constexpr (std::is_same_v<T, DiagonalRep>) return r.base_dim;
            else return static_cast<Index>(r.cosines.size());
        },
        *rep_);
}

Matrix Subspace::dense_projector() const {
    Matrix P(dim_, dim_);
    Vector e = Vector::Zero(dim_);
    for (Index j = 0; j < dim_; ++j) {
        e(j) = 1.0;
        P.col(j) = project(e);
        e(j) = 0.0;
    }
    return P;
}

const std::vector<double>& Subspace::cosines() const {
    static const std::vector<double> empty;
    if (const auto* r = std::get_if<RotationRep>(rep_.get())) return r->cosines;
    return empty;
}

Eigen::Matrix2d rotation_projector_block(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::Matrix2d P;
    P << c * c, s * c, s * c, s * s;
    return P;
}

}  // namespace fdrs
