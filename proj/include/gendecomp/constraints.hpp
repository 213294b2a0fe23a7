#ifndef GENDECOMP_CONSTRAINTS_HPP
#define GENDECOMP_CONSTRAINTS_HPP

#include <memory>
#include <string>
#include <variant>

#include "gendecomp/kernel.hpp"

namespace gendecomp {

enum class Side { Left, Right };

//
// A positive semi-definite metric on the rows or columns of a data matrix,
// kept in the cheapest lossless form: Identity (nothing stored), Diagonal
// (the weight vector) or Dense. Dense constraints carry their square root and
// pseudo-inverse square root, computed once when the constraint is built.
//
class Constraint {
public:
    enum class Form { Identity, Diagonal, Dense };

    static Constraint identity(Index dim)
    {
        if (dim <= 0) {
            throw Error(ErrorKind::InvalidInput, "constraint dimension must be positive");
        }
        Constraint c;
        c.dim_ = dim;
        c.form_ = Form::Identity;
        return c;
    }

    static Constraint diagonal(Vector weights)
    {
        if (weights.size() == 0) {
            throw Error(ErrorKind::InvalidInput, "constraint dimension must be positive");
        }
        require_finite(weights, "constraint weights");
        Constraint c;
        c.dim_ = weights.size();
        c.form_ = Form::Diagonal;
        c.weights_ = std::move(weights);
        c.check_weights();
        return c;
    }

    static Constraint dense(Matrix m)
    {
        if (m.rows() == 0 || m.rows() != m.cols()) {
            throw Error(ErrorKind::DimensionMismatch, "dense constraint must be a non-empty square matrix");
        }
        require_finite(m, "constraint matrix");
        Constraint c;
        c.dim_ = m.rows();
        c.form_ = Form::Dense;
        const auto eig = detail::checked_psd_eigen(m, "dense constraint");
        auto roots = std::make_shared<Roots>();
        roots->sqrt = detail::psd_spectral_map(eig, [](double l) { return std::sqrt(l); });
        roots->invsqrt = detail::psd_spectral_map(eig, [](double l) { return 1.0 / std::sqrt(l); });
        roots->min_eigenvalue = eig.values(eig.values.size() - 1);
        c.dense_ = std::make_shared<const Matrix>(std::move(m));
        c.roots_ = std::move(roots);
        return c;
    }

    Form form() const noexcept { return form_; }
    Index dim() const noexcept { return dim_; }
    bool is_identity() const noexcept { return form_ == Form::Identity; }

    /// Diagonal weights; only meaningful for Form::Diagonal.
    const Vector& weights() const { return weights_; }
    /// Dense matrix; only meaningful for Form::Dense.
    const Matrix& matrix() const { return *dense_; }
    const Matrix& sqrt_matrix() const { return roots_->sqrt; }
    const Matrix& invsqrt_matrix() const { return roots_->invsqrt; }
    double min_eigenvalue() const { return roots_->min_eigenvalue; }

    Matrix to_matrix() const
    {
        switch (form_) {
        case Form::Identity: return Matrix::Identity(dim_, dim_);
        case Form::Diagonal: return weights_.asDiagonal();
        case Form::Dense: return *dense_;
        }
        return {};
    }

    /// Pseudo-inverse of the metric as an explicit matrix.
    Matrix pseudo_inverse_matrix() const
    {
        switch (form_) {
        case Form::Identity: return Matrix::Identity(dim_, dim_);
        case Form::Diagonal: {
            Vector inv = weights_.unaryExpr([](double w) { return w > 0.0 ? 1.0 / w : 0.0; });
            return inv.asDiagonal();
        }
        case Form::Dense: return roots_->invsqrt * roots_->invsqrt;
        }
        return {};
    }

private:
    struct Roots {
        Matrix sqrt;
        Matrix invsqrt;
        double min_eigenvalue = 0.0;
    };

    Constraint() = default;

    void check_weights() const
    {
        for (Index i = 0; i < weights_.size(); ++i) {
            if (weights_(i) < 0.0) {
                throw Error(ErrorKind::NotPSD, "constraint weight " + std::to_string(i) + " is negative (" +
                                                   std::to_string(weights_(i)) + ")");
            }
        }
    }

    Index dim_ = 0;
    Form form_ = Form::Identity;
    Vector weights_;
    std::shared_ptr<const Matrix> dense_;
    std::shared_ptr<const Roots> roots_;
};

/// What callers may hand in as a constraint: nothing, a weight vector, a
/// matrix, or an already normalized Constraint.
using ConstraintInput = std::variant<std::monostate, Vector, Matrix, Constraint>;

inline Constraint normalize_constraint(const ConstraintInput& raw, Index dim)
{
    if (dim <= 0) {
        throw Error(ErrorKind::InvalidInput, "constraint dimension must be positive");
    }
    if (std::holds_alternative<std::monostate>(raw)) {
        return Constraint::identity(dim);
    }
    if (const auto* c = std::get_if<Constraint>(&raw)) {
        if (c->dim() != dim) {
            throw Error(ErrorKind::DimensionMismatch, "constraint has dimension " + std::to_string(c->dim()) +
                                                          ", expected " + std::to_string(dim));
        }
        return *c;
    }
    if (const auto* v = std::get_if<Vector>(&raw)) {
        if (v->size() != dim) {
            throw Error(ErrorKind::DimensionMismatch, "constraint vector has length " +
                                                          std::to_string(v->size()) + ", expected " +
                                                          std::to_string(dim));
        }
        if ((v->array() == 1.0).all()) {
            return Constraint::identity(dim);
        }
        return Constraint::diagonal(*v);
    }
    const auto& m = std::get<Matrix>(raw);
    if (m.rows() != dim || m.cols() != dim) {
        throw Error(ErrorKind::DimensionMismatch, "constraint matrix is " + std::to_string(m.rows()) + "x" +
                                                      std::to_string(m.cols()) + ", expected " +
                                                      std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (is_diagonal_matrix(m)) {
        Vector diag = m.diagonal();
        if ((diag.array() == 1.0).all()) {
            return Constraint::identity(dim);
        }
        return Constraint::diagonal(std::move(diag));
    }
    return Constraint::dense(m);
}

/// Re-checks positive semi-definiteness; constructors already enforce it, so
/// this only fails for constraints whose invariants were bypassed.
inline void validate_psd(const Constraint& c)
{
    switch (c.form()) {
    case Constraint::Form::Identity: return;
    case Constraint::Form::Diagonal:
        for (Index i = 0; i < c.weights().size(); ++i) {
            if (c.weights()(i) < 0.0) {
                throw Error(ErrorKind::NotPSD, "negative weight " + std::to_string(c.weights()(i)));
            }
        }
        return;
    case Constraint::Form::Dense: {
        const auto eig = symmetric_eigen(c.matrix());
        const double lmax = std::max(eig.values(0), 0.0);
        const double lmin = eig.values(eig.values.size() - 1);
        if (lmin < -kPsdNegativityFloor * lmax) {
            throw Error(ErrorKind::NotPSD, "minimum eigenvalue " + std::to_string(lmin));
        }
        return;
    }
    }
}

namespace detail {

inline void check_conformable(const Constraint& c, const Matrix& x, Side side)
{
    const Index need = side == Side::Left ? x.rows() : x.cols();
    if (c.dim() != need) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(side == Side::Left ? "left" : "right") + " constraint has dimension " +
                        std::to_string(c.dim()) + " but the matrix has " + std::to_string(need) +
                        (side == Side::Left ? " rows" : " columns"));
    }
}

inline Matrix scale_by(const Vector& s, const Matrix& x, Side side)
{
    if (side == Side::Left) {
        return s.asDiagonal() * x;
    }
    return x * s.asDiagonal();
}

inline Matrix multiply_by(const Matrix& m, const Matrix& x, Side side)
{
    if (side == Side::Left) {
        return m * x;
    }
    return x * m;
}

} // namespace detail

/// c x (Left) or x c (Right).
inline Matrix apply_metric(const Constraint& c, const Matrix& x, Side side)
{
    detail::check_conformable(c, x, side);
    switch (c.form()) {
    case Constraint::Form::Identity: return x;
    case Constraint::Form::Diagonal: return detail::scale_by(c.weights(), x, side);
    case Constraint::Form::Dense: return detail::multiply_by(c.matrix(), x, side);
    }
    return x;
}

inline Matrix apply_sqrt_metric(const Constraint& c, const Matrix& x, Side side)
{
    detail::check_conformable(c, x, side);
    switch (c.form()) {
    case Constraint::Form::Identity: return x;
    case Constraint::Form::Diagonal:
        return detail::scale_by(c.weights().cwiseSqrt(), x, side);
    case Constraint::Form::Dense: return detail::multiply_by(c.sqrt_matrix(), x, side);
    }
    return x;
}

/// Pseudo-inverse square root; zero weights stay zero.
inline Matrix apply_invsqrt_metric(const Constraint& c, const Matrix& x, Side side)
{
    detail::check_conformable(c, x, side);
    switch (c.form()) {
    case Constraint::Form::Identity: return x;
    case Constraint::Form::Diagonal: {
        const Vector s =
            c.weights().unaryExpr([](double w) { return w > 0.0 ? 1.0 / std::sqrt(w) : 0.0; });
        return detail::scale_by(s, x, side);
    }
    case Constraint::Form::Dense: return detail::multiply_by(c.invsqrt_matrix(), x, side);
    }
    return x;
}

} // namespace gendecomp

#endif // GENDECOMP_CONSTRAINTS_HPP
