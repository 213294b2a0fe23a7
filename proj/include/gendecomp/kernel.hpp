#ifndef GENDECOMP_KERNEL_HPP
#define GENDECOMP_KERNEL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gendecomp/detail/jacobi.hpp"
#include "gendecomp/error.hpp"

namespace gendecomp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative asymmetry allowed before a matrix stops counting as symmetric.
inline constexpr double kSymmetryTolerance = 1e-10;
/// Eigenvalues below -kPsdNegativityFloor * lambda_max mean "not PSD"; those
/// with magnitude under the same floor are treated as exact zeros.
inline constexpr double kPsdNegativityFloor = 1e-10;

/// Threshold below which eigen/singular values are discarded, or Disabled.
class TolerancePolicy {
public:
    static TolerancePolicy threshold(double t)
    {
        if (!(t >= 0.0) || !std::isfinite(t)) {
            throw Error(ErrorKind::InvalidInput,
                        "tolerance threshold must be a finite nonnegative number");
        }
        return TolerancePolicy(t);
    }
    static TolerancePolicy disabled() { return TolerancePolicy(); }

    /// sqrt(machine epsilon), the geigen default.
    static TolerancePolicy eigen_default()
    {
        return TolerancePolicy(std::sqrt(std::numeric_limits<double>::epsilon()));
    }
    /// machine epsilon, the gsvd/gplssvd default.
    static TolerancePolicy svd_default()
    {
        return TolerancePolicy(std::numeric_limits<double>::epsilon());
    }

    bool active() const noexcept { return value_.has_value(); }
    double value() const { return value_.value(); }

    friend bool operator==(const TolerancePolicy&, const TolerancePolicy&) = default;

private:
    TolerancePolicy() = default;
    explicit TolerancePolicy(double t) : value_(t) {}

    std::optional<double> value_;
};

struct EigenOutput {
    Vector values;  // descending
    Matrix vectors; // one column per value
};

struct SvdOutput {
    Matrix u;
    Vector d; // descending
    Matrix v;
};

inline bool all_finite(const Matrix& m)
{
    return m.allFinite();
}

inline void require_finite(const Matrix& m, const char* what)
{
    if (!all_finite(m)) {
        throw Error(ErrorKind::InvalidInput, std::string(what) + " contains NaN or Inf entries");
    }
}

inline bool is_symmetric(const Matrix& s, double rel_tol = kSymmetryTolerance)
{
    if (s.rows() != s.cols()) {
        return false;
    }
    const double scale = s.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        return true;
    }
    return (s - s.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

namespace detail {

/// Index of the entry that decides a vector's sign: the largest magnitude,
/// with near-ties (within a few ulps of relative spread) going to the lowest
/// row so that results don't hinge on rounding noise.
inline Index sign_pivot(const Eigen::Ref<const Vector>& col)
{
    Index best = 0;
    double best_abs = -1.0;
    for (Index i = 0; i < col.size(); ++i) {
        if (std::abs(col(i)) > best_abs) {
            best_abs = std::abs(col(i));
        }
    }
    const double cutoff = best_abs * (1.0 - 1e-9);
    for (Index i = 0; i < col.size(); ++i) {
        if (std::abs(col(i)) >= cutoff) {
            best = i;
            break;
        }
    }
    return best;
}

/// Flips columns of `decider` (and the matching columns of `follower`, when
/// given) so that each column's pivot entry is positive.
inline void canonicalize_signs(Matrix& decider, Matrix* follower = nullptr)
{
    for (Index j = 0; j < decider.cols(); ++j) {
        if (decider.rows() == 0) {
            return;
        }
        const Index pivot = sign_pivot(decider.col(j));
        if (decider(pivot, j) < 0.0) {
            decider.col(j) = -decider.col(j);
            if (follower != nullptr) {
                follower->col(j) = -follower->col(j);
            }
        }
    }
}

inline std::vector<Index> descending_order(const Vector& values)
{
    std::vector<Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return values(a) > values(b); });
    return order;
}

inline Matrix select_columns(const Matrix& m, const std::vector<Index>& cols)
{
    Matrix out(m.rows(), static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        out.col(static_cast<Index>(j)) = m.col(cols[j]);
    }
    return out;
}

inline Vector select_entries(const Vector& v, const std::vector<Index>& idx)
{
    Vector out(static_cast<Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) {
        out(static_cast<Index>(j)) = v(idx[j]);
    }
    return out;
}

inline EigenOutput sorted_symmetric_eigen(const Matrix& s)
{
    auto raw = cyclic_jacobi_eigen(s);
    const auto order = descending_order(raw.values);
    EigenOutput out{select_entries(raw.values, order), select_columns(raw.vectors, order)};
    canonicalize_signs(out.vectors);
    return out;
}

/// Spectral function of a PSD matrix: V f(lambda) V^T, after the negativity
/// check. Eigenvalues with magnitude below the relative floor count as zero.
template <typename F>
Matrix psd_spectral_map(const EigenOutput& eig, F&& f)
{
    const Index n = eig.values.size();
    const double lmax = n > 0 ? std::max(eig.values(0), 0.0) : 0.0;
    const double floor = kPsdNegativityFloor * lmax;
    Vector mapped(n);
    for (Index i = 0; i < n; ++i) {
        const double lambda = eig.values(i);
        mapped(i) = (lambda > floor) ? f(lambda) : 0.0;
    }
    return eig.vectors * mapped.asDiagonal() * eig.vectors.transpose();
}

inline EigenOutput checked_psd_eigen(const Matrix& w, const char* what)
{
    if (w.rows() != w.cols()) {
        throw Error(ErrorKind::NonSquare, std::string(what) + " must be square");
    }
    if (!is_symmetric(w)) {
        throw Error(ErrorKind::NotPSD, std::string(what) + " is not symmetric");
    }
    auto eig = sorted_symmetric_eigen(w);
    const Index n = eig.values.size();
    if (n > 0) {
        const double lmax = std::max(eig.values(0), 0.0);
        const double lmin = eig.values(n - 1);
        if (lmin < -kPsdNegativityFloor * lmax || (lmax == 0.0 && lmin < 0.0)) {
            throw Error(ErrorKind::NotPSD, std::string(what) +
                                               " has negative eigenvalue " + std::to_string(lmin));
        }
    }
    return eig;
}

} // namespace detail

/// Eigendecomposition of a symmetric matrix: values descending, each vector
/// flipped so its largest-magnitude entry is positive.
inline EigenOutput symmetric_eigen(const Matrix& s)
{
    if (s.rows() != s.cols()) {
        throw Error(ErrorKind::NonSquare, "symmetric_eigen needs a square matrix");
    }
    require_finite(s, "symmetric_eigen input");
    if (!is_symmetric(s)) {
        throw Error(ErrorKind::NotSymmetric, "symmetric_eigen input is not symmetric");
    }
    return detail::sorted_symmetric_eigen(s);
}

//
// Full eigendecomposition followed by the tolerance filter. With an active
// threshold t, values with |lambda| <= t are discarded as numerical zeros; a
// value below -t that survives that filter is a genuinely negative eigenvalue
// of a matrix assumed PSD and raises ComplexOrNegativeEigenvalue. Disabled
// returns every value, signed.
//
// `symmetric` mirrors the flag of base R's eigen(): true trusts the caller
// (only the lower triangle is read), false asks for the general path, which
// this library does not provide. When omitted the input is tested.
//
inline EigenOutput tolerance_eigen(const Matrix& s, const TolerancePolicy& tol,
                                   std::optional<bool> symmetric = std::nullopt)
{
    if (s.rows() != s.cols()) {
        throw Error(ErrorKind::NonSquare, "tolerance_eigen needs a square matrix");
    }
    require_finite(s, "tolerance_eigen input");
    const bool sym = symmetric.has_value() ? *symmetric : is_symmetric(s);
    if (!sym) {
        throw Error(ErrorKind::Unsupported,
                    "eigendecomposition of non-symmetric matrices is not supported");
    }
    auto full = detail::sorted_symmetric_eigen(s);
    if (!tol.active()) {
        return full;
    }
    const double t = tol.value();
    std::vector<Index> keep;
    for (Index i = 0; i < full.values.size(); ++i) {
        const double lambda = full.values(i);
        if (std::abs(lambda) <= t) {
            continue;
        }
        if (lambda < 0.0) {
            throw Error(ErrorKind::ComplexOrNegativeEigenvalue,
                        "eigenvalue " + std::to_string(lambda) +
                            " is negative beyond the tolerance; disable the tolerance to keep it");
        }
        keep.push_back(i);
    }
    return {detail::select_entries(full.values, keep), detail::select_columns(full.vectors, keep)};
}

//
// SVD with tolerance filter. The threshold is compared against the squared
// singular values (the eigenvalues l = d^2), so a component is dropped
// together with its vectors when d^2 <= t. Signs follow the right vectors (largest-magnitude entry of
// each v column positive) and u is flipped along with them.
//
inline SvdOutput tolerance_svd(const Matrix& x, const TolerancePolicy& tol)
{
    if (x.rows() == 0 || x.cols() == 0) {
        throw Error(ErrorKind::InvalidInput, "tolerance_svd needs a non-empty matrix");
    }
    require_finite(x, "tolerance_svd input");

    const bool wide = x.rows() < x.cols();
    detail::RawSvd raw = wide ? detail::one_sided_jacobi_svd(x.transpose())
                              : detail::one_sided_jacobi_svd(x);
    if (wide) {
        std::swap(raw.u, raw.v);
    }
    for (Index i = 0; i < raw.d.size(); ++i) {
        if (!(raw.d(i) >= 0.0)) {
            throw Error(ErrorKind::ComplexOrNegativeSingularValue,
                        "singular value " + std::to_string(raw.d(i)) + " is not a nonnegative real");
        }
    }

    auto order = detail::descending_order(raw.d);
    if (tol.active()) {
        std::erase_if(order, [&](Index i) { return raw.d(i) * raw.d(i) <= tol.value(); });
    }
    SvdOutput out{detail::select_columns(raw.u, order), detail::select_entries(raw.d, order),
                  detail::select_columns(raw.v, order)};
    detail::canonicalize_signs(out.v, &out.u);
    return out;
}

/// Symmetric PSD square root S with S S = w.
inline Matrix sqrt_psd_matrix(const Matrix& w)
{
    require_finite(w, "sqrt_psd_matrix input");
    const auto eig = detail::checked_psd_eigen(w, "sqrt_psd_matrix input");
    return detail::psd_spectral_map(eig, [](double l) { return std::sqrt(l); });
}

/// Pseudo-inverse square root: null directions map to zero.
inline Matrix invsqrt_psd_matrix(const Matrix& w)
{
    require_finite(w, "invsqrt_psd_matrix input");
    const auto eig = detail::checked_psd_eigen(w, "invsqrt_psd_matrix input");
    return detail::psd_spectral_map(eig, [](double l) { return 1.0 / std::sqrt(l); });
}

/// Exact test: any nonzero off-diagonal entry, however small, means false.
inline bool is_diagonal_matrix(const Matrix& w)
{
    if (w.rows() != w.cols()) {
        throw Error(ErrorKind::NonSquare, "is_diagonal_matrix needs a square matrix");
    }
    for (Index j = 0; j < w.cols(); ++j) {
        for (Index i = 0; i < w.rows(); ++i) {
            if (i != j && w(i, j) != 0.0) {
                return false;
            }
        }
    }
    return true;
}

inline bool is_empty_matrix(const Matrix& w)
{
    return w.rows() == 0 || w.cols() == 0 || (w.array() == 0.0).all();
}

/// Moore-Penrose pseudo-inverse. Singular values at or below
/// sqrt(eps) * d_max are treated as zero, the same relative rule as MASS::ginv.
inline Matrix pseudo_inverse(const Matrix& m)
{
    if (m.rows() == 0 || m.cols() == 0) {
        return Matrix::Zero(m.cols(), m.rows());
    }
    const auto full = tolerance_svd(m, TolerancePolicy::disabled());
    const double dmax = full.d.size() > 0 ? full.d(0) : 0.0;
    const double cut = std::sqrt(std::numeric_limits<double>::epsilon()) * dmax;
    Matrix out = Matrix::Zero(m.cols(), m.rows());
    for (Index i = 0; i < full.d.size(); ++i) {
        if (full.d(i) > cut && full.d(i) > 0.0) {
            out.noalias() += (full.v.col(i) / full.d(i)) * full.u.col(i).transpose();
        }
    }
    return out;
}

} // namespace gendecomp

#endif // GENDECOMP_KERNEL_HPP
