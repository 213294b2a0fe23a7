#ifndef GENDECOMP_DECOMPOSITIONS_HPP
#define GENDECOMP_DECOMPOSITIONS_HPP

#include <optional>
#include <string>
#include <string_view>

#include "gendecomp/constraints.hpp"
#include "gendecomp/kernel.hpp"

namespace gendecomp {

enum class Method { Geigen, Gsvd, Gplssvd };

inline std::string_view to_string(Method m) noexcept
{
    switch (m) {
    case Method::Geigen: return "geigen";
    case Method::Gsvd: return "gsvd";
    case Method::Gplssvd: return "gplssvd";
    }
    return "unknown";
}

//
// Common output of geigen, gsvd and gplssvd.
//
//   d, l          retained singular values / eigenvalues (k of them)
//   d_full, l_full  every component that survived the tolerance
//   u, v          singular (or eigen) vectors of the weighted matrix
//   p, q          generalized vectors, p = M^-1/2 u and q = W^-1/2 v
//   fi, fj        component scores, metric * generalized vectors * diag(d)
//   lx, ly        latent variable scores (gplssvd only)
//
// Fields a method does not produce are left empty: geigen has no u, p, fi,
// lx, ly; gsvd has no lx, ly.
//
struct DecompositionResult {
    Method method = Method::Gsvd;
    Vector d;
    Vector d_full;
    Vector l;
    Vector l_full;
    std::optional<Matrix> u;
    Matrix v;
    std::optional<Matrix> p;
    Matrix q;
    std::optional<Matrix> fi;
    Matrix fj;
    std::optional<Matrix> lx;
    std::optional<Matrix> ly;
    Index n_total_components = 0;
    Index n_retained = 0;
    /// dimensions of the decomposed data (x for gplssvd)
    Index n_rows = 0;
    Index n_cols = 0;
    TolerancePolicy tol = TolerancePolicy::disabled();
    /// set when k asked for more components than exist
    std::optional<std::string> notice;
};

namespace detail {

inline Index retained_count(Index k, Index total, std::optional<std::string>& notice)
{
    if (k < 0) {
        throw Error(ErrorKind::InvalidInput, "k must be nonnegative");
    }
    if (k == 0 || k == total) {
        return total;
    }
    if (k > total) {
        notice = "requested k = " + std::to_string(k) + " exceeds the " + std::to_string(total) +
                 " available components; returning all of them";
        return total;
    }
    return k;
}

inline void truncate_columns(Matrix& m, Index k)
{
    m.conservativeResize(Eigen::NoChange, k);
}

inline void truncate_columns(std::optional<Matrix>& m, Index k)
{
    if (m) {
        m->conservativeResize(Eigen::NoChange, k);
    }
}

// Everything is computed for the full retained rank first and cut afterwards,
// so a k-run is bit-identical to the leading columns of a k = 0 run.
inline void apply_rank(DecompositionResult& r, Index k)
{
    r.n_total_components = r.d_full.size();
    r.n_retained = retained_count(k, r.n_total_components, r.notice);
    const Index kk = r.n_retained;
    r.d = r.d_full.head(kk);
    r.l = r.l_full.head(kk);
    truncate_columns(r.u, kk);
    truncate_columns(r.v, kk);
    truncate_columns(r.p, kk);
    truncate_columns(r.q, kk);
    truncate_columns(r.fi, kk);
    truncate_columns(r.fj, kk);
    truncate_columns(r.lx, kk);
    truncate_columns(r.ly, kk);
}

inline Matrix scale_columns(const Matrix& m, const Vector& d)
{
    return m * d.asDiagonal();
}

} // namespace detail

//
// Generalized eigendecomposition of a square x under the metric w:
// eigendecompose W^1/2 X W^1/2 = V L V^T, then Q = W^-1/2 V and F_J = W Q D.
// Under a disabled tolerance negative eigenvalues are kept in l_full and
// their singular values are reported as 0.
//
inline DecompositionResult geigen(const Matrix& x, const ConstraintInput& w = {}, Index k = 0,
                                  const TolerancePolicy& tol = TolerancePolicy::eigen_default(),
                                  std::optional<bool> symmetric = std::nullopt)
{
    if (x.rows() != x.cols()) {
        throw Error(ErrorKind::NonSquare, "geigen needs a square matrix");
    }
    if (x.rows() == 0) {
        throw Error(ErrorKind::InvalidInput, "geigen needs a non-empty matrix");
    }
    require_finite(x, "geigen input");
    const Constraint wc = normalize_constraint(w, x.rows());

    if (!symmetric.has_value()) {
        symmetric = is_symmetric(x);
    }
    const Matrix xt = apply_sqrt_metric(wc, apply_sqrt_metric(wc, x, Side::Right), Side::Left);
    const auto eig = tolerance_eigen(xt, tol, symmetric);

    DecompositionResult r;
    r.method = Method::Geigen;
    r.tol = tol;
    r.n_rows = x.rows();
    r.n_cols = x.cols();
    r.l_full = eig.values;
    r.d_full = eig.values.unaryExpr([](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
    r.v = eig.vectors;
    r.q = apply_invsqrt_metric(wc, r.v, Side::Left);
    r.fj = detail::scale_columns(apply_metric(wc, r.q, Side::Left), r.d_full);
    detail::apply_rank(r, k);
    return r;
}

//
// Generalized SVD of x under row metric lw (M) and column metric rw (W):
// SVD of M^1/2 X W^1/2 = U D V^T, P = M^-1/2 U, Q = W^-1/2 V,
// F_I = M P D, F_J = W Q D.
//
inline DecompositionResult gsvd(const Matrix& x, const ConstraintInput& lw = {},
                                const ConstraintInput& rw = {}, Index k = 0,
                                const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    if (x.rows() == 0 || x.cols() == 0) {
        throw Error(ErrorKind::InvalidInput, "gsvd needs a non-empty matrix");
    }
    require_finite(x, "gsvd input");
    const Constraint lc = normalize_constraint(lw, x.rows());
    const Constraint rc = normalize_constraint(rw, x.cols());

    const Matrix xt = apply_sqrt_metric(lc, apply_sqrt_metric(rc, x, Side::Right), Side::Left);
    auto svd = tolerance_svd(xt, tol);

    DecompositionResult r;
    r.method = Method::Gsvd;
    r.tol = tol;
    r.n_rows = x.rows();
    r.n_cols = x.cols();
    r.d_full = svd.d;
    r.l_full = svd.d.cwiseAbs2();
    r.p = apply_invsqrt_metric(lc, svd.u, Side::Left);
    r.q = apply_invsqrt_metric(rc, svd.v, Side::Left);
    r.fi = detail::scale_columns(apply_metric(lc, *r.p, Side::Left), r.d_full);
    r.fj = detail::scale_columns(apply_metric(rc, r.q, Side::Left), r.d_full);
    r.u = std::move(svd.u);
    r.v = std::move(svd.v);
    detail::apply_rank(r, k);
    return r;
}

//
// Generalized PLS-SVD of the pair (x, y), which share rows. With
// X~ = M_X^1/2 X W_X^1/2 and Y~ likewise, SVD of X~^T Y~ = U D V^T gives
// P = W_X^-1/2 U, Q = W_Y^-1/2 V, F_I = W_X P D, F_J = W_Y Q D and latent
// variables L_X = M_X^1/2 X W_X P, L_Y = M_Y^1/2 Y W_Y Q with L_X^T L_Y = D.
//
inline DecompositionResult gplssvd(const Matrix& x, const Matrix& y, const ConstraintInput& xlw = {},
                                   const ConstraintInput& ylw = {}, const ConstraintInput& xrw = {},
                                   const ConstraintInput& yrw = {}, Index k = 0,
                                   const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    if (x.rows() == 0 || x.cols() == 0 || y.rows() == 0 || y.cols() == 0) {
        throw Error(ErrorKind::InvalidInput, "gplssvd needs non-empty matrices");
    }
    if (x.rows() != y.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "x has " + std::to_string(x.rows()) + " rows but y has " +
                                                      std::to_string(y.rows()));
    }
    require_finite(x, "gplssvd x");
    require_finite(y, "gplssvd y");
    const Constraint mx = normalize_constraint(xlw, x.rows());
    const Constraint my = normalize_constraint(ylw, y.rows());
    const Constraint wx = normalize_constraint(xrw, x.cols());
    const Constraint wy = normalize_constraint(yrw, y.cols());

    const Matrix xt = apply_sqrt_metric(mx, apply_sqrt_metric(wx, x, Side::Right), Side::Left);
    const Matrix yt = apply_sqrt_metric(my, apply_sqrt_metric(wy, y, Side::Right), Side::Left);
    auto svd = tolerance_svd(xt.transpose() * yt, tol);

    DecompositionResult r;
    r.method = Method::Gplssvd;
    r.tol = tol;
    r.n_rows = x.rows();
    r.n_cols = x.cols();
    r.d_full = svd.d;
    r.l_full = svd.d.cwiseAbs2();
    r.p = apply_invsqrt_metric(wx, svd.u, Side::Left);
    r.q = apply_invsqrt_metric(wy, svd.v, Side::Left);
    const Matrix wx_p = apply_metric(wx, *r.p, Side::Left);
    const Matrix wy_q = apply_metric(wy, r.q, Side::Left);
    r.fi = detail::scale_columns(wx_p, r.d_full);
    r.fj = detail::scale_columns(wy_q, r.d_full);
    r.lx = apply_sqrt_metric(mx, x * wx_p, Side::Left);
    r.ly = apply_sqrt_metric(my, y * wy_q, Side::Left);
    r.u = std::move(svd.u);
    r.v = std::move(svd.v);
    detail::apply_rank(r, k);
    return r;
}

} // namespace gendecomp

#endif // GENDECOMP_DECOMPOSITIONS_HPP
