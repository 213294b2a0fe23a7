#ifndef GENDECOMP_RECIPES_TWO_TABLE_HPP
#define GENDECOMP_RECIPES_TWO_TABLE_HPP

#include <utility>

#include "gendecomp/decompositions.hpp"
#include "gendecomp/recipes/ca.hpp"
#include "gendecomp/recipes/preprocess.hpp"

namespace gendecomp {

// PLS, RRR and CCA as GPLSSVD tuples (identity row metrics throughout):
//   PLS  GPLSSVD(I, X, I,           I, Y, I)
//   RRR  GPLSSVD(I, X, (X^T X)^+,   I, Y, I)
//   CCA  GPLSSVD(I, X, (X^T X)^+,   I, Y, (Y^T Y)^+)
// Centering/scaling is opt-in through `pre`.

inline DecompositionResult pls(const Matrix& x, const Matrix& y, const Preprocess& pre = {}, Index k = 0,
                               const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    return gplssvd(preprocess(x, pre), preprocess(y, pre), {}, {}, {}, {}, k, tol);
}

inline DecompositionResult rrr(const Matrix& x, const Matrix& y, const Preprocess& pre = {}, Index k = 0,
                               const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    const Matrix xp = preprocess(x, pre);
    const Matrix yp = preprocess(y, pre);
    const Matrix xrw = pseudo_inverse(xp.transpose() * xp);
    return gplssvd(xp, yp, {}, {}, xrw, {}, k, tol);
}

inline DecompositionResult cca(const Matrix& x, const Matrix& y, const Preprocess& pre = {}, Index k = 0,
                               const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    const Matrix xp = preprocess(x, pre);
    const Matrix yp = preprocess(y, pre);
    const Matrix xrw = pseudo_inverse(xp.transpose() * xp);
    const Matrix yrw = pseudo_inverse(yp.transpose() * yp);
    return gplssvd(xp, yp, {}, {}, xrw, yrw, k, tol);
}

/// Canonical correlations of a cca() result are its singular values.
inline Vector canonical_correlations(const DecompositionResult& r)
{
    return r.d;
}

/// Canonical coefficients W_X P and W_Y Q, computed as F diag(d)^-1.
inline std::pair<Matrix, Matrix> cca_coefficients(const DecompositionResult& r)
{
    if (!r.fi) {
        throw Error(ErrorKind::InvalidInput, "cca coefficients need a gplssvd result");
    }
    const Vector inv_d = r.d.cwiseInverse();
    return {*r.fi * inv_d.asDiagonal(), r.fj * inv_d.asDiagonal()};
}

/// Reduced-rank regression coefficients P diag(d).
inline Matrix rrr_coefficients(const DecompositionResult& r)
{
    if (!r.p) {
        throw Error(ErrorKind::InvalidInput, "rrr coefficients need a gplssvd result");
    }
    return *r.p * r.d.asDiagonal();
}

//
// PLS-CA: each disjunctive table goes through CA preprocessing on its own,
// then gplssvd of the two deviation matrices with 1/row and 1/column
// probabilities in all four constraint slots.
//
inline DecompositionResult plsca(const DisjunctiveTable& x, const DisjunctiveTable& y, Index k = 0,
                                 const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    if (x.indicator.rows() != y.indicator.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "plsca tables must have the same number of rows");
    }
    const auto px = ca_preprocess(x.indicator);
    const auto py = ca_preprocess(y.indicator);
    return gplssvd(px.deviations, py.deviations, Vector(px.row_prob.cwiseInverse()),
                   Vector(py.row_prob.cwiseInverse()), Vector(px.col_prob.cwiseInverse()),
                   Vector(py.col_prob.cwiseInverse()), k, tol);
}

inline DecompositionResult plsca(const CategoricalTable& x, const CategoricalTable& y, Index k = 0,
                                 const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    return plsca(disjunctive_coding(x), disjunctive_coding(y), k, tol);
}

} // namespace gendecomp

#endif // GENDECOMP_RECIPES_TWO_TABLE_HPP
