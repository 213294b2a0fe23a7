#ifndef GENDECOMP_RECIPES_MDS_HPP
#define GENDECOMP_RECIPES_MDS_HPP

#include <string>

#include "gendecomp/decompositions.hpp"

namespace gendecomp {

inline void validate_distance_matrix(const Matrix& dist)
{
    if (dist.rows() != dist.cols() || dist.rows() == 0) {
        throw Error(ErrorKind::NotADistanceMatrix, "distance matrix must be square and non-empty");
    }
    require_finite(dist, "distance matrix");
    if (!is_symmetric(dist)) {
        throw Error(ErrorKind::NotADistanceMatrix, "distance matrix is not symmetric");
    }
    for (Index i = 0; i < dist.rows(); ++i) {
        if (dist(i, i) != 0.0) {
            throw Error(ErrorKind::NotADistanceMatrix, "nonzero diagonal entry at " + std::to_string(i));
        }
    }
    if ((dist.array() < 0.0).any()) {
        throw Error(ErrorKind::NotADistanceMatrix, "negative distance");
    }
}

/// -1/2 C D^2 C with C = I - 11^T/n, by subtracting row, column and grand means.
inline Matrix double_center_squared(const Matrix& dist)
{
    const Matrix sq = dist.cwiseAbs2();
    const Vector row_means = sq.rowwise().mean();
    const Vector col_means = sq.colwise().mean().transpose();
    const double grand = sq.mean();
    Matrix b(sq.rows(), sq.cols());
    for (Index j = 0; j < sq.cols(); ++j) {
        for (Index i = 0; i < sq.rows(); ++i) {
            b(i, j) = -0.5 * (sq(i, j) - row_means(i) - col_means(j) + grand);
        }
    }
    return b;
}

/// Classical (metric) MDS: geigen of the double-centered squared distances.
/// The first two columns of fj are the classical scaling coordinates.
inline DecompositionResult mds(const Matrix& dist, Index k = 0,
                               const TolerancePolicy& tol = TolerancePolicy::eigen_default())
{
    validate_distance_matrix(dist);
    return geigen(double_center_squared(dist), {}, k, tol, true);
}

struct WeightedMdsResult {
    DecompositionResult decomposition;
    Matrix vector_scores;      // V D
    Matrix generalized_scores; // Q D
    Matrix component_scores;   // W Q D (= decomposition.fj)
};

/// -1/2 C D^2 C^T with C = I - 1 w^T and w used as given.
inline Matrix weighted_center_squared(const Matrix& dist, const Vector& weights)
{
    const Matrix sq = dist.cwiseAbs2();
    // C S = S - 1 (w^T S); (C S) C^T = M - (M w) 1^T
    const Eigen::RowVectorXd wt_s = weights.transpose() * sq;
    const Matrix cs = sq.rowwise() - wt_s;
    const Vector csw = cs * weights;
    Matrix b = cs.colwise() - csw;
    b *= -0.5;
    // symmetric in exact arithmetic; remove rounding asymmetry
    return 0.5 * (b + b.transpose());
}

//
// Weighted MDS. The decomposed matrix is generally not PSD, so the tolerance
// is always disabled and l_full may hold negative values.
//
inline WeightedMdsResult weighted_mds(const Matrix& dist, const Vector& row_weights, Index k = 0)
{
    validate_distance_matrix(dist);
    if (row_weights.size() != dist.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "need one weight per row of the distance matrix");
    }
    for (Index i = 0; i < row_weights.size(); ++i) {
        if (!(row_weights(i) > 0.0) || !std::isfinite(row_weights(i))) {
            throw Error(ErrorKind::NonPositiveWeight, "weight " + std::to_string(i) + " is not positive");
        }
    }
    WeightedMdsResult out;
    out.decomposition = geigen(weighted_center_squared(dist, row_weights), row_weights, k,
                               TolerancePolicy::disabled(), true);
    const auto& r = out.decomposition;
    out.vector_scores = r.v * r.d.asDiagonal();
    out.generalized_scores = r.q * r.d.asDiagonal();
    out.component_scores = r.fj;
    return out;
}

} // namespace gendecomp

#endif // GENDECOMP_RECIPES_MDS_HPP
