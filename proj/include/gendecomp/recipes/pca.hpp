#ifndef GENDECOMP_RECIPES_PCA_HPP
#define GENDECOMP_RECIPES_PCA_HPP

#include <optional>

#include "gendecomp/decompositions.hpp"
#include "gendecomp/recipes/preprocess.hpp"

namespace gendecomp {

enum class PcaRoute {
    EigenOfCov,           // geigen(cov(X))
    EigenOfCor,           // geigen(cor(X))
    TripletScaledData,    // gsvd(1/(I-1) I, X D^-1/2, I)
    TripletMetricColumns, // gsvd(1/(I-1) I, X, D^-1)
};

struct PcaSpec {
    bool center = true;
    bool scale = true;
    PcaRoute route = PcaRoute::TripletScaledData;
    /// row-constraint denominator; I - 1 when unset
    std::optional<double> dof_divisor;
};

//
// PCA through one of the generalized decompositions. The two eigen routes use
// the geigen default tolerance, the triplet routes the gsvd one, unless `tol`
// is given. TripletMetricColumns always centers; its column metric is
// (I - 1) / colSums(X^2), which turns covariance PCA into correlation PCA.
//
inline DecompositionResult pca(const Matrix& data, const PcaSpec& spec = {}, Index k = 0,
                               std::optional<TolerancePolicy> tol = std::nullopt)
{
    if (data.rows() < 2) {
        throw Error(ErrorKind::InvalidInput, "pca needs at least two rows");
    }
    require_finite(data, "pca data");
    const double dof = spec.dof_divisor.value_or(static_cast<double>(data.rows() - 1));
    if (!(dof > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "dof divisor must be positive");
    }

    switch (spec.route) {
    case PcaRoute::EigenOfCov:
        return geigen(covariance(data), {}, k, tol.value_or(TolerancePolicy::eigen_default()));
    case PcaRoute::EigenOfCor:
        return geigen(correlation(data), {}, k, tol.value_or(TolerancePolicy::eigen_default()));
    case PcaRoute::TripletScaledData: {
        const Matrix z = preprocess(data, {spec.center, spec.scale});
        const Vector rows = Vector::Constant(data.rows(), 1.0 / dof);
        return gsvd(z, rows, {}, k, tol.value_or(TolerancePolicy::svd_default()));
    }
    case PcaRoute::TripletMetricColumns: {
        const Matrix centered = center_columns(data);
        const Vector rows = Vector::Constant(data.rows(), 1.0 / dof);
        Vector cols(centered.cols());
        for (Index j = 0; j < centered.cols(); ++j) {
            const double ss = centered.col(j).squaredNorm();
            if (!(ss > 0.0)) {
                throw Error(ErrorKind::ZeroVarianceColumn, "column " + std::to_string(j) + " has zero variance");
            }
            cols(j) = dof / ss;
        }
        return gsvd(centered, rows, cols, k, tol.value_or(TolerancePolicy::svd_default()));
    }
    }
    throw Error(ErrorKind::InvalidInput, "unknown PCA route");
}

} // namespace gendecomp

#endif // GENDECOMP_RECIPES_PCA_HPP
