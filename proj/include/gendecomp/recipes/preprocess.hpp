#ifndef GENDECOMP_RECIPES_PREPROCESS_HPP
#define GENDECOMP_RECIPES_PREPROCESS_HPP

#include <cmath>
#include <string>

#include "gendecomp/kernel.hpp"

namespace gendecomp {

struct Preprocess {
    bool center = false;
    bool scale = false;
};

inline Vector column_means(const Matrix& x)
{
    return x.colwise().mean().transpose();
}

inline Matrix center_columns(const Matrix& x)
{
    return x.rowwise() - x.colwise().mean();
}

//
// Column scaling with the same conventions as base R's scale(): divide by the
// standard deviation (n - 1 denominator) when centered, by the root mean
// square sqrt(sum x^2 / (n - 1)) otherwise.
//
inline Matrix preprocess(const Matrix& x, const Preprocess& how)
{
    if (x.rows() < 2 && how.scale) {
        throw Error(ErrorKind::InvalidInput, "scaling needs at least two rows");
    }
    Matrix out = how.center ? center_columns(x) : x;
    if (how.scale) {
        const double dof = static_cast<double>(x.rows() - 1);
        for (Index j = 0; j < out.cols(); ++j) {
            const double s = std::sqrt(out.col(j).squaredNorm() / dof);
            if (!(s > 0.0)) {
                throw Error(ErrorKind::ZeroVarianceColumn,
                            "column " + std::to_string(j) + " has zero variance");
            }
            out.col(j) /= s;
        }
    }
    return out;
}

inline Matrix covariance(const Matrix& x)
{
    const Matrix c = center_columns(x);
    return (c.transpose() * c) / static_cast<double>(x.rows() - 1);
}

/// D^-1/2 S D^-1/2 with S the covariance and D its diagonal.
inline Matrix correlation(const Matrix& x)
{
    const Matrix s = covariance(x);
    Vector inv_sd(s.rows());
    for (Index j = 0; j < s.rows(); ++j) {
        if (!(s(j, j) > 0.0)) {
            throw Error(ErrorKind::ZeroVarianceColumn, "column " + std::to_string(j) + " has zero variance");
        }
        inv_sd(j) = 1.0 / std::sqrt(s(j, j));
    }
    Matrix r = inv_sd.asDiagonal() * s * inv_sd.asDiagonal();
    r.diagonal().setOnes();
    return r;
}

} // namespace gendecomp

#endif // GENDECOMP_RECIPES_PREPROCESS_HPP
