#ifndef GENDECOMP_DETAIL_JACOBI_HPP
#define GENDECOMP_DETAIL_JACOBI_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gendecomp/error.hpp"

namespace gendecomp::detail {

inline constexpr int kMaxJacobiSweeps = 100;

struct RawEigen {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

struct RawSvd {
    Eigen::MatrixXd u;
    Eigen::VectorXd d;
    Eigen::MatrixXd v;
};

//
// Cyclic (row-by-row) two-sided Jacobi for a real symmetric matrix. Only the
// lower triangle of `s` is read. Values come back unsorted, in the order of
// the diagonal they converged on.
//
// A rotation annihilates a(p,q) using
//
//   theta = (a(q,q) - a(p,p)) / (2 a(p,q)),   t = sgn(theta) / (|theta| + sqrt(theta^2 + 1))
//
// and the sweep loop ends once every off-diagonal entry is negligible with
// respect to its two diagonal neighbours (or to the global scale for a
// numerically zero diagonal).
//
inline RawEigen cyclic_jacobi_eigen(const Eigen::MatrixXd& s)
{
    const Eigen::Index n = s.rows();
    Eigen::MatrixXd a = s.selfadjointView<Eigen::Lower>();
    Eigen::MatrixXd vecs = Eigen::MatrixXd::Identity(n, n);

    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double scale = a.norm();
    // below this an entry is treated as exact zero no matter how small the
    // diagonal is; keeps rank-deficient inputs from sweeping forever
    const double floor = scale * eps * 1e-3;

    bool converged = (n <= 1) || scale == 0.0;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
        int rotations = 0;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(q, p);
                if (apq == 0.0) {
                    continue;
                }
                const double app = a(p, p);
                const double aqq = a(q, q);
                if (std::abs(apq) <= eps * std::sqrt(std::abs(app) * std::abs(aqq)) ||
                    std::abs(apq) <= floor) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                ++rotations;
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);

                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (Eigen::Index r = 0; r < n; ++r) {
                    if (r == p || r == q) {
                        continue;
                    }
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    const double new_rp = arp - sn * (arq + tau * arp);
                    const double new_rq = arq + sn * (arp - tau * arq);
                    a(r, p) = a(p, r) = new_rp;
                    a(r, q) = a(q, r) = new_rq;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double vrp = vecs(r, p);
                    const double vrq = vecs(r, q);
                    vecs(r, p) = vrp - sn * (vrq + tau * vrp);
                    vecs(r, q) = vrq + sn * (vrp - tau * vrq);
                }
            }
        }
        converged = (rotations == 0);
    }
    if (!converged) {
        throw Error(ErrorKind::NoConvergence,
                    "symmetric Jacobi did not converge within " + std::to_string(kMaxJacobiSweeps) +
                        " sweeps");
    }
    return {a.diagonal(), vecs};
}

//
// Extends the orthonormal columns of `basis` flagged in `valid` to a full
// orthonormal set by Gram-Schmidt against the canonical basis vectors. Used
// for left singular vectors attached to exactly-zero singular values.
//
inline void complete_orthonormal_columns(Eigen::MatrixXd& basis, std::vector<bool>& valid)
{
    const Eigen::Index m = basis.rows();
    Eigen::Index candidate = 0;
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
        if (valid[static_cast<std::size_t>(j)]) {
            continue;
        }
        while (candidate < m) {
            Eigen::VectorXd e = Eigen::VectorXd::Unit(m, candidate++);
            // two passes of classical Gram-Schmidt
            for (int pass = 0; pass < 2; ++pass) {
                for (Eigen::Index i = 0; i < basis.cols(); ++i) {
                    if (i == j || !(valid[static_cast<std::size_t>(i)])) {
                        continue;
                    }
                    e -= basis.col(i).dot(e) * basis.col(i);
                }
            }
            const double norm = e.norm();
            if (norm > 1e-8) {
                basis.col(j) = e / norm;
                break;
            }
        }
        if (candidate > m) {
            throw Error(ErrorKind::NoConvergence, "unable to complete orthonormal basis");
        }
        valid[static_cast<std::size_t>(j)] = true;
    }
}

//
// One-sided (Hestenes) Jacobi SVD. Requires rows >= cols; callers transpose
// wide inputs. Pairs of columns of the working copy are rotated until every
// pair is orthogonal to working precision; the column norms are then the
// singular values. Output is unsorted.
//
inline RawSvd one_sided_jacobi_svd(const Eigen::MatrixXd& x)
{
    const Eigen::Index m = x.rows();
    const Eigen::Index n = x.cols();
    Eigen::MatrixXd w = x;
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double scale = x.norm();
    // columns shorter than eps * ||x||_F are rounding noise; rotating them
    // against each other never settles, so they are left alone and zeroed
    const double negligible_sq = (scale * eps) * (scale * eps);

    bool converged = (n <= 1) || scale == 0.0;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
        int rotations = 0;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double alpha = w.col(p).squaredNorm();
                const double beta = w.col(q).squaredNorm();
                const double gamma = w.col(p).dot(w.col(q));
                if (gamma == 0.0 || alpha <= negligible_sq || beta <= negligible_sq ||
                    std::abs(gamma) <= eps * std::sqrt(alpha * beta)) {
                    continue;
                }
                ++rotations;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = c * t;
                for (Eigen::Index r = 0; r < m; ++r) {
                    const double wp = w(r, p);
                    const double wq = w(r, q);
                    w(r, p) = c * wp - sn * wq;
                    w(r, q) = sn * wp + c * wq;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double vp = v(r, p);
                    const double vq = v(r, q);
                    v(r, p) = c * vp - sn * vq;
                    v(r, q) = sn * vp + c * vq;
                }
            }
        }
        converged = (rotations == 0);
    }
    if (!converged) {
        throw Error(ErrorKind::NoConvergence,
                    "one-sided Jacobi SVD did not converge within " +
                        std::to_string(kMaxJacobiSweeps) + " sweeps");
    }

    Eigen::VectorXd d(n);
    std::vector<bool> valid(static_cast<std::size_t>(n), false);
    for (Eigen::Index j = 0; j < n; ++j) {
        d(j) = w.col(j).norm();
        if (d(j) * d(j) > negligible_sq && d(j) > std::numeric_limits<double>::min()) {
            w.col(j) /= d(j);
            valid[static_cast<std::size_t>(j)] = true;
        } else {
            d(j) = 0.0;
        }
    }
    complete_orthonormal_columns(w, valid);
    return {w, d, v};
}

} // namespace gendecomp::detail

#endif // GENDECOMP_DETAIL_JACOBI_HPP
