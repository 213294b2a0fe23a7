#ifndef GENDECOMP_TESTS_SUPPORT_HPP
#define GENDECOMP_TESTS_SUPPORT_HPP

// Fixtures and independent oracles shared by the unit and acceptance tests.
// Oracles avoid the library's own solvers: they use bisection, naive loops or
// Eigen's decompositions.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gendecomp/recipes.hpp"

namespace testsupport {

using gendecomp::Index;
using gendecomp::Matrix;
using gendecomp::Vector;

// mt19937_64 output is fully specified by the standard, so these draws are
// identical across standard libraries (unlike std::normal_distribution).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    Index below(Index n) { return static_cast<Index>(engine_() % static_cast<std::uint64_t>(n)); }

    /// Index drawn with probability proportional to `weights`.
    Index weighted(const std::vector<double>& weights)
    {
        double total = 0.0;
        for (double w : weights) {
            total += w;
        }
        double u = uniform() * total;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            u -= weights[i];
            if (u < 0.0) {
                return static_cast<Index>(i);
            }
        }
        return static_cast<Index>(weights.size() - 1);
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed)
{
    Rng rng(seed);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            m(i, j) = rng.normal();
        }
    }
    return m;
}

inline Matrix random_symmetric(Index n, std::uint64_t seed)
{
    const Matrix a = random_matrix(n, n, seed);
    return 0.5 * (a + a.transpose());
}

/// A A^T / n + 0.5 I: symmetric positive definite, well conditioned.
inline Matrix random_spd(Index n, std::uint64_t seed)
{
    const Matrix a = random_matrix(n, n, seed);
    return a * a.transpose() / static_cast<double>(n) + 0.5 * Matrix::Identity(n, n);
}

inline Vector random_positive(Index n, std::uint64_t seed, double lo = 0.2, double hi = 3.0)
{
    Rng rng(seed);
    Vector v(n);
    for (Index i = 0; i < n; ++i) {
        v(i) = rng.uniform(lo, hi);
    }
    return v;
}

/// Correlated columns: a random factor mix plus noise.
inline Matrix correlated_data(Index rows, Index cols, std::uint64_t seed)
{
    const Matrix f = random_matrix(rows, 2, seed);
    const Matrix load = random_matrix(2, cols, seed + 1000);
    const Matrix noise = random_matrix(rows, cols, seed + 2000);
    Matrix x = f * load + 0.7 * noise;
    Rng rng(seed + 3000);
    for (Index j = 0; j < cols; ++j) {
        x.col(j) = x.col(j) * rng.uniform(0.5, 4.0) + Vector::Constant(rows, rng.uniform(-5.0, 5.0));
    }
    return x;
}

/// Integer counts in [lo, hi].
inline Matrix random_counts(Index rows, Index cols, std::uint64_t seed, int lo = 1, int hi = 30)
{
    Rng rng(seed);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            m(i, j) = static_cast<double>(lo + rng.below(hi - lo + 1));
        }
    }
    return m;
}

/// An exactly independent table: outer product of integer margins.
inline Matrix independent_counts(Index rows, Index cols, std::uint64_t seed)
{
    Rng rng(seed);
    Vector a(rows);
    Vector b(cols);
    for (Index i = 0; i < rows; ++i) {
        a(i) = static_cast<double>(1 + rng.below(9));
    }
    for (Index j = 0; j < cols; ++j) {
        b(j) = static_cast<double>(1 + rng.below(9));
    }
    return a * b.transpose();
}

inline Matrix euclidean_distances(const Matrix& x)
{
    const Index n = x.rows();
    Matrix d(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            d(i, j) = (x.row(i) - x.row(j)).norm();
        }
    }
    return d;
}

/// z-scored data with a sample-sd denominator.
inline Matrix zscore(const Matrix& x)
{
    return gendecomp::preprocess(x, {true, true});
}

//
// Categorical fixture with the given level counts. The first rows cycle
// through all levels so every level is observed; the rest are drawn with
// weights 1/(level+1)^2, which makes the variables unbalanced.
//
inline gendecomp::CategoricalTable categorical_fixture(Index n_rows, const std::vector<Index>& levels,
                                                       std::uint64_t seed)
{
    Rng rng(seed);
    gendecomp::CategoricalTable t;
    for (std::size_t v = 0; v < levels.size(); ++v) {
        t.variable_names.push_back(std::string(1, static_cast<char>('A' + v)));
    }
    for (Index i = 0; i < n_rows; ++i) {
        std::vector<std::string> row;
        for (Index levels_v : levels) {
            Index level = 0;
            if (i < levels_v) {
                level = i;
            } else {
                std::vector<double> w;
                for (Index l = 0; l < levels_v; ++l) {
                    w.push_back(1.0 / static_cast<double>((l + 1) * (l + 1)));
                }
                level = rng.weighted(w);
            }
            row.push_back("L" + std::to_string(level + 1));
        }
        t.row_labels.push_back("r" + std::to_string(i + 1));
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// 138 rows, four variables with 3, 5, 2 and 5 levels (15 indicator columns).
inline gendecomp::CategoricalTable mca_fixture()
{
    return categorical_fixture(138, {3, 5, 2, 5}, 20201);
}

// ---------------------------------------------------------------- oracles

inline Matrix naive_product(const Matrix& a, const Matrix& b)
{
    Matrix c = Matrix::Zero(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < b.cols(); ++j) {
            double s = 0.0;
            for (Index k = 0; k < a.cols(); ++k) {
                s += a(i, k) * b(k, j);
            }
            c(i, j) = s;
        }
    }
    return c;
}

/// Number of eigenvalues of symmetric s below sigma: count of negative pivots
/// of s - sigma I (Sylvester inertia), Gaussian elimination without pivoting.
inline Index eigenvalues_below(const Matrix& s, double sigma)
{
    Matrix a = s - sigma * Matrix::Identity(s.rows(), s.cols());
    const Index n = a.rows();
    Index negatives = 0;
    for (Index k = 0; k < n; ++k) {
        double pivot = a(k, k);
        if (pivot == 0.0) {
            pivot = 1e-300;
        }
        if (pivot < 0.0) {
            ++negatives;
        }
        for (Index i = k + 1; i < n; ++i) {
            const double f = a(i, k) / pivot;
            for (Index j = k + 1; j < n; ++j) {
                a(i, j) -= f * a(k, j);
            }
        }
    }
    return negatives;
}

/// Eigenvalues (descending) by inertia bisection.
inline Vector bisection_eigenvalues(const Matrix& s)
{
    const Index n = s.rows();
    double bound = 0.0;
    for (Index i = 0; i < n; ++i) {
        bound = std::max(bound, s.row(i).cwiseAbs().sum());
    }
    bound += 1.0;
    Vector out(n);
    for (Index m = 0; m < n; ++m) {
        // (n - m)-th smallest eigenvalue, i.e. m-th largest
        const Index target = n - m; // want count_below(x) >= target
        double lo = -bound;
        double hi = bound;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (eigenvalues_below(s, mid) >= target) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out(m) = 0.5 * (lo + hi);
    }
    return out;
}

/// Unit eigenvector for a simple eigenvalue by inverse iteration.
inline Vector inverse_iteration(const Matrix& s, double lambda)
{
    const Index n = s.rows();
    const double shift = lambda + 1e-10 * (1.0 + std::abs(lambda));
    const Eigen::FullPivLU<Matrix> lu(s - shift * Matrix::Identity(n, n));
    Vector x = Vector::Ones(n) + Vector::LinSpaced(n, 0.0, 0.1);
    for (int it = 0; it < 6; ++it) {
        x = lu.solve(x);
        x.normalize();
    }
    return x;
}

/// Flips v so its largest-magnitude entry is positive.
inline Vector positive_pivot(Vector v)
{
    Index idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    return v(idx) < 0.0 ? Vector(-v) : v;
}

/// Columns of a and b equal up to a per-column sign.
inline double max_diff_up_to_sign(const Matrix& a, const Matrix& b)
{
    double worst = 0.0;
    for (Index j = 0; j < a.cols(); ++j) {
        const double plus = (a.col(j) - b.col(j)).cwiseAbs().maxCoeff();
        const double minus = (a.col(j) + b.col(j)).cwiseAbs().maxCoeff();
        worst = std::max(worst, std::min(plus, minus));
    }
    return worst;
}

inline double max_abs(const Matrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Pearson chi-square by summing over cells.
inline double chi_square(const Matrix& counts)
{
    double total = 0.0;
    for (Index i = 0; i < counts.rows(); ++i) {
        for (Index j = 0; j < counts.cols(); ++j) {
            total += counts(i, j);
        }
    }
    double chi2 = 0.0;
    for (Index i = 0; i < counts.rows(); ++i) {
        double row = 0.0;
        for (Index j = 0; j < counts.cols(); ++j) {
            row += counts(i, j);
        }
        for (Index j = 0; j < counts.cols(); ++j) {
            double col = 0.0;
            for (Index r = 0; r < counts.rows(); ++r) {
                col += counts(r, j);
            }
            const double expected = row * col / total;
            chi2 += (counts(i, j) - expected) * (counts(i, j) - expected) / expected;
        }
    }
    return chi2;
}

/// Classical scaling with explicit double-centering loops and Eigen's
/// eigensolver: returns the n x dims coordinate matrix.
inline Matrix classical_mds_oracle(const Matrix& dist, Index dims)
{
    const Index n = dist.rows();
    Matrix b(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            double row = 0.0;
            double col = 0.0;
            double all = 0.0;
            for (Index k = 0; k < n; ++k) {
                row += dist(i, k) * dist(i, k);
                col += dist(k, j) * dist(k, j);
            }
            for (Index r = 0; r < n; ++r) {
                for (Index c = 0; c < n; ++c) {
                    all += dist(r, c) * dist(r, c);
                }
            }
            const double nn = static_cast<double>(n);
            b(i, j) = -0.5 * (dist(i, j) * dist(i, j) - row / nn - col / nn + all / (nn * nn));
        }
    }
    const Eigen::SelfAdjointEigenSolver<Matrix> es(b);
    Matrix coords(n, dims);
    for (Index k = 0; k < dims; ++k) {
        const Index idx = n - 1 - k;
        coords.col(k) = es.eigenvectors().col(idx) * std::sqrt(std::max(0.0, es.eigenvalues()(idx)));
    }
    return coords;
}

/// Canonical correlations: sqrt of the eigenvalues of Sxx^-1 Sxy Syy^-1 Syx.
inline Vector cca_oracle(const Matrix& x, const Matrix& y)
{
    const Matrix sxx = x.transpose() * x;
    const Matrix syy = y.transpose() * y;
    const Matrix sxy = x.transpose() * y;
    const Matrix m = sxx.fullPivLu().solve(sxy) * syy.fullPivLu().solve(sxy.transpose());
    const Eigen::EigenSolver<Matrix> es(m);
    std::vector<double> vals;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        vals.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
    }
    std::sort(vals.rbegin(), vals.rend());
    const Index r = std::min(x.cols(), y.cols());
    Vector out(r);
    for (Index i = 0; i < r; ++i) {
        out(i) = vals[static_cast<std::size_t>(i)];
    }
    return out;
}

inline Vector jacobi_singular_values(const Matrix& x)
{
    return Eigen::JacobiSVD<Matrix>(x).singularValues();
}

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    out << text;
}

/// Fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("gendecomp_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string matrix_to_csv(const Matrix& m)
{
    std::ostringstream out;
    out.precision(17);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            out << (j ? "," : "") << m(i, j);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace testsupport

#endif // GENDECOMP_TESTS_SUPPORT_HPP
