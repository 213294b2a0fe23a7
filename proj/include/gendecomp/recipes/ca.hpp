#ifndef GENDECOMP_RECIPES_CA_HPP
#define GENDECOMP_RECIPES_CA_HPP

#include <map>
#include <string>
#include <vector>

#include "gendecomp/decompositions.hpp"

namespace gendecomp {

/// Contingency table turned into probabilities, margins and deviations from
/// independence.
struct CaProfiles {
    Matrix observed;   // counts / grand total
    Vector row_prob;   // row sums of observed
    Vector col_prob;   // column sums of observed
    Matrix expected;   // row_prob col_prob^T
    Matrix deviations; // observed - expected
    double n_total = 0.0;
};

inline CaProfiles ca_preprocess(const Matrix& counts)
{
    if (counts.rows() == 0 || counts.cols() == 0) {
        throw Error(ErrorKind::EmptyMargin, "contingency table is empty");
    }
    require_finite(counts, "contingency table");
    if ((counts.array() < 0.0).any()) {
        throw Error(ErrorKind::NegativeCount, "contingency table has negative entries");
    }
    CaProfiles prof;
    prof.n_total = counts.sum();
    if (!(prof.n_total > 0.0)) {
        throw Error(ErrorKind::EmptyMargin, "contingency table sums to zero");
    }
    prof.observed = counts / prof.n_total;
    prof.row_prob = prof.observed.rowwise().sum();
    prof.col_prob = prof.observed.colwise().sum().transpose();
    for (Index i = 0; i < prof.row_prob.size(); ++i) {
        if (prof.row_prob(i) == 0.0) {
            throw Error(ErrorKind::EmptyMargin, "row " + std::to_string(i) + " is all zero");
        }
    }
    for (Index j = 0; j < prof.col_prob.size(); ++j) {
        if (prof.col_prob(j) == 0.0) {
            throw Error(ErrorKind::EmptyMargin, "column " + std::to_string(j) + " is all zero");
        }
    }
    prof.expected = prof.row_prob * prof.col_prob.transpose();
    prof.deviations = prof.observed - prof.expected;
    return prof;
}

/// gsvd(deviations, 1/r, 1/c). The eigenvalues sum to chi^2 / N.
inline DecompositionResult ca(const CaProfiles& prof, Index k = 0,
                              const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    return gsvd(prof.deviations, Vector(prof.row_prob.cwiseInverse()), Vector(prof.col_prob.cwiseInverse()), k,
                tol);
}

inline DecompositionResult ca(const Matrix& counts, Index k = 0,
                              const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    return ca(ca_preprocess(counts), k, tol);
}

/// N observations of V categorical variables, as text.
struct CategoricalTable {
    std::vector<std::string> variable_names;
    std::vector<std::string> row_labels;
    std::vector<std::vector<std::string>> rows;
};

struct VariableSpan {
    std::string name;
    Index first_column = 0;
    Index n_levels = 0;
};

/// Complete disjunctive (one-hot) coding of a CategoricalTable.
struct DisjunctiveTable {
    Matrix indicator;
    std::vector<VariableSpan> variable_spans;
    std::vector<std::string> level_labels;
    std::vector<std::string> row_labels;
};

//
// Levels are laid out variable by variable, in order of first appearance.
// Column labels are "<variable>.<level>".
//
inline DisjunctiveTable disjunctive_coding(const CategoricalTable& table)
{
    const std::size_t n_vars = table.variable_names.size();
    if (n_vars == 0 || table.rows.empty()) {
        throw Error(ErrorKind::InvalidInput, "categorical table is empty");
    }
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (table.rows[i].size() != n_vars) {
            throw Error(ErrorKind::InvalidInput, "row " + std::to_string(i) + " has " +
                                                     std::to_string(table.rows[i].size()) + " values, expected " +
                                                     std::to_string(n_vars));
        }
    }

    DisjunctiveTable out;
    out.row_labels = table.row_labels;
    std::vector<std::vector<std::string>> levels(n_vars);
    std::vector<std::map<std::string, Index>> level_index(n_vars);
    for (const auto& row : table.rows) {
        for (std::size_t v = 0; v < n_vars; ++v) {
            if (level_index[v].emplace(row[v], static_cast<Index>(levels[v].size())).second) {
                levels[v].push_back(row[v]);
            }
        }
    }
    Index offset = 0;
    for (std::size_t v = 0; v < n_vars; ++v) {
        if (levels[v].size() < 2) {
            throw Error(ErrorKind::SingleLevelVariable,
                        "variable '" + table.variable_names[v] + "' has fewer than two observed levels");
        }
        const auto n_levels = static_cast<Index>(levels[v].size());
        out.variable_spans.push_back({table.variable_names[v], offset, n_levels});
        for (const auto& level : levels[v]) {
            out.level_labels.push_back(table.variable_names[v] + "." + level);
        }
        offset += n_levels;
    }

    out.indicator = Matrix::Zero(static_cast<Index>(table.rows.size()), offset);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        for (std::size_t v = 0; v < n_vars; ++v) {
            const Index col = out.variable_spans[v].first_column + level_index[v].at(table.rows[i][v]);
            out.indicator(static_cast<Index>(i), col) = 1.0;
        }
    }
    return out;
}

/// MCA: CA of the indicator matrix.
inline DecompositionResult mca(const DisjunctiveTable& table, Index k = 0,
                               const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    return ca(table.indicator, k, tol);
}

inline DecompositionResult mca(const CategoricalTable& table, Index k = 0,
                               const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    return mca(disjunctive_coding(table), k, tol);
}

struct RmcaSpec {
    double omega = 0.0;
    Index k = 0;
};

//
// Pieces of the regularized MCA constraints that do not depend on omega:
// the column-centered indicator X, (X X^T)^+ and the projector X^T (X X^T)^+ X.
//
struct RmcaBasis {
    Matrix centered;
    Matrix row_gram_pinv;
    Matrix projector;
    Vector column_sums;

    explicit RmcaBasis(const DisjunctiveTable& table)
        : centered(table.indicator.rowwise() - table.indicator.colwise().mean()),
          row_gram_pinv(pseudo_inverse(centered * centered.transpose())),
          projector(centered.transpose() * row_gram_pinv * centered),
          column_sums(table.indicator.colwise().sum().transpose())
    {
    }
};

//
// Ridge-regularized MCA:
//   LW = I + omega (X X^T)^+
//   RW = diag(colSums(Z)) + omega X^T (X X^T)^+ X
//   gsvd(X, LW, t(RW^+), k)
// omega = 0 reproduces MCA up to a per-component scale factor.
//
inline DecompositionResult rmca(const RmcaBasis& basis, const RmcaSpec& spec,
                                const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    if (!(spec.omega >= 0.0) || !std::isfinite(spec.omega)) {
        throw Error(ErrorKind::InvalidInput, "omega must be a finite nonnegative number");
    }
    const Index n = basis.centered.rows();
    const Matrix lw = Matrix::Identity(n, n) + spec.omega * basis.row_gram_pinv;
    const Matrix rw = Matrix(basis.column_sums.asDiagonal()) + spec.omega * basis.projector;
    const Matrix inv_rw = pseudo_inverse(rw).transpose();
    return gsvd(basis.centered, lw, inv_rw, spec.k, tol);
}

inline DecompositionResult rmca(const DisjunctiveTable& table, const RmcaSpec& spec,
                                const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    return rmca(RmcaBasis(table), spec, tol);
}

/// One rmca run per omega, sharing the omega-independent pieces.
inline std::vector<DecompositionResult> rmca_sweep(const DisjunctiveTable& table, const std::vector<double>& omegas,
                                                   Index k = 0,
                                                   const TolerancePolicy& tol = TolerancePolicy::svd_default())
{
    const RmcaBasis basis(table);
    std::vector<DecompositionResult> out;
    out.reserve(omegas.size());
    for (double omega : omegas) {
        out.push_back(rmca(basis, RmcaSpec{omega, k}, tol));
    }
    return out;
}

} // namespace gendecomp

#endif // GENDECOMP_RECIPES_CA_HPP
