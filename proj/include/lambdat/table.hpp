#pragma once

#include "lambdat/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace lambdat {

template <typename Scalar>
using Grid = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Largest accepted |sum - 1| for a probability grid.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Observed (possibly weighted) frequencies of an r x c cross-classification.
template <typename Scalar = double>
class ContingencyTable {
public:
    explicit ContingencyTable(Grid<Scalar> counts) : counts_(std::move(counts)) {
        if (counts_.rows() < 2 || counts_.cols() < 2) {
            throw Error(ErrorCode::TooFewCategories,
                        "a contingency table needs at least 2 rows and 2 columns, got " +
                            std::to_string(counts_.rows()) + "x" + std::to_string(counts_.cols()));
        }
        for (Index i = 0; i < counts_.rows(); ++i) {
            for (Index j = 0; j < counts_.cols(); ++j) {
                const Scalar v = counts_(i, j);
                if (!std::isfinite(static_cast<double>(v)) || v < Scalar(0)) {
                    throw Error(ErrorCode::NegativeCount,
                                "count at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                    ") is negative or not finite");
                }
                total_ += v;
            }
        }
        if (!(total_ > Scalar(0))) {
            throw Error(ErrorCode::ZeroTotal, "contingency table has zero total");
        }
    }

    const Grid<Scalar>& counts() const noexcept { return counts_; }
    Scalar operator()(Index i, Index j) const { return counts_(i, j); }
    Index rows() const noexcept { return counts_.rows(); }
    Index cols() const noexcept { return counts_.cols(); }
    /// Grand total n.
    Scalar total() const noexcept { return total_; }

private:
    Grid<Scalar> counts_;
    Scalar total_{0};
};

template <typename Scalar>
class ProbabilityTable;

template <typename Derived>
ProbabilityTable<typename Derived::Scalar>
validateProbabilityTable(const Eigen::MatrixBase<Derived>& grid);

/// Cell probabilities p_ij with marginals recomputed from the cells.
/// Only obtainable through validateProbabilityTable (or helpers built on it).
template <typename Scalar = double>
class ProbabilityTable {
public:
    const Grid<Scalar>& cells() const noexcept { return p_; }
    Scalar operator()(Index i, Index j) const { return p_(i, j); }
    Index rows() const noexcept { return p_.rows(); }
    Index cols() const noexcept { return p_.cols(); }
    const Vector<Scalar>& rowMarginals() const noexcept { return rowMarginals_; }
    const Vector<Scalar>& colMarginals() const noexcept { return colMarginals_; }
    /// Sum of all cells (1 within kNormalizationTolerance).
    Scalar total() const noexcept { return total_; }

private:
    template <typename Derived>
    friend ProbabilityTable<typename Derived::Scalar>
    validateProbabilityTable(const Eigen::MatrixBase<Derived>& grid);

    explicit ProbabilityTable(Grid<Scalar> p) : p_(std::move(p)) {
        // Fixed summation order: transposing a table swaps the marginals bit for bit.
        rowMarginals_ = Vector<Scalar>::Zero(p_.rows());
        colMarginals_ = Vector<Scalar>::Zero(p_.cols());
        for (Index i = 0; i < p_.rows(); ++i) {
            for (Index j = 0; j < p_.cols(); ++j) {
                rowMarginals_(i) += p_(i, j);
            }
        }
        for (Index j = 0; j < p_.cols(); ++j) {
            for (Index i = 0; i < p_.rows(); ++i) {
                colMarginals_(j) += p_(i, j);
            }
        }
        for (Index i = 0; i < p_.rows(); ++i) {
            total_ += rowMarginals_(i);
        }
    }

    Grid<Scalar> p_;
    Vector<Scalar> rowMarginals_;
    Vector<Scalar> colMarginals_;
    Scalar total_{0};
};

/// Accepts a raw grid as a probability table: at least 2x2, non-negative
/// entries, sum within kNormalizationTolerance of 1.
template <typename Derived>
ProbabilityTable<typename Derived::Scalar>
validateProbabilityTable(const Eigen::MatrixBase<Derived>& grid) {
    using Scalar = typename Derived::Scalar;
    Grid<Scalar> p = grid;
    if (p.rows() < 2 || p.cols() < 2) {
        throw Error(ErrorCode::TooFewCategories,
                    "a probability table needs at least 2 rows and 2 columns, got " +
                        std::to_string(p.rows()) + "x" + std::to_string(p.cols()));
    }
    Scalar sum{0};
    for (Index i = 0; i < p.rows(); ++i) {
        for (Index j = 0; j < p.cols(); ++j) {
            const Scalar v = p(i, j);
            if (!std::isfinite(static_cast<double>(v)) || v < Scalar(0)) {
                throw Error(ErrorCode::NegativeEntry,
                            "probability at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                ") is negative or not finite");
            }
            sum += v;
        }
    }
    if (std::abs(static_cast<double>(sum) - 1.0) > kNormalizationTolerance) {
        throw Error(ErrorCode::NotNormalized,
                    "probabilities sum to " + std::to_string(static_cast<double>(sum)) + ", not 1");
    }
    return ProbabilityTable<Scalar>(std::move(p));
}

/// p_ij = n_ij / n.
template <typename Scalar>
ProbabilityTable<Scalar> normalize(const ContingencyTable<Scalar>& table) {
    return validateProbabilityTable(table.counts() / table.total());
}

template <typename Scalar>
ProbabilityTable<Scalar> transpose(const ProbabilityTable<Scalar>& p) {
    return validateProbabilityTable(p.cells().transpose());
}

/// Product table p_ij = rowMarginals_i * colMarginals_j.
template <typename DerivedRow, typename DerivedCol>
ProbabilityTable<typename DerivedRow::Scalar>
buildIndependent(const Eigen::MatrixBase<DerivedRow>& rowMarginals,
                 const Eigen::MatrixBase<DerivedCol>& colMarginals) {
    using Scalar = typename DerivedRow::Scalar;
    auto checkMarginal = [](const auto& m, const char* which) {
        if ((m.array() < Scalar(0)).any()) {
            throw Error(ErrorCode::NegativeEntry, std::string(which) + " marginals contain a negative entry");
        }
        if (std::abs(static_cast<double>(m.sum()) - 1.0) > kNormalizationTolerance) {
            throw Error(ErrorCode::NotNormalized, std::string(which) + " marginals do not sum to 1");
        }
    };
    checkMarginal(rowMarginals, "row");
    checkMarginal(colMarginals, "column");
    const Vector<Scalar> rows = rowMarginals;
    const Vector<Scalar> cols = colMarginals;
    return validateProbabilityTable(rows * cols.transpose());
}

/// Ordered top-t column choices for every row and for the column marginals.
template <typename Scalar = double>
struct TopKSelection {
    int t = 0;
    /// Column indices m_{i(1)}, ..., m_{i(t)} per row, largest first.
    std::vector<std::vector<Index>> rowTopSets;
    /// s_i: sum of the t largest cells of row i.
    Vector<Scalar> rowTopSums;
    /// Column indices m_{0(1)}, ..., m_{0(t)} of the largest column marginals.
    std::vector<Index> marginalTopSet;
    /// S_B: sum of the t largest column marginals.
    Scalar marginalTopSum{0};
    /// Set when the t-th and (t+1)-th sorted values coincide (to kTieResolution)
    /// in any row or in the marginals.
    bool tieFlag = false;

    bool rowContains(Index i, Index j) const {
        const auto& set = rowTopSets[static_cast<std::size_t>(i)];
        return std::find(set.begin(), set.end(), j) != set.end();
    }
    bool marginalContains(Index j) const {
        return std::find(marginalTopSet.begin(), marginalTopSet.end(), j) != marginalTopSet.end();
    }
};

namespace detail {

template <typename Scalar>
struct TopPick {
    std::vector<Index> indices;
    Scalar sum{0};
    bool tie = false;
};

/// Probabilities are ranked on a grid of this spacing. Proportions of equal
/// counts can differ in the last bit after division and summation; the grid
/// keeps them tied.
inline constexpr double kTieResolution = 0x1p-40;

// Descending order, tied values resolved towards the lowest index.
template <typename Derived>
TopPick<typename Derived::Scalar> pickTop(const Eigen::DenseBase<Derived>& values, int t) {
    std::vector<long long> key(static_cast<std::size_t>(values.size()));
    for (Index j = 0; j < values.size(); ++j) {
        key[static_cast<std::size_t>(j)] = std::llround(static_cast<double>(values(j)) / kTieResolution);
    }
    auto rank = [&](Index j) { return key[static_cast<std::size_t>(j)]; };
    std::vector<Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return rank(a) > rank(b); });
    TopPick<typename Derived::Scalar> pick;
    pick.indices.assign(order.begin(), order.begin() + t);
    // Summed in column order, like the marginals, so a row whose nonzero cells
    // are all selected gives s_i == p_{i+} exactly.
    std::vector<Index> ascending = pick.indices;
    std::sort(ascending.begin(), ascending.end());
    for (Index j : ascending) {
        pick.sum += values(j);
    }
    pick.tie = rank(order[static_cast<std::size_t>(t) - 1]) == rank(order[static_cast<std::size_t>(t)]);
    return pick;
}

/// Left-to-right sum, matching the order used for the table total.
template <typename Scalar>
Scalar sequentialSum(const Vector<Scalar>& v) {
    Scalar acc{0};
    for (Index i = 0; i < v.size(); ++i) {
        acc += v(i);
    }
    return acc;
}

inline void requireOrder(int t, Index categories) {
    if (t < 1 || t >= categories) {
        throw Error(ErrorCode::BadOrder, "order t=" + std::to_string(t) + " must satisfy 1 <= t < " +
                                             std::to_string(categories));
    }
}

} // namespace detail

template <typename Scalar>
TopKSelection<Scalar> selectTopK(const ProbabilityTable<Scalar>& p, int t) {
    detail::requireOrder(t, p.cols());
    TopKSelection<Scalar> sel;
    sel.t = t;
    sel.rowTopSums.resize(p.rows());
    sel.rowTopSets.reserve(static_cast<std::size_t>(p.rows()));
    for (Index i = 0; i < p.rows(); ++i) {
        auto pick = detail::pickTop(p.cells().row(i), t);
        sel.rowTopSums(i) = pick.sum;
        sel.tieFlag = sel.tieFlag || pick.tie;
        sel.rowTopSets.push_back(std::move(pick.indices));
    }
    auto marginal = detail::pickTop(p.colMarginals(), t);
    sel.marginalTopSet = std::move(marginal.indices);
    sel.marginalTopSum = marginal.sum;
    sel.tieFlag = sel.tieFlag || marginal.tie;
    return sel;
}

} // namespace lambdat
