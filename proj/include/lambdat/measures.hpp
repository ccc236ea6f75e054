#pragma once

#include "lambdat/table.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

namespace lambdat {

enum class Family { Plain, K };

/// YgivenX treats rows as explanatory; XgivenY works on the transposed table.
enum class Direction { YgivenX, XgivenY, Symmetric };

constexpr std::string_view toString(Family f) noexcept {
    return f == Family::Plain ? "plain" : "k";
}

constexpr std::string_view toString(Direction d) noexcept {
    switch (d) {
    case Direction::YgivenX: return "y-given-x";
    case Direction::XgivenY: return "x-given-y";
    case Direction::Symmetric: return "symmetric";
    }
    return "unknown";
}

/// A PRE measure value together with the two error probabilities it compares.
template <typename Scalar = double>
struct MeasureResult {
    Scalar value{0};
    Family family = Family::Plain;
    Direction direction = Direction::YgivenX;
    int t = 1;
    /// Probability of error without the predictor.
    Scalar errorCase1{0};
    /// Probability of error with the predictor.
    Scalar errorCase2{0};
    bool tieFlag = false;
};

template <typename Scalar = double>
struct SymmetricWeights {
    Scalar wy{0};
    Scalar wx{0};
};

namespace detail {

/// Relative gap below which total - S_B counts as zero.
inline constexpr double kDegenerateGap = 1e-12;

template <typename Scalar>
Scalar caseOneGap(const ProbabilityTable<Scalar>& p, const TopKSelection<Scalar>& sel) {
    const Scalar gap = p.total() - sel.marginalTopSum;
    if (!(gap > Scalar(kDegenerateGap) * p.total())) {
        throw Error(ErrorCode::DegenerateMarginal,
                    "top-" + std::to_string(sel.t) +
                        " column marginals carry all probability; the measure is undefined");
    }
    return gap;
}

/// b_i = s_i / p_{i+}, zero for empty rows.
template <typename Scalar>
Vector<Scalar> rowHitRatios(const ProbabilityTable<Scalar>& p, const TopKSelection<Scalar>& sel) {
    Vector<Scalar> b(p.rows());
    for (Index i = 0; i < p.rows(); ++i) {
        const Scalar rowMass = p.rowMarginals()(i);
        b(i) = rowMass > Scalar(0) ? sel.rowTopSums(i) / rowMass : Scalar(0);
    }
    return b;
}

// The measures are evaluated in homogeneous form (1 replaced by the table
// total), which is exact for tables that sum to 1 and keeps perfect
// association at exactly 1 despite rounding in the total.

/// Weighted RMS hit rate a = sqrt(total * sum_i s_i b_i).
template <typename Scalar>
Scalar rmsHit(const ProbabilityTable<Scalar>& p, const TopKSelection<Scalar>& sel, const Vector<Scalar>& b) {
    Scalar acc{0};
    for (Index i = 0; i < p.rows(); ++i) {
        acc += sel.rowTopSums(i) * b(i);
    }
    using std::sqrt;
    return sqrt(p.total() * acc);
}

template <typename Scalar>
Scalar clampUnit(Scalar v) {
    return std::clamp(v, Scalar(0), Scalar(1));
}

} // namespace detail

/// Evaluates one family on a precomputed selection (rows explanatory).
template <typename Scalar>
MeasureResult<Scalar> measureFromSelection(const ProbabilityTable<Scalar>& p, const TopKSelection<Scalar>& sel,
                                           Family family) {
    const Scalar gap = detail::caseOneGap(p, sel);
    const Scalar total = p.total();
    const Scalar hit = family == Family::Plain
                           ? detail::sequentialSum(sel.rowTopSums)
                           : detail::rmsHit(p, sel, detail::rowHitRatios(p, sel));
    MeasureResult<Scalar> result;
    result.family = family;
    result.t = sel.t;
    result.value = detail::clampUnit((hit - sel.marginalTopSum) / gap);
    result.errorCase1 = gap / total;
    result.errorCase2 = std::max(Scalar(0), (total - hit) / total);
    result.tieFlag = sel.tieFlag;
    return result;
}

/// Multi-category Goodman–Kruskal lambda of order t. t = 1 is the classic lambda.
template <typename Scalar>
MeasureResult<Scalar> lambdaT(const ProbabilityTable<Scalar>& p, int t,
                              Direction direction = Direction::YgivenX) {
    if (direction == Direction::Symmetric) {
        throw Error(ErrorCode::DomainError, "use symmetricLambda for the symmetric measure");
    }
    const auto oriented = direction == Direction::XgivenY ? transpose(p) : p;
    auto result = measureFromSelection(oriented, selectTopK(oriented, t), Family::Plain);
    result.direction = direction;
    return result;
}

/// Multi-category RMS (Kvålseth-type) lambda of order t.
template <typename Scalar>
MeasureResult<Scalar> lambdaKT(const ProbabilityTable<Scalar>& p, int t,
                               Direction direction = Direction::YgivenX) {
    if (direction == Direction::Symmetric) {
        throw Error(ErrorCode::DomainError, "the K family has no symmetric form");
    }
    const auto oriented = direction == Direction::XgivenY ? transpose(p) : p;
    auto result = measureFromSelection(oriented, selectTopK(oriented, t), Family::K);
    result.direction = direction;
    return result;
}

template <typename Scalar>
MeasureResult<Scalar> measure(const ProbabilityTable<Scalar>& p, Family family, int t, Direction direction);

template <typename Scalar>
SymmetricWeights<Scalar> symmetricWeights(const ProbabilityTable<Scalar>& p) {
    const auto byRows = selectTopK(p, 1);
    const auto byCols = selectTopK(transpose(p), 1);
    const Scalar gapY = p.total() - byRows.marginalTopSum;
    const Scalar gapX = p.total() - byCols.marginalTopSum;
    const Scalar denom = gapY + gapX;
    if (!(denom > Scalar(detail::kDegenerateGap) * p.total())) {
        throw Error(ErrorCode::DegenerateMarginal, "both modal marginals equal 1; symmetric lambda is undefined");
    }
    return {gapY / denom, gapX / denom};
}

/// Goodman–Kruskal symmetric lambda: the weighted mean of lambda(Y|X) and
/// lambda(X|Y) with weights given by symmetricWeights.
template <typename Scalar>
MeasureResult<Scalar> symmetricLambda(const ProbabilityTable<Scalar>& p) {
    const auto byRows = selectTopK(p, 1);
    const auto byCols = selectTopK(transpose(p), 1);
    const Scalar total = p.total();
    const Scalar baseline = byRows.marginalTopSum + byCols.marginalTopSum;
    const Scalar hits = detail::sequentialSum(byRows.rowTopSums) + detail::sequentialSum(byCols.rowTopSums);
    const Scalar denom = Scalar(2) * total - baseline;
    if (!(denom > Scalar(detail::kDegenerateGap) * total)) {
        throw Error(ErrorCode::DegenerateMarginal, "both modal marginals equal 1; symmetric lambda is undefined");
    }
    MeasureResult<Scalar> result;
    result.family = Family::Plain;
    result.direction = Direction::Symmetric;
    result.t = 1;
    result.value = detail::clampUnit((hits - baseline) / denom);
    result.errorCase1 = denom / (Scalar(2) * total);
    result.errorCase2 = std::max(Scalar(0), (Scalar(2) * total - hits) / (Scalar(2) * total));
    result.tieFlag = byRows.tieFlag || byCols.tieFlag;
    return result;
}

template <typename Scalar>
MeasureResult<Scalar> measure(const ProbabilityTable<Scalar>& p, Family family, int t, Direction direction) {
    if (direction == Direction::Symmetric) {
        if (family != Family::Plain || t != 1) {
            throw Error(ErrorCode::DomainError, "the symmetric measure is defined for the plain family at t=1 only");
        }
        return symmetricLambda(p);
    }
    return family == Family::Plain ? lambdaT(p, t, direction) : lambdaKT(p, t, direction);
}

/// One (family, t) slot of a profile. Exactly one of result/error is set.
template <typename Scalar = double>
struct ProfileEntry {
    Family family = Family::Plain;
    int t = 1;
    std::optional<MeasureResult<Scalar>> result;
    std::optional<ErrorCode> error;
};

/// Both families at every admissible order, sorted by t (plain before K).
/// Orders whose marginal selection is degenerate are reported with an error
/// instead of aborting the profile.
template <typename Scalar>
std::vector<ProfileEntry<Scalar>> measureProfile(const ProbabilityTable<Scalar>& p,
                                                 Direction direction = Direction::YgivenX) {
    if (direction == Direction::Symmetric) {
        throw Error(ErrorCode::DomainError, "profiles are defined for asymmetric directions only");
    }
    const auto oriented = direction == Direction::XgivenY ? transpose(p) : p;
    std::vector<ProfileEntry<Scalar>> profile;
    for (int t = 1; t < oriented.cols(); ++t) {
        const auto sel = selectTopK(oriented, t);
        for (Family family : {Family::Plain, Family::K}) {
            ProfileEntry<Scalar> entry;
            entry.family = family;
            entry.t = t;
            try {
                auto r = measureFromSelection(oriented, sel, family);
                r.direction = direction;
                entry.result = r;
            } catch (const Error& e) {
                entry.error = e.code();
            }
            profile.push_back(std::move(entry));
        }
    }
    return profile;
}

} // namespace lambdat
