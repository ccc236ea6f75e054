#pragma once

#include "lambdat/measures.hpp"
#include "lambdat/normal.hpp"
#include "lambdat/table.hpp"

#include <cmath>
#include <optional>

namespace lambdat {

/// Partial derivatives of a measure with respect to every cell probability.
template <typename Scalar = double>
struct GradientGrid {
    Grid<Scalar> delta;
    Family family = Family::Plain;
    int t = 1;
    /// Measure value the gradient was evaluated at.
    Scalar estimate{0};
    /// RMS hit rate (K family only).
    Scalar a{0};
    /// Per-row hit ratios s_i / p_{i+} (K family only).
    Vector<Scalar> b;
};

/// Delta_ij = [1{j in A_i} - (1 - lambda) 1{j in B}] / (1 - S_B).
template <typename Scalar>
GradientGrid<Scalar> gradientPlain(const ProbabilityTable<Scalar>& p, const TopKSelection<Scalar>& sel) {
    const auto m = measureFromSelection(p, sel, Family::Plain);
    const Scalar scale = Scalar(1) / (p.total() - sel.marginalTopSum);
    GradientGrid<Scalar> grad;
    grad.family = Family::Plain;
    grad.t = sel.t;
    grad.estimate = m.value;
    grad.delta.resize(p.rows(), p.cols());
    for (Index i = 0; i < p.rows(); ++i) {
        for (Index j = 0; j < p.cols(); ++j) {
            const Scalar inA = sel.rowContains(i, j) ? Scalar(1) : Scalar(0);
            const Scalar inB = sel.marginalContains(j) ? Scalar(1) : Scalar(0);
            grad.delta(i, j) = scale * (inA - (Scalar(1) - m.value) * inB);
        }
    }
    return grad;
}

/// Delta^K_ij = [(b_i / a)(1{j in A_i} - b_i / 2) - (1 - lambda^K) 1{j in B}] / (1 - S_B).
template <typename Scalar>
GradientGrid<Scalar> gradientK(const ProbabilityTable<Scalar>& p, const TopKSelection<Scalar>& sel) {
    const auto m = measureFromSelection(p, sel, Family::K);
    GradientGrid<Scalar> grad;
    grad.family = Family::K;
    grad.t = sel.t;
    grad.estimate = m.value;
    grad.b = detail::rowHitRatios(p, sel);
    grad.a = detail::rmsHit(p, sel, grad.b);
    if (!(grad.a > Scalar(0))) {
        throw Error(ErrorCode::DegenerateRMS, "RMS hit rate is zero; the K gradient is undefined");
    }
    const Scalar scale = Scalar(1) / (p.total() - sel.marginalTopSum);
    grad.delta.resize(p.rows(), p.cols());
    for (Index i = 0; i < p.rows(); ++i) {
        const Scalar bi = grad.b(i);
        for (Index j = 0; j < p.cols(); ++j) {
            const Scalar inA = sel.rowContains(i, j) ? Scalar(1) : Scalar(0);
            const Scalar inB = sel.marginalContains(j) ? Scalar(1) : Scalar(0);
            grad.delta(i, j) = scale * (bi / grad.a * (inA - bi / Scalar(2)) - (Scalar(1) - m.value) * inB);
        }
    }
    return grad;
}

template <typename Scalar>
GradientGrid<Scalar> gradient(const ProbabilityTable<Scalar>& p, const TopKSelection<Scalar>& sel, Family family) {
    return family == Family::Plain ? gradientPlain(p, sel) : gradientK(p, sel);
}

/// sigma^2 = sum p_ij Delta_ij^2 - (sum p_ij Delta_ij)^2, with rounding
/// residue down to -1e-12 clamped to 0.
template <typename Scalar>
Scalar asymptoticVariance(const ProbabilityTable<Scalar>& p, const GradientGrid<Scalar>& grad) {
    const Scalar mean = (p.cells().array() * grad.delta.array()).sum();
    const Scalar second = (p.cells().array() * grad.delta.array().square()).sum();
    const Scalar variance = second - mean * mean;
    if (variance < Scalar(0) && variance >= Scalar(-1e-12)) {
        return Scalar(0);
    }
    return variance;
}

template <typename Scalar = double>
struct InferenceResult {
    MeasureResult<Scalar> measure;
    /// Asymptotic variance of sqrt(n) (estimate - lambda).
    Scalar sigma2{0};
    /// sigma / sqrt(n).
    Scalar stdError{0};
    /// Absent when the interval is degenerate.
    std::optional<Scalar> ciLow;
    std::optional<Scalar> ciHigh;
    Scalar alpha{0.05};
    /// Sample size the standard error refers to.
    Scalar n{0};
    /// Zero estimated standard error; no interval is reported.
    bool degenerate = false;
    /// A top-t selection was decided by a tie, where the measure is not differentiable.
    bool tieWarning = false;

    Scalar estimate() const noexcept { return measure.value; }
};

/// Variances at or below this are reported as a zero standard error.
inline constexpr double kDegenerateVariance = 1e-20;

/// Plug-in estimate, delta-method standard error and Wald interval from
/// sample proportions p and sample size n.
template <typename Scalar>
InferenceResult<Scalar> inferFromProportions(const ProbabilityTable<Scalar>& p, Scalar n, Family family, int t,
                                             Direction direction, Scalar alpha = Scalar(0.05)) {
    if (!(alpha > Scalar(0) && alpha < Scalar(1))) {
        throw Error(ErrorCode::BadAlpha, "alpha must lie in (0, 1), got " + std::to_string(static_cast<double>(alpha)));
    }
    if (direction == Direction::Symmetric) {
        throw Error(ErrorCode::DomainError, "intervals are available for asymmetric directions only");
    }
    const auto oriented = direction == Direction::XgivenY ? transpose(p) : p;
    const auto sel = selectTopK(oriented, t);
    const auto grad = gradient(oriented, sel, family);

    InferenceResult<Scalar> result;
    result.measure = measureFromSelection(oriented, sel, family);
    result.measure.direction = direction;
    result.alpha = alpha;
    result.n = n;
    result.tieWarning = sel.tieFlag;
    result.sigma2 = asymptoticVariance(oriented, grad);
    if (result.sigma2 <= Scalar(kDegenerateVariance)) {
        result.sigma2 = Scalar(0);
        result.degenerate = true;
        return result;
    }
    using std::sqrt;
    result.stdError = sqrt(result.sigma2 / n);
    const Scalar z = normalQuantile(Scalar(1) - alpha / Scalar(2));
    result.ciLow = result.measure.value - z * result.stdError;
    result.ciHigh = result.measure.value + z * result.stdError;
    return result;
}

/// Bounds are not clipped to [0, 1].
template <typename Scalar>
InferenceResult<Scalar> confidenceInterval(const ContingencyTable<Scalar>& table, Family family, int t,
                                           Direction direction = Direction::YgivenX, Scalar alpha = Scalar(0.05)) {
    if (!(alpha > Scalar(0) && alpha < Scalar(1))) {
        throw Error(ErrorCode::BadAlpha, "alpha must lie in (0, 1), got " + std::to_string(static_cast<double>(alpha)));
    }
    return inferFromProportions(normalize(table), table.total(), family, t, direction, alpha);
}

} // namespace lambdat
