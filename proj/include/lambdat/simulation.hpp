#pragma once

#include "lambdat/measures.hpp"
#include "lambdat/sampling.hpp"
#include "lambdat/table.hpp"

#include <cstdint>

namespace lambdat {

struct MonteCarloConfig {
    Family family = Family::K;
    int t = 1;
    Direction direction = Direction::YgivenX;
    std::int64_t sampleSize = 1000;
    int replications = 1000;
    double alpha = 0.05;
    std::uint64_t seed = kDefaultSeed;
    /// Worker threads; replication r always uses stream r, so results do not
    /// depend on this value.
    unsigned workers = 1;
};

struct MonteCarloSummary {
    /// Measure on the generating table.
    double truth = 0.0;
    /// Delta-method prediction sigma^2 / n.
    double predictedVariance = 0.0;
    double empiricalMean = 0.0;
    /// Sample variance of the plug-in estimates (denominator count - 1).
    double empiricalVariance = 0.0;
    /// Share of usable replications whose interval contains the truth;
    /// degenerate intervals count as misses.
    double coverage = 0.0;
    int replications = 0;
    /// Replications where the measure was undefined and that were skipped.
    int undefined = 0;

    double varianceRatio() const { return empiricalVariance / predictedVariance; }
};

/// Repeated multinomial sampling from p: distribution of the plug-in estimator
/// and coverage of its Wald interval.
MonteCarloSummary monteCarloStudy(const ProbabilityTable<double>& p, const MonteCarloConfig& config);

} // namespace lambdat
