#include "lambdat/simulation.hpp"

#include "lambdat/inference.hpp"

#include <algorithm>
#include <optional>
#include <thread>
#include <vector>

namespace lambdat {

namespace {

struct Replicate {
    bool defined = false;
    double estimate = 0.0;
    bool covered = false;
};

Replicate runReplicate(const ProbabilityTable<double>& p, const MonteCarloConfig& config, double truth,
                       std::uint64_t index) {
    auto gen = makeGenerator(config.seed, index);
    const auto sample = sampleMultinomial(p, config.sampleSize, gen);
    Replicate rep;
    try {
        const auto inf = confidenceInterval(sample, config.family, config.t, config.direction, config.alpha);
        rep.defined = true;
        rep.estimate = inf.estimate();
        rep.covered = !inf.degenerate && *inf.ciLow <= truth && truth <= *inf.ciHigh;
    } catch (const Error&) {
        rep.defined = false;
    }
    return rep;
}

} // namespace

MonteCarloSummary monteCarloStudy(const ProbabilityTable<double>& p, const MonteCarloConfig& config) {
    if (config.replications < 2) {
        throw Error(ErrorCode::DomainError, "Monte Carlo study needs at least 2 replications");
    }
    const auto population = inferFromProportions(p, static_cast<double>(config.sampleSize), config.family, config.t,
                                                 config.direction, config.alpha);
    MonteCarloSummary summary;
    summary.truth = population.estimate();
    summary.predictedVariance = population.sigma2 / static_cast<double>(config.sampleSize);
    summary.replications = config.replications;

    std::vector<Replicate> reps(static_cast<std::size_t>(config.replications));
    const unsigned workers = std::max(1u, config.workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t r = w; r < reps.size(); r += workers) {
                    reps[r] = runReplicate(p, config, summary.truth, r);
                }
            });
        }
    }

    // Reduction in replication order keeps results independent of the worker count.
    double sum = 0.0;
    int used = 0;
    int covered = 0;
    for (const auto& rep : reps) {
        if (!rep.defined) {
            ++summary.undefined;
            continue;
        }
        sum += rep.estimate;
        ++used;
        covered += rep.covered ? 1 : 0;
    }
    if (used < 2) {
        throw Error(ErrorCode::DegenerateMarginal, "fewer than two replications produced a defined measure");
    }
    summary.empiricalMean = sum / used;
    double ss = 0.0;
    for (const auto& rep : reps) {
        if (rep.defined) {
            ss += (rep.estimate - summary.empiricalMean) * (rep.estimate - summary.empiricalMean);
        }
    }
    summary.empiricalVariance = ss / (used - 1);
    summary.coverage = static_cast<double>(covered) / used;
    return summary;
}

} // namespace lambdat
