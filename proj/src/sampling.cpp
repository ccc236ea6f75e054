#include "lambdat/sampling.hpp"

#include <algorithm>
#include <string>

namespace lambdat {

Generator makeGenerator(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Generator(seq);
}

ContingencyTable<double> sampleMultinomial(const ProbabilityTable<double>& p, std::int64_t n, Generator& gen) {
    if (n < 1) {
        throw Error(ErrorCode::DomainError, "sample size must be at least 1, got " + std::to_string(n));
    }
    Grid<double> counts = Grid<double>::Zero(p.rows(), p.cols());
    std::int64_t remaining = n;
    double remainingMass = p.total();
    // The last positive cell absorbs the remainder so zero cells stay empty.
    Index last = p.rows() * p.cols() - 1;
    while (last > 0 && p(last / p.cols(), last % p.cols()) <= 0.0) {
        --last;
    }
    for (Index k = 0; k <= last && remaining > 0; ++k) {
        const Index i = k / p.cols();
        const Index j = k % p.cols();
        if (k == last) {
            counts(i, j) = static_cast<double>(remaining);
            break;
        }
        const double q = remainingMass > 0.0 ? std::clamp(p(i, j) / remainingMass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::int64_t> draw(remaining, q);
        const std::int64_t x = draw(gen);
        counts(i, j) = static_cast<double>(x);
        remaining -= x;
        remainingMass -= p(i, j);
    }
    return ContingencyTable<double>(std::move(counts));
}

ContingencyTable<double> sampleMultinomial(const ProbabilityTable<double>& p, std::int64_t n, std::uint64_t seed) {
    auto gen = makeGenerator(seed);
    return sampleMultinomial(p, n, gen);
}

} // namespace lambdat
