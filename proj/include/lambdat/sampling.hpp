#pragma once

#include "lambdat/table.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace lambdat {

/// Pseudo-random engine used for all sampling. Independent streams are derived
/// by seeding through std::seed_seq with (seed, stream).
using Generator = std::mt19937_64;

inline constexpr std::string_view kGeneratorName = "mt19937_64";
inline constexpr std::uint64_t kDefaultSeed = 20250117;

Generator makeGenerator(std::uint64_t seed, std::uint64_t stream = 0);

/// Multinomial(n, p) draw over the cells of p via sequential conditional
/// binomials in row-major order.
ContingencyTable<double> sampleMultinomial(const ProbabilityTable<double>& p, std::int64_t n, Generator& gen);

ContingencyTable<double> sampleMultinomial(const ProbabilityTable<double>& p, std::int64_t n,
                                           std::uint64_t seed = kDefaultSeed);

} // namespace lambdat
