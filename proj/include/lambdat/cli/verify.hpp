#pragma once

#include "lambdat/table.hpp"

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lambdat::cli {

/// A published value and the computation that should reproduce it.
struct GoldenCheck {
    std::string id;
    std::string description;
    double expected = 0.0;
    /// Half a unit in the last printed digit.
    double tolerance = 0.0;
    std::function<double()> observe;
};

/// Reference tables used by the checks.
Grid<double> referenceTable1(char panel); // 'a', 'b' or 'c'
Grid<double> cannabisCounts();

/// Every published value the library reproduces: the 3x3 structure tables,
/// the 4x4 discretized normal tables and the cannabis survey analysis.
std::vector<GoldenCheck> publishedChecks();

struct VerifyOutcome {
    int passed = 0;
    int failed = 0;
};

/// Runs the checks, printing one PASS/FAIL line each.
VerifyOutcome runChecks(std::span<const GoldenCheck> checks, std::ostream& out);

} // namespace lambdat::cli
