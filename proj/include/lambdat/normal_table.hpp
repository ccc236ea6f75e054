#pragma once

#include "lambdat/measures.hpp"
#include "lambdat/table.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace lambdat {

/// Equal-probability discretization of a standard bivariate normal into an
/// r x r table: both margins are cut at the quantiles Phi^-1(k/r).
struct NormalGridSpec {
    int r = 0;
    double rho = 0.0;
    /// r - 1 strictly increasing cutpoints.
    std::vector<double> cutpoints;

    /// Throws TooFewCategories when r < 2 and DomainError when |rho| > 1.
    static NormalGridSpec make(int r, double rho);
};

/// Cell masses over the cutpoint grid (outer bins open to +-infinity),
/// rescaled by their sum so the result validates exactly.
ProbabilityTable<double> buildNormalTable(const NormalGridSpec& spec);

struct SweepValue {
    Family family = Family::Plain;
    int t = 1;
    double value = 0.0;
};

struct SweepRow {
    double rho = 0.0;
    /// Plain then K for t = 1..r-1.
    std::vector<SweepValue> values;
};

/// Evaluates both families at every order on buildNormalTable(r, rho) for each
/// rho in the grid (each in [0, 1]); rows keep the grid order.
std::vector<SweepRow> sweep(int r, std::span<const double> rhoGrid);

/// start, start + step, ... up to end inclusive (within 1e-9 of a step).
std::vector<double> makeRhoGrid(double start, double end, double step);

/// Header `rho,family,t,value`, one line per (rho, family, t).
void writeSweepCsv(std::ostream& out, std::span<const SweepRow> rows);

} // namespace lambdat
