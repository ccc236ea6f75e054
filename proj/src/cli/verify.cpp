#include "lambdat/cli/verify.hpp"

#include "lambdat/inference.hpp"
#include "lambdat/measures.hpp"
#include "lambdat/normal_table.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace lambdat::cli {

Grid<double> referenceTable1(char panel) {
    Grid<double> p(3, 3);
    switch (panel) {
    case 'a':
        p << 0.30, 0.15, 0.05,
             0.18, 0.09, 0.03,
             0.12, 0.06, 0.02;
        break;
    case 'b':
        p << 0.30, 0.18, 0.02,
             0.20, 0.10, 0.00,
             0.10, 0.02, 0.08;
        break;
    case 'c':
        p << 0.30, 0.18, 0.02,
             0.18, 0.10, 0.02,
             0.12, 0.02, 0.06;
        break;
    default:
        throw Error(ErrorCode::DomainError, std::string("unknown reference panel '") + panel + "'");
    }
    return p;
}

// Alcohol consumption (rows) by cannabis use (never, once or twice, more often).
Grid<double> cannabisCounts() {
    Grid<double> n(4, 3);
    n << 204, 6, 1,
         211, 13, 5,
         357, 44, 38,
         92, 34, 49;
    return n;
}

namespace {

constexpr double kHalf2 = 5e-3;
constexpr double kHalf3 = 5e-4;
constexpr double kHalf4 = 5e-5;
constexpr double kHalf5 = 5e-6;

void addTable2(std::vector<GoldenCheck>& checks) {
    struct Row {
        char panel;
        double plain1, k1, plain2, k2;
    };
    const Row rows[] = {
        {'a', 0.0, 0.0, 0.0, 0.0},
        {'b', 0.0, 0.007, 0.6, 0.606},
        {'c', 0.0, 0.0, 0.4, 0.403},
    };
    for (const auto& row : rows) {
        const std::string prefix = std::string("structure.") + row.panel + ".";
        const char panel = row.panel;
        auto value = [panel](Family f, int t) {
            return measure(validateProbabilityTable(referenceTable1(panel)), f, t, Direction::YgivenX).value;
        };
        checks.push_back({prefix + "plain.t1", "lambda, structure table", row.plain1, kHalf3,
                          [value] { return value(Family::Plain, 1); }});
        checks.push_back({prefix + "k.t1", "lambda^K, structure table", row.k1, kHalf3,
                          [value] { return value(Family::K, 1); }});
        checks.push_back({prefix + "plain.t2", "lambda^(2), structure table", row.plain2, kHalf3,
                          [value] { return value(Family::Plain, 2); }});
        checks.push_back({prefix + "k.t2", "lambda^K(2), structure table", row.k2, kHalf3,
                          [value] { return value(Family::K, 2); }});
    }
    for (int j = 0; j < 3; ++j) {
        const double expected[] = {0.60, 0.30, 0.10};
        checks.push_back({"structure.a.colmarginal" + std::to_string(j + 1), "column marginal, independent table",
                          expected[j], kHalf2, [j] {
                              return validateProbabilityTable(referenceTable1('a')).colMarginals()(j);
                          }});
    }
}

void addTable3(std::vector<GoldenCheck>& checks) {
    Grid<double> rho0 = Grid<double>::Constant(4, 4, 0.0625);
    Grid<double> rho04(4, 4);
    rho04 << 0.1072, 0.0692, 0.0477, 0.0258,
             0.0692, 0.0698, 0.0632, 0.0477,
             0.0477, 0.0632, 0.0698, 0.0692,
             0.0258, 0.0477, 0.0692, 0.1072;
    Grid<double> rho1 = Grid<double>::Identity(4, 4) * 0.25;

    const std::pair<double, Grid<double>> panels[] = {{0.0, rho0}, {0.4, rho04}, {1.0, rho1}};
    for (const auto& [rho, expected] : panels) {
        for (Index i = 0; i < 4; ++i) {
            for (Index j = 0; j < 4; ++j) {
                std::ostringstream id;
                id << "normal4.rho" << rho << ".cell" << i + 1 << j + 1;
                const double r = rho;
                checks.push_back({id.str(), "discretized bivariate normal cell", expected(i, j), kHalf4, [r, i, j] {
                                      return buildNormalTable(NormalGridSpec::make(4, r))(i, j);
                                  }});
            }
        }
    }
}

void addTable5(std::vector<GoldenCheck>& checks) {
    const ContingencyTable<double> counts(cannabisCounts());
    checks.push_back({"cannabis.p11", "normalized cell (1,1)", 0.19355, kHalf5,
                      [counts] { return normalize(counts)(0, 0); }});

    auto ci = [counts](Family f, int t) { return confidenceInterval(counts, f, t, Direction::YgivenX, 0.05); };
    checks.push_back({"cannabis.plain.t1.estimate", "lambda estimate", 0.0, kHalf3,
                      [ci] { return ci(Family::Plain, 1).estimate(); }});
    checks.push_back({"cannabis.plain.t1.se", "lambda standard error", 0.0, kHalf3,
                      [ci] { return ci(Family::Plain, 1).stdError; }});
    checks.push_back({"cannabis.plain.t1.degenerate", "lambda interval omitted (1 = yes)", 1.0, 0.0,
                      [ci] { return ci(Family::Plain, 1).degenerate ? 1.0 : 0.0; }});

    struct Row {
        Family family;
        int t;
        double estimate, se, low, high;
        const char* name;
    };
    const Row rows[] = {
        {Family::K, 1, 0.070, 0.012, 0.047, 0.094, "lambda^K"},
        {Family::Plain, 2, 0.161, 0.090, -0.015, 0.337, "lambda^(2)"},
        {Family::K, 2, 0.186, 0.083, 0.024, 0.348, "lambda^K(2)"},
    };
    for (const auto& row : rows) {
        const std::string prefix =
            "cannabis." + std::string(toString(row.family)) + ".t" + std::to_string(row.t) + ".";
        const Family f = row.family;
        const int t = row.t;
        checks.push_back({prefix + "estimate", std::string(row.name) + " estimate", row.estimate, kHalf3,
                          [ci, f, t] { return ci(f, t).estimate(); }});
        checks.push_back({prefix + "se", std::string(row.name) + " standard error", row.se, kHalf3,
                          [ci, f, t] { return ci(f, t).stdError; }});
        checks.push_back({prefix + "ci_low", std::string(row.name) + " 95% lower bound", row.low, kHalf3,
                          [ci, f, t] { return ci(f, t).ciLow.value_or(NAN); }});
        checks.push_back({prefix + "ci_high", std::string(row.name) + " 95% upper bound", row.high, kHalf3,
                          [ci, f, t] { return ci(f, t).ciHigh.value_or(NAN); }});
    }
}

} // namespace

std::vector<GoldenCheck> publishedChecks() {
    std::vector<GoldenCheck> checks;
    addTable2(checks);
    addTable3(checks);
    addTable5(checks);
    return checks;
}

VerifyOutcome runChecks(std::span<const GoldenCheck> checks, std::ostream& out) {
    VerifyOutcome outcome;
    for (const auto& check : checks) {
        double observed = NAN;
        std::string failure;
        try {
            observed = check.observe();
        } catch (const Error& e) {
            failure = std::string(toString(e.code())) + ": " + e.what();
        }
        // 1e-12 absorbs binary representation of the printed decimal.
        const bool ok = failure.empty() && std::isfinite(observed) &&
                        std::abs(observed - check.expected) <= check.tolerance + 1e-12;
        ++(ok ? outcome.passed : outcome.failed);
        out << (ok ? "PASS " : "FAIL ") << std::left << std::setw(34) << check.id << std::right
            << " observed=" << std::setw(10) << std::fixed << std::setprecision(6) << observed
            << " expected=" << std::setw(10) << check.expected << " tol=" << std::scientific << std::setprecision(0)
            << check.tolerance << std::defaultfloat << "  " << check.description;
        if (!failure.empty()) {
            out << "  [" << failure << "]";
        }
        out << '\n';
    }
    out << outcome.passed << " passed, " << outcome.failed << " failed\n";
    return outcome;
}

} // namespace lambdat::cli
