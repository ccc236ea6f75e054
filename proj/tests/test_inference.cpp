#include "lambdat/cli/verify.hpp"
#include "lambdat/inference.hpp"
#include "lambdat/simulation.hpp"
#include "support/fixtures.hpp"
#include "support/gradient_check.hpp"

#include "support/doctest_lambdat.hpp"

using namespace lambdat;
using lambdat::cli::cannabisCounts;
using lambdat::cli::referenceTable1;
namespace lt = lambdat::testing;

namespace {

ErrorCode codeOf(const auto& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an lambdat::Error");
    return ErrorCode::DomainError;
}

const ContingencyTable<double>& cannabis() {
    static const ContingencyTable<double> table(cannabisCounts());
    return table;
}

// Diagonal-heavy table whose selections sit far from every tie at n = 5000.
ProbabilityTable<double> separatedTable() {
    Grid<double> g(3, 3);
    g << 0.35, 0.05, 0.02,
         0.06, 0.22, 0.02,
         0.02, 0.05, 0.21;
    return validateProbabilityTable(g);
}

} // namespace

TEST_SUITE("inference") {

TEST_CASE("gradient on the independent reference table vanishes") {
    const auto a = validateProbabilityTable(referenceTable1('a'));
    for (int t : {1, 2}) {
        const auto grad = gradientPlain(a, selectTopK(a, t));
        CHECK(grad.delta.cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(asymptoticVariance(a, grad) == 0.0);
    }
    const auto check = lt::checkGradient(referenceTable1('a'), Family::Plain, 1);
    CHECK(check.worst <= 1e-5);
}

TEST_CASE("plain gradient on the structured reference table") {
    const auto b = validateProbabilityTable(referenceTable1('b'));
    const auto grad = gradientPlain(b, selectTopK(b, 2));
    // Cell (3,3) is in row 3's top pair but outside the marginal top pair.
    CHECK(grad.delta(2, 2) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(grad.estimate == doctest::Approx(0.6).epsilon(1e-12));
    const auto check = lt::checkGradient(referenceTable1('b'), Family::Plain, 2, 1e-6, 1e-5);
    CHECK(check.directions == 7);
    CHECK(check.worst <= 1e-5);
    CHECK(lt::checkGradient(referenceTable1('b'), Family::K, 2, 1e-6, 1e-5).worst <= 1e-5);
}

TEST_CASE("K gradient on the uniform 2x2 table") {
    const auto u = validateProbabilityTable(Grid<double>::Constant(2, 2, 0.25));
    const auto grad = gradientK(u, selectTopK(u, 1));
    CHECK(grad.a == doctest::Approx(0.5).epsilon(1e-15));
    for (Index i = 0; i < 2; ++i) {
        for (Index j = 0; j < 2; ++j) {
            CHECK(grad.delta(i, j) == doctest::Approx(-0.5).epsilon(1e-12));
        }
    }
    CHECK(lt::checkGradient(u.cells(), Family::K, 1).worst <= 1e-5);
}

TEST_CASE("K gradient on a perfect diagonal table") {
    const auto d = validateProbabilityTable(Grid<double>(Grid<double>::Identity(3, 3) / 3.0));
    const auto sel = selectTopK(d, 1);
    const auto grad = gradientK(d, sel);
    CHECK(grad.estimate == 1.0);
    CHECK(grad.a == doctest::Approx(1.0).epsilon(1e-15));
    const double expected = 0.5 / (1.0 - sel.marginalTopSum);
    CHECK(grad.delta(1, 1) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(grad.delta(2, 2) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("K gradient needs a positive RMS hit rate") {
    // No valid table has a zero RMS hit rate; force one through the selection.
    const auto p = validateProbabilityTable(Grid<double>::Constant(2, 2, 0.25));
    auto sel = selectTopK(p, 1);
    sel.rowTopSums.setZero();
    CHECK(codeOf([&] { gradientK(p, sel); }) == ErrorCode::DegenerateRMS);
}

TEST_CASE("cannabis survey intervals") {
    struct Row {
        Family family;
        int t;
        double estimate, sigma2, se, low, high;
    };
    // Frozen from a 30-digit evaluation of the delta-method formulas.
    const Row rows[] = {
        {Family::K, 1, 0.07033569540897752, 0.14872189493714272, 0.011878651738014657, 0.0470539658176, 0.0936174250004},
        {Family::Plain, 2, 0.16129032258064516, 8.4832928662273095, 0.089714352020565434, -0.014546576276, 0.337127221437},
        {Family::K, 2, 0.1858594352851986, 7.2208401700214086, 0.08277011539147354, 0.0236329901217, 0.348085880449},
    };
    for (const auto& row : rows) {
        const auto inf = confidenceInterval(cannabis(), row.family, row.t);
        CHECK_FALSE(inf.degenerate);
        CHECK(inf.estimate() == doctest::Approx(row.estimate).epsilon(1e-12));
        CHECK(inf.sigma2 == doctest::Approx(row.sigma2).epsilon(1e-10));
        CHECK(inf.stdError == doctest::Approx(row.se).epsilon(1e-10));
        REQUIRE(inf.ciLow);
        REQUIRE(inf.ciHigh);
        CHECK(*inf.ciLow == doctest::Approx(row.low).epsilon(1e-10));
        CHECK(*inf.ciHigh == doctest::Approx(row.high).epsilon(1e-10));
        CHECK(inf.n == 1054.0);
    }

    const auto plain = confidenceInterval(cannabis(), Family::Plain, 1);
    CHECK(plain.estimate() == 0.0);
    CHECK(plain.stdError == 0.0);
    CHECK(plain.degenerate);
    CHECK_FALSE(plain.ciLow);
    CHECK_FALSE(plain.ciHigh);

    // Lower bound is left below zero.
    CHECK(*confidenceInterval(cannabis(), Family::Plain, 2).ciLow < 0.0);
}

TEST_CASE("normal quantile used for the interval") {
    const double oracle = lt::bisectionQuantile(0.975);
    CHECK(std::abs(oracle - 1.95996) <= 5e-6);
    CHECK(normalQuantile(0.975) == doctest::Approx(oracle).epsilon(1e-9));
    const auto inf = confidenceInterval(cannabis(), Family::K, 2, Direction::YgivenX, 0.10);
    const double z = lt::bisectionQuantile(0.95);
    CHECK(*inf.ciHigh - inf.estimate() == doctest::Approx(z * inf.stdError).epsilon(1e-9));
}

TEST_CASE("alpha must lie strictly inside (0, 1)") {
    for (double alpha : {0.0, 1.0, 1.5, -0.05}) {
        CHECK(codeOf([&] { confidenceInterval(cannabis(), Family::K, 1, Direction::YgivenX, alpha); }) ==
              ErrorCode::BadAlpha);
    }
}

TEST_CASE("x-given-y inference equals inference on the transposed counts") {
    const ContingencyTable<double> transposed(cannabisCounts().transpose());
    for (int t : {1, 2, 3}) {
        for (Family f : {Family::Plain, Family::K}) {
            const auto a = confidenceInterval(cannabis(), f, t, Direction::XgivenY);
            const auto b = confidenceInterval(transposed, f, t, Direction::YgivenX);
            CHECK(a.estimate() == b.estimate());
            CHECK(a.sigma2 == b.sigma2);
            CHECK(a.measure.direction == Direction::XgivenY);
        }
    }
}

TEST_CASE("tie warning follows the selection") {
    Grid<double> counts(2, 3);
    counts << 10, 10, 5, 3, 8, 4;
    const auto inf = confidenceInterval(ContingencyTable<double>(counts), Family::Plain, 1);
    CHECK(inf.tieWarning);
    CHECK_FALSE(confidenceInterval(cannabis(), Family::K, 2).tieWarning);
}

TEST_CASE("property: gradients match finite differences on tie-free tables") {
    lt::Gen gen(59);
    int checked = 0;
    while (checked < 300) {
        const Index r = lt::uniformInt(gen, 2, 6);
        const Index c = lt::uniformInt(gen, 2, 6);
        const Grid<double> g = lt::dirichletTable(gen, r, c);
        const int t = lt::uniformInt(gen, 1, static_cast<int>(c) - 1);
        if (!lt::tieFree(g, t)) {
            continue;
        }
        for (Family f : {Family::Plain, Family::K}) {
            const auto check = lt::checkGradient(g, f, t);
            REQUIRE(check.directions == r * c - 1);
            REQUIRE(check.worst <= 1e-5);
        }
        ++checked;
    }
}

TEST_CASE("property: variance is non-negative") {
    lt::Gen gen(61);
    for (int rep = 0; rep < 2000; ++rep) {
        const Index c = lt::uniformInt(gen, 2, 6);
        Grid<double> g = lt::dirichletTable(gen, lt::uniformInt(gen, 2, 6), c, rep % 2 ? 0.2 : 1.0);
        if (rep % 5 == 0) {
            g = (g * 20.0).array().round().matrix();
            if (g.sum() == 0.0) {
                continue;
            }
            g /= g.sum();
        }
        const auto p = validateProbabilityTable(g);
        for (int t = 1; t < c; ++t) {
            const auto sel = selectTopK(p, t);
            if (p.total() - sel.marginalTopSum <= 1e-9) {
                continue;
            }
            for (Family f : {Family::Plain, Family::K}) {
                REQUIRE(inferFromProportions(p, 100.0, f, t, Direction::YgivenX).sigma2 >= 0.0);
            }
        }
    }
}

TEST_CASE("property: rescaling counts") {
    lt::Gen gen(67);
    for (int rep = 0; rep < 300; ++rep) {
        const Index c = lt::uniformInt(gen, 2, 5);
        Grid<double> counts = (lt::dirichletTable(gen, lt::uniformInt(gen, 2, 5), c) * 500.0).array().round().matrix();
        counts(0, 0) += 1.0;
        const double scale = std::uniform_real_distribution<double>(0.1, 50.0)(gen);
        const ContingencyTable<double> base(counts);
        const ContingencyTable<double> scaled(Grid<double>(counts * scale));
        for (int t = 1; t < c; ++t) {
            for (Family f : {Family::Plain, Family::K}) {
                InferenceResult<double> a;
                try {
                    a = confidenceInterval(base, f, t);
                } catch (const Error& e) {
                    REQUIRE(e.code() == ErrorCode::DegenerateMarginal);
                    continue;
                }
                const auto b = confidenceInterval(scaled, f, t);
                REQUIRE(b.estimate() == doctest::Approx(a.estimate()).epsilon(1e-12));
                // At a tie, rounding in the rescaled marginals can flip the
                // selected index set, and the gradient with it.
                if (a.tieWarning || b.tieWarning) {
                    continue;
                }
                REQUIRE(b.sigma2 == doctest::Approx(a.sigma2).epsilon(1e-9));
                REQUIRE(b.stdError == doctest::Approx(a.stdError / std::sqrt(scale)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("rescaling by a power of two is exact, ties included") {
    Grid<double> counts(3, 3);
    counts << 10, 10, 5, 3, 8, 4, 7, 1, 12;
    const ContingencyTable<double> base(counts);
    const ContingencyTable<double> scaled(Grid<double>(counts * 8.0));
    for (int t : {1, 2}) {
        for (Family f : {Family::Plain, Family::K}) {
            const auto a = confidenceInterval(base, f, t);
            const auto b = confidenceInterval(scaled, f, t);
            CHECK(b.estimate() == a.estimate());
            CHECK(b.sigma2 == a.sigma2);
            CHECK(b.stdError == doctest::Approx(a.stdError / std::sqrt(8.0)).epsilon(1e-14));
        }
    }
}

TEST_CASE("Monte Carlo agrees with the delta method away from ties") {
    const auto p = separatedTable();
    for (int t : {1, 2}) {
        for (Family f : {Family::Plain, Family::K}) {
            MonteCarloConfig config;
            config.family = f;
            config.t = t;
            config.sampleSize = 5000;
            config.replications = 2000;
            config.workers = 4;
            const auto summary = monteCarloStudy(p, config);
            CAPTURE(t);
            CAPTURE(summary.varianceRatio());
            CAPTURE(summary.coverage);
            CHECK(summary.undefined == 0);
            CHECK(std::abs(summary.varianceRatio() - 1.0) <= 0.15);
            CHECK(summary.coverage >= 0.92);
            CHECK(summary.coverage <= 0.97);
            CHECK(std::abs(summary.empiricalMean - summary.truth) <= 4.0 * std::sqrt(summary.predictedVariance));
        }
    }
}

TEST_CASE("Monte Carlo results do not depend on the worker count") {
    const auto p = normalize(cannabis());
    MonteCarloConfig config;
    config.family = Family::K;
    config.t = 2;
    config.sampleSize = 800;
    config.replications = 300;
    config.seed = 99;
    config.workers = 1;
    const auto one = monteCarloStudy(p, config);
    config.workers = 5;
    const auto five = monteCarloStudy(p, config);
    CHECK(one.empiricalMean == five.empiricalMean);
    CHECK(one.empiricalVariance == five.empiricalVariance);
    CHECK(one.coverage == five.coverage);
    config.seed = 100;
    CHECK(monteCarloStudy(p, config).empiricalMean != one.empiricalMean);
}

} // TEST_SUITE
