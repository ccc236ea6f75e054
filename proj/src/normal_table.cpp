#include "lambdat/normal_table.hpp"

#include "lambdat/bivariate.hpp"
#include "lambdat/normal.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

namespace lambdat {

NormalGridSpec NormalGridSpec::make(int r, double rho) {
    if (r < 2) {
        throw Error(ErrorCode::TooFewCategories, "normal grid needs r >= 2, got " + std::to_string(r));
    }
    if (!(std::abs(rho) <= 1.0)) {
        throw Error(ErrorCode::DomainError, "correlation must lie in [-1, 1], got " + std::to_string(rho));
    }
    NormalGridSpec spec;
    spec.r = r;
    spec.rho = rho;
    spec.cutpoints.reserve(static_cast<std::size_t>(r - 1));
    for (int k = 1; k < r; ++k) {
        spec.cutpoints.push_back(normalQuantile(static_cast<double>(k) / r));
    }
    return spec;
}

ProbabilityTable<double> buildNormalTable(const NormalGridSpec& spec) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> edges;
    edges.reserve(spec.cutpoints.size() + 2);
    edges.push_back(-inf);
    edges.insert(edges.end(), spec.cutpoints.begin(), spec.cutpoints.end());
    edges.push_back(inf);

    const auto r = static_cast<Index>(spec.r);
    Grid<double> cells(r, r);
    for (Index i = 0; i < r; ++i) {
        for (Index j = 0; j < r; ++j) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            cells(i, j) = bvnRectangle(edges[ui], edges[ui + 1], edges[uj], edges[uj + 1], spec.rho);
        }
    }
    return validateProbabilityTable(cells / cells.sum());
}

std::vector<SweepRow> sweep(int r, std::span<const double> rhoGrid) {
    std::vector<SweepRow> rows;
    rows.reserve(rhoGrid.size());
    for (double rho : rhoGrid) {
        if (!(rho >= 0.0 && rho <= 1.0)) {
            throw Error(ErrorCode::DomainError, "sweep correlations must lie in [0, 1], got " + std::to_string(rho));
        }
        const auto table = buildNormalTable(NormalGridSpec::make(r, rho));
        SweepRow row;
        row.rho = rho;
        for (const auto& entry : measureProfile(table)) {
            if (entry.error) {
                throw Error(*entry.error, "sweep table at rho=" + std::to_string(rho) + " is degenerate at t=" +
                                              std::to_string(entry.t));
            }
            row.values.push_back({entry.family, entry.t, entry.result->value});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> makeRhoGrid(double start, double end, double step) {
    if (!(step > 0.0) || !(end >= start)) {
        throw Error(ErrorCode::DomainError, "rho grid needs step > 0 and end >= start");
    }
    const auto count = static_cast<long>(std::floor((end - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) {
        grid.push_back(std::min(start + static_cast<double>(k) * step, end));
    }
    return grid;
}

void writeSweepCsv(std::ostream& out, std::span<const SweepRow> rows) {
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << "rho,family,t,value\n";
    for (const auto& row : rows) {
        for (const auto& v : row.values) {
            out << std::setprecision(10) << std::defaultfloat << row.rho << ',' << toString(v.family) << ','
                << v.t << ',' << std::fixed << std::setprecision(12) << v.value << '\n';
        }
    }
    out.flags(flags);
    out.precision(precision);
}

} // namespace lambdat
