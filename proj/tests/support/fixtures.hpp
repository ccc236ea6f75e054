#pragma once

// Random table generators and independent reference computations shared by
// the unit and acceptance suites. Nothing here calls the library's selection
// or measure code.

#include "lambdat/table.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace lambdat::testing {

using Gen = std::mt19937_64;

inline Vector<double> dirichlet(Gen& gen, Index k, double concentration = 1.0) {
    std::gamma_distribution<double> gamma(concentration, 1.0);
    Vector<double> v(k);
    for (Index i = 0; i < k; ++i) {
        v(i) = gamma(gen);
    }
    return v / v.sum();
}

/// r x c table with Dirichlet(concentration) cells.
inline Grid<double> dirichletTable(Gen& gen, Index r, Index c, double concentration = 1.0) {
    const Vector<double> flat = dirichlet(gen, r * c, concentration);
    Grid<double> p(r, c);
    for (Index i = 0; i < r; ++i) {
        for (Index j = 0; j < c; ++j) {
            p(i, j) = flat(i * c + j);
        }
    }
    return p;
}

inline int uniformInt(Gen& gen, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
}

/// Sum of the t largest values by full descending sort.
inline double naiveTopSum(std::vector<double> values, int t) {
    std::sort(values.begin(), values.end(), std::greater<>());
    return std::accumulate(values.begin(), values.begin() + t, 0.0);
}

/// Largest sum over every t-subset of the values (all tie resolutions).
inline double bruteForceTopSum(const std::vector<double>& values, int t) {
    const int n = static_cast<int>(values.size());
    double best = -1.0;
    std::vector<int> pick(static_cast<std::size_t>(n), 0);
    std::fill(pick.end() - t, pick.end(), 1);
    do {
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            if (pick[static_cast<std::size_t>(k)]) {
                s += values[static_cast<std::size_t>(k)];
            }
        }
        best = std::max(best, s);
    } while (std::next_permutation(pick.begin(), pick.end()));
    return best;
}

struct NaiveMeasures {
    bool defined = false;
    double plain = 0.0;
    double k = 0.0;
};

/// Textbook evaluation of both families: rows sorted fully, the literal 1 as
/// the total, no clamping.
inline NaiveMeasures naiveMeasures(const Grid<double>& p, int t) {
    const Index r = p.rows();
    const Index c = p.cols();
    std::vector<double> col(static_cast<std::size_t>(c), 0.0);
    double sumTop = 0.0;
    double rms = 0.0;
    for (Index i = 0; i < r; ++i) {
        std::vector<double> row(static_cast<std::size_t>(c));
        double rowSum = 0.0;
        for (Index j = 0; j < c; ++j) {
            row[static_cast<std::size_t>(j)] = p(i, j);
            col[static_cast<std::size_t>(j)] += p(i, j);
            rowSum += p(i, j);
        }
        const double s = naiveTopSum(row, t);
        sumTop += s;
        if (rowSum > 0.0) {
            rms += s * s / rowSum;
        }
    }
    const double sb = naiveTopSum(col, t);
    NaiveMeasures m;
    if (1.0 - sb < 1e-12) {
        return m;
    }
    m.defined = true;
    m.plain = (sumTop - sb) / (1.0 - sb);
    m.k = (std::sqrt(rms) - sb) / (1.0 - sb);
    return m;
}

/// Goodman–Kruskal lambda(Y|X) straight from its definition.
inline double goodmanKruskal(const Grid<double>& p) {
    const double rowMaxSum = p.rowwise().maxCoeff().sum();
    const double colMax = p.colwise().sum().maxCoeff();
    return (rowMaxSum - colMax) / (1.0 - colMax);
}

/// Kvålseth's lambda^K(Y|X) straight from its definition.
inline double kvalseth(const Grid<double>& p) {
    double acc = 0.0;
    for (Index i = 0; i < p.rows(); ++i) {
        const double rowSum = p.row(i).sum();
        if (rowSum > 0.0) {
            acc += std::pow(p.row(i).maxCoeff(), 2) / rowSum;
        }
    }
    const double colMax = p.colwise().sum().maxCoeff();
    return (std::sqrt(acc) - colMax) / (1.0 - colMax);
}

/// Central difference of f along e_(i,j) - e_(k,l), which stays on the simplex.
inline double simplexDerivative(const std::function<double(const Grid<double>&)>& f, const Grid<double>& p,
                                Index i, Index j, Index k, Index l, double step = 1e-6) {
    Grid<double> plus = p;
    Grid<double> minus = p;
    plus(i, j) += step;
    plus(k, l) -= step;
    minus(i, j) -= step;
    minus(k, l) += step;
    return (f(plus) - f(minus)) / (2.0 * step);
}

/// Standard normal CDF inverted by bisection on erfc.
inline double bisectionQuantile(double u) {
    auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    double lo = -40.0;
    double hi = 40.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Composite trapezoid integral of the standard bivariate normal density over
/// [x1, x2] x [y1, y2] clipped to [-8, 8]^2.
inline double trapezoidRectangle(double x1, double x2, double y1, double y2, double rho, int nodes = 2001) {
    x1 = std::max(x1, -8.0);
    y1 = std::max(y1, -8.0);
    x2 = std::min(x2, 8.0);
    y2 = std::min(y2, 8.0);
    const double hx = (x2 - x1) / (nodes - 1);
    const double hy = (y2 - y1) / (nodes - 1);
    const double det = 1.0 - rho * rho;
    const double norm = 1.0 / (2.0 * M_PI * std::sqrt(det));
    double total = 0.0;
    for (int a = 0; a < nodes; ++a) {
        const double x = x1 + a * hx;
        const double wx = (a == 0 || a == nodes - 1) ? 0.5 : 1.0;
        for (int b = 0; b < nodes; ++b) {
            const double y = y1 + b * hy;
            const double wy = (b == 0 || b == nodes - 1) ? 0.5 : 1.0;
            total += wx * wy * std::exp(-(x * x - 2.0 * rho * x * y + y * y) / (2.0 * det));
        }
    }
    return total * norm * hx * hy;
}

/// Largest |p_ij - p_i+ p_+j|.
inline double independenceGap(const Grid<double>& p) {
    const Vector<double> rows = p.rowwise().sum();
    const Vector<double> cols = p.colwise().sum().transpose();
    return (p - rows * cols.transpose()).cwiseAbs().maxCoeff();
}

} // namespace lambdat::testing
