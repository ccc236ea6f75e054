#include "lambdat/bivariate.hpp"

#include "lambdat/error.hpp"
#include "lambdat/normal.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

namespace lambdat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Rule {
    std::span<const double> nodes;   // non-negative half of a symmetric rule
    std::span<const double> weights;
};

template <unsigned N>
Rule gaussLegendre() {
    using G = boost::math::quadrature::gauss<double, N>;
    return {std::span<const double>(G::abscissa().data(), G::abscissa().size()),
            std::span<const double>(G::weights().data(), G::weights().size())};
}

// Rule size grows with |rho| as in Genz (2004).
Rule ruleFor(double rho) {
    const double a = std::abs(rho);
    if (a < 0.3) {
        return gaussLegendre<6>();
    }
    if (a < 0.75) {
        return gaussLegendre<12>();
    }
    return gaussLegendre<20>();
}

// Upper orthant P(X > h, Y > k) for |rho| < 1, after Drezner & Wesolowsky
// (1990) with Genz's (2004) refinements.
double upperOrthant(double h, double k, double rho) {
    const Rule rule = ruleFor(rho);
    double hk = h * k;
    double bvn = 0.0;

    if (std::abs(rho) < 0.925) {
        const double hs = (h * h + k * k) / 2.0;
        const double asr = std::asin(rho);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double w = rule.weights[i];
            for (double sign : {-1.0, 1.0}) {
                if (rule.nodes[i] == 0.0 && sign > 0.0) {
                    continue;
                }
                const double sn = std::sin(asr * (sign * rule.nodes[i] + 1.0) / 2.0);
                bvn += w * std::exp((sn * hk - hs) / (1.0 - sn * sn));
            }
        }
        return bvn * asr / (2.0 * kTwoPi) + normalCdf(-h) * normalCdf(-k);
    }

    if (rho < 0.0) {
        k = -k;
        hk = -hk;
    }
    const double as = (1.0 - rho) * (1.0 + rho);
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 16.0;
    bvn = a * std::exp(-(bs / as + hk) / 2.0) *
          (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
    if (hk > -160.0) {
        const double b = std::sqrt(bs);
        bvn -= std::exp(-hk / 2.0) * std::sqrt(kTwoPi) * normalCdf(-b / a) * b *
               (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
    }
    a /= 2.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double w = rule.weights[i];
        for (double sign : {-1.0, 1.0}) {
            if (rule.nodes[i] == 0.0 && sign > 0.0) {
                continue;
            }
            const double xs = std::pow(a * (sign * rule.nodes[i] + 1.0), 2);
            const double rs = std::sqrt(1.0 - xs);
            const double asr = -(bs / xs + hk) / 2.0;
            if (asr > -100.0) {
                bvn += a * w * std::exp(asr) *
                       (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs - (1.0 + c * xs * (1.0 + d * xs)));
            }
        }
    }
    bvn = -bvn / kTwoPi;

    if (rho > 0.0) {
        return bvn + normalCdf(-std::max(h, k));
    }
    bvn = -bvn;
    if (k > h) {
        bvn += h < 0.0 ? normalCdf(k) - normalCdf(h) : normalCdf(-h) - normalCdf(-k);
    }
    return bvn;
}

bool isDegenerate(double rho) {
    return std::abs(rho) >= 1.0 - kDegenerateCorrelationGap;
}

void requireCorrelation(double rho) {
    if (!(std::abs(rho) <= 1.0)) {
        throw Error(ErrorCode::DomainError, "correlation must lie in [-1, 1], got " + std::to_string(rho));
    }
}

// Mass of the open-closed interval (lo, hi] of a standard normal.
double intervalMass(double lo, double hi) {
    if (!(hi > lo)) {
        return 0.0;
    }
    // Difference taken in the tail that keeps precision.
    if (lo >= 0.0) {
        return normalCdf(-lo) - normalCdf(-hi);
    }
    return normalCdf(hi) - normalCdf(lo);
}

} // namespace

double bivariateNormalCdf(double x, double y, double rho) {
    requireCorrelation(rho);
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (x == -inf || y == -inf) {
        return 0.0;
    }
    if (x == inf) {
        return normalCdf(y);
    }
    if (y == inf) {
        return normalCdf(x);
    }
    if (isDegenerate(rho)) {
        return rho > 0.0 ? normalCdf(std::min(x, y)) : intervalMass(-y, x);
    }
    return std::clamp(upperOrthant(-x, -y, rho), 0.0, 1.0);
}

double bvnRectangle(double x1, double x2, double y1, double y2, double rho) {
    if (!(x1 < x2) || !(y1 < y2)) {
        throw Error(ErrorCode::BadRectangle, "rectangle bounds must satisfy x1 < x2 and y1 < y2");
    }
    requireCorrelation(rho);
    if (isDegenerate(rho)) {
        if (rho > 0.0) {
            return intervalMass(std::max(x1, y1), std::min(x2, y2));
        }
        return intervalMass(std::max(x1, -y2), std::min(x2, -y1));
    }
    const double mass = bivariateNormalCdf(x2, y2, rho) - bivariateNormalCdf(x1, y2, rho) -
                        bivariateNormalCdf(x2, y1, rho) + bivariateNormalCdf(x1, y1, rho);
    return std::max(mass, 0.0);
}

} // namespace lambdat
