#pragma once

#include "lambdat/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lambdat {

/// Standard normal CDF, Phi(x) = erfc(-x / sqrt 2) / 2.
template <typename Scalar = double>
Scalar normalCdf(Scalar x) {
    using std::erfc;
    return Scalar(0.5) * erfc(-x / std::numbers::sqrt2_v<Scalar>);
}

template <typename Scalar = double>
Scalar normalPdf(Scalar x) {
    using std::exp;
    return exp(Scalar(-0.5) * x * x) * std::numbers::inv_sqrtpi_v<Scalar> / std::numbers::sqrt2_v<Scalar>;
}

/// Inverse standard normal CDF: Acklam's rational approximation followed by
/// one Halley step on the CDF.
template <typename Scalar = double>
Scalar normalQuantile(Scalar u) {
    if (!(u > Scalar(0) && u < Scalar(1))) {
        throw Error(ErrorCode::DomainError,
                    "normal quantile needs 0 < u < 1, got " + std::to_string(static_cast<double>(u)));
    }
    // Upper half by symmetry; 1 - u is exact for u >= 0.5.
    if (u > Scalar(0.5)) {
        return -normalQuantile(Scalar(1) - u);
    }

    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr Scalar lowBreak = Scalar(0.02425);

    using std::exp;
    using std::log;
    using std::sqrt;
    Scalar x;
    if (u < lowBreak) {
        const Scalar q = sqrt(Scalar(-2) * log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else {
        const Scalar q = u - Scalar(0.5);
        const Scalar r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    }

    const Scalar e = normalCdf(x) - u;
    const Scalar step = e * sqrt(Scalar(2) * std::numbers::pi_v<Scalar>) * exp(x * x / Scalar(2));
    return x - step / (Scalar(1) + x * step / Scalar(2));
}

} // namespace lambdat
