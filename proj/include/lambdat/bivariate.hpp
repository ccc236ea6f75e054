#pragma once

namespace lambdat {

/// Correlations with |rho| >= 1 - kDegenerateCorrelationGap put all mass on
/// the line y = sign(rho) x and are evaluated analytically.
inline constexpr double kDegenerateCorrelationGap = 1e-12;

/// P(X <= x, Y <= y) for a standard bivariate normal with correlation rho.
/// Arguments may be infinite. Throws DomainError when |rho| > 1.
double bivariateNormalCdf(double x, double y, double rho);

/// P(x1 < X <= x2, y1 < Y <= y2) for a standard bivariate normal with
/// correlation rho; bounds may be +-infinity. Throws BadRectangle unless
/// x1 < x2 and y1 < y2.
double bvnRectangle(double x1, double x2, double y1, double y2, double rho);

} // namespace lambdat
