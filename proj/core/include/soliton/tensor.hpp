#pragma once

#include "soliton/fields.hpp"

namespace soliton {

// Coordinate tensor calculus for black-box metric fields, built entirely on
// central finite differences. This is the independent cross-check path for
// every closed-form curvature formula in the library: it never looks at a
// field's analytic derivative channels.

/// Condition-number ceiling above which a metric matrix is rejected as
/// numerically singular instead of being regularized.
inline constexpr double kMaxMetricCondition = 1e12;

/// Central difference d(f)/dx_axis at x. Order 2 or 4 per scheme.
double fd_partial(const std::function<double(const Point&)>& f, const Point& x,
                  int axis, const FDScheme& scheme);
double fd_partial(const ScalarField& f, const Point& x, int axis, const FDScheme& scheme);

/// Central second difference d2(f)/dx_i dx_j.
double fd_second(const std::function<double(const Point&)>& f, const Point& x,
                 int i, int j, const FDScheme& scheme);

/// Inverse with condition check; throws SingularMetricError past the ceiling.
Matrix invert_metric(const Matrix& g, const Point& where);

/// Christoffel symbols G^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij),
/// symmetric in (i,j) by construction.
Tensor3 christoffel(const MetricField& metric, const Point& x, const FDScheme& scheme);

/// Ricci tensor R_ij = d_k G^k_ij - d_i G^k_kj + G^k_kl G^l_ij - G^k_il G^l_kj.
/// Symmetric only up to FD noise; returned as computed.
Matrix ricci(const MetricField& metric, const Point& x, const FDScheme& scheme);

/// Hessian of a scalar: Hess(h)_ij = h_,ij - G^k_ij h_,k  (FD partials).
Matrix hessian_fd(const ScalarField& h, const MetricField& metric, const Point& x,
                  const FDScheme& scheme);

/// Gradient-soliton defect Ric + Hess(h) - rho g at x; the zero matrix
/// exactly where (g, h, rho) satisfies the soliton equation.
Matrix soliton_residual_field(const MetricField& metric, const ScalarField& h,
                              double rho, const Point& x, const FDScheme& scheme);

} // namespace soliton
