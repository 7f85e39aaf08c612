#pragma once

#include <span>

#include "soliton/conformal.hpp"
#include "soliton/fields.hpp"

namespace soliton {

/// Shared problem data: base dimension n >= 3 with signature, fiber
/// dimension m >= 1, soliton constant rho, fiber Einstein constant
/// lambda_F. A one-dimensional fiber forces lambda_F = 0.
struct SolitonConfig {
    int n;
    int m;
    Signature sig;
    double rho = 0.0;
    double lambda_F = 0.0;

    SolitonConfig(int n_, int m_, Signature sig_, double rho_ = 0.0, double lambda_F_ = 0.0);
};

/// The fields (phi, f, h) on the base, with f > 0 and phi > 0 where queried.
struct WarpedData {
    SolitonConfig config;
    ScalarField phi;
    ScalarField f;
    ScalarField h;
};

struct RicciBlocks {
    Matrix base;          // Ric_gbar - (m/f) Hess_gbar(f); mixed block is identically zero
    double fiber_scalar;  // coefficient of g_F in the fiber block
};

/// Ricci of the warped metric gtilde = gbar + f^2 g_F in block form. The
/// fiber scalar is
///   lambda_F - f phi^2 sum eps_k f_,kk + (n-2) f phi sum eps_k phi_,k f_,k
///            - (m-1) phi^2 sum eps_k f_,k^2.
RicciBlocks warped_ricci_blocks(const WarpedData& data, const Point& x,
                                const FDScheme& scheme = {});

/// Coefficient of g_F in Hess_gtilde(h) restricted to the fiber, for h a
/// function of the base only:  f phi^2 sum eps_k f_,k h_,k.
double fiber_hessian_scalar(const WarpedData& data, const Point& x,
                            const FDScheme& scheme = {});

/// Residuals of the coupled second-order system equivalent to the soliton
/// equation for gtilde with potential h. All components vanish at x iff the
/// soliton equation holds there.
struct PdeResiduals {
    Matrix offdiag;   // i != j equation; diagonal entries set to 0
    Vector diag;      // per-axis diagonal equation (LHS - RHS)
    double fiber;     // fiber equation (LHS - (rho f^2 - lambda_F))
    DerivChannel channel;

    double max_abs() const;
    /// Residuals divided by the local scale max(1, |rho| * |gtilde|_inf).
    PdeResiduals normalized(double scale) const;
};

PdeResiduals pde_residuals(const WarpedData& data, const Point& x,
                           const FDScheme& scheme = {});

/// Local normalization scale max(1, |rho| * |gtilde|_inf) at x.
double residual_scale(const WarpedData& data, const Point& x);

/// Concrete (n+m)-dimensional block metric with a flat torus fiber
/// (lambda_F must be 0): diag(eps_i / phi^2, ..., f^2, ..., f^2).
/// Coordinates are (x_1..x_n, u_1..u_m); phi, f read the base part.
MetricField block_metric(const WarpedData& data);

/// h extended to the product coordinates (constant along the fiber).
ScalarField block_potential(const WarpedData& data);

struct FiberCheckReport {
    double max_offdiag = 0.0;        // fiber block off-diagonal magnitude
    double max_anisotropy = 0.0;     // spread of diagonal entries around their mean
    std::vector<double> gamma;       // fitted proportionality scalar per grid point
    double max_deviation = 0.0;      // max of the two defects over the grid
    bool base_hessian_nonvanishing = false;  // some Hess_gbar(f) entry above noise
    bool hessian_test_inconclusive = false;  // all sampled Hessians vanished
};

/// FD check that the fiber block of Ric + Hess(h) - rho gtilde is a scalar
/// multiple of g_F at each (n+m)-dimensional grid point. Requires the
/// concrete flat-torus fiber, hence lambda_F = 0.
FiberCheckReport einstein_fiber_check(const WarpedData& data,
                                      std::span<const Point> grid,
                                      const FDScheme& scheme = {});

/// Default residual-sweep grid on [center - half, center + half]^dim:
/// a 7^dim lattice for dim <= 3, else 32 Halton points.
std::vector<Point> default_grid(int dim, const Point& center, double half);

} // namespace soliton
