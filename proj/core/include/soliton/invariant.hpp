#pragma once

#include <span>

#include "soliton/profile.hpp"
#include "soliton/warped.hpp"

namespace soliton {

/// A translation-invariant direction xi(x) = sum_i alpha_i x_i, classified
/// by the causal type of alpha. Non-null directions are normalized so that
/// sum eps_i alpha_i^2 = +-1 (= eps_i0); null keeps alpha as given.
struct Direction {
    enum class Causal { unit, null };

    Vector alpha;
    Causal causal = Causal::unit;
    int eps_i0 = 0;              // +-1 for unit, 0 for null
    double raw_norm_sq = 0.0;    // sum eps_i alpha_i^2 before normalization

    double xi(const Point& x) const { return alpha.dot(x); }
};

std::string to_string(Direction::Causal c);

/// Tolerance for deciding |sum eps alpha^2| = 0 (null direction).
inline constexpr double kNullTolerance = 1e-12;

Direction classify_direction(const Signature& sig, const Vector& alpha);

/// Residuals of the reduced system for a unit direction (eps_i0 = +-1):
///   r1 = (n-2) f phi'' + f phi h'' - m phi f'' - 2m phi' f' + 2 f phi' h'
///   r2 = eps_i0 [f phi phi'' - (n-1) f phi'^2 + m phi phi' f' - f phi phi' h'] - rho f
///   r3 = eps_i0 [-f phi^2 f'' + (n-2) f phi phi' f' - (m-1) phi^2 f'^2
///                + f phi^2 f' h'] - (rho f^2 - lambda_F)
struct OdeResiduals {
    double r1, r2, r3;
    double max_abs() const;
};

OdeResiduals ode_residuals_unit(const SolitonConfig& config, const ProfileTriple& t,
                                double xi, int eps_i0);

/// Residual of the single null-direction equation (same expression as r1).
/// A null direction forces a steady soliton over a Ricci-flat fiber, so
/// rho != 0 or lambda_F != 0 is rejected outright.
double ode_residual_null(const SolitonConfig& config, const ProfileTriple& t, double xi);

/// One-dimensional-fiber forms: r1 and r2 keep the general expressions with
/// m = 1; the fiber equation collapses (after dividing by f > 0) to
///   eps_i0 [-phi^2 f'' + (n-2) phi phi' f' + phi^2 f' h'] - rho f.
OdeResiduals ode_residuals_m1(const SolitonConfig& config, const ProfileTriple& t,
                              double xi, int eps_i0);

/// Phase variables of the steady reduction under phi'/phi = k f'/f:
/// x = f'/f, y = h' + [(n-2)k - m] f'/f, z = y/x where x != 0.
struct PhaseState {
    double x;
    double y;
    double k;

    double z() const;
};

struct PhaseVelocity {
    double dx;  // x' = x y
    double dy;  // y' = [m + (n-2) k^2] x^2 - 2 k x y
};

PhaseVelocity phase_rhs(const PhaseState& s, const SolitonConfig& config);

/// Invariant-ray slopes N with N^2 + 2kN - (m + (n-2)k^2) = 0:
/// N = -k +- sqrt(m + (n-1) k^2).
double ray_slope(double k, int n, int m, bool plus);

struct PhasePath {
    std::vector<double> xi, x, y, z;
    double k;
    double max_proportionality_dev = 0.0;  // max |phi'/phi - k f'/f| / scale
};

/// Tolerance for the proportionality precondition phi'/phi = k f'/f.
inline constexpr double kProportionalityTol = 1e-8;

/// Reduce a triple to its phase path. Throws DomainError (reporting the max
/// deviation) if the triple is outside the proportional ansatz.
PhasePath reduce_profiles(const SolitonConfig& config, const ProfileTriple& t, double k,
                          int samples = 200);

/// Recover k as the median of (phi'/phi)/(f'/f) over interior samples,
/// skipping points with |f'/f| < 1e-10.
double estimate_coupling(const ProfileTriple& t, int samples = 200);

/// Base-point/ODE consistency: with fields pulled back along alpha, the
/// full residual system factorizes through the reduced one:
///   offdiag(i,j) = alpha_i alpha_j r1
///   diag(i)      = alpha_i^2 phi r1 + eps_i r2_raw
///   fiber        = r3_raw
/// where r2_raw, r3_raw use the raw sum eps alpha^2 of the direction.
struct ConsistencyReport {
    double max_offdiag_dev = 0.0;
    double max_diag_dev = 0.0;
    double max_fiber_dev = 0.0;
    double max_pde_residual = 0.0;
    double max_ode_residual = 0.0;

    double max_dev() const;
};

ConsistencyReport pde_ode_consistency(const SolitonConfig& config, const ProfileTriple& t,
                                      const Direction& dir, std::span<const Point> points);

/// WarpedData with phi, f, h pulled back along the direction.
WarpedData make_invariant_data(const SolitonConfig& config, const ProfileTriple& t,
                               const Direction& dir);

/// Deterministic base points with xi(x) inside [xi_lo, xi_hi] (with a small
/// interior margin), jittered in the transverse directions.
std::vector<Point> sample_base_points(const Vector& alpha, double xi_lo, double xi_hi,
                                      int count, unsigned seed);

} // namespace soliton
