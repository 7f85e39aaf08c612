#pragma once

#include "soliton/fields.hpp"

namespace soliton {

/// Diagonal pseudo-Euclidean signature: g_ij = delta_ij eps_i, eps_i = +-1.
/// Base dimension is required to be >= 3 throughout.
class Signature {
public:
    explicit Signature(std::vector<int> eps);

    static Signature riemannian(int n);
    static Signature lorentzian(int n);  // (-1, +1, ..., +1)

    int dim() const { return static_cast<int>(eps_.size()); }
    int eps(int i) const { return eps_[i]; }
    const std::vector<int>& entries() const { return eps_; }
    Signature flipped() const;

    bool operator==(const Signature&) const = default;

private:
    std::vector<int> eps_;
};

// Closed-form curvature of the conformally flat metric gbar = g / phi^2 on
// (R^n, g) pseudo-Euclidean. phi must be positive at the queried point; its
// derivatives come from the field's analytic channel when present, else
// from central finite differences with `scheme`.

/// Gbar^k_ij = -delta_kj phi_,i/phi - delta_ki phi_,j/phi + eps_i delta_ij eps_k phi_,k/phi.
Tensor3 conformal_christoffel(const Signature& sig, const ScalarField& phi,
                              const Point& x, const FDScheme& scheme = {});

/// Ricci of gbar:
///   off-diagonal  (n-2) phi_,ij / phi
///   diagonal      [(n-2) phi_,ii + eps_i sum_k eps_k phi_,kk] / phi
///                 - (n-1) eps_i sum_k eps_k phi_,k^2 / phi^2.
Matrix conformal_ricci(const Signature& sig, const ScalarField& phi,
                       const Point& x, const FDScheme& scheme = {});

/// Hessian of u with respect to gbar:
///   off-diagonal  u_,ij + (phi_,j/phi) u_,i + (phi_,i/phi) u_,j
///   diagonal      u_,ii + 2 (phi_,i/phi) u_,i - eps_i sum_k eps_k (phi_,k/phi) u_,k.
Matrix conformal_hessian(const Signature& sig, const ScalarField& phi,
                         const ScalarField& u, const Point& x, const FDScheme& scheme = {});

struct LaplacianGradSq {
    double laplacian;  // phi^2 sum eps_k u_,kk - (n-2) phi sum eps_k phi_,k u_,k
    double grad_sq;    // phi^2 sum eps_k u_,k^2
};

LaplacianGradSq conformal_laplacian_gradsq(const Signature& sig, const ScalarField& phi,
                                           const ScalarField& u, const Point& x,
                                           const FDScheme& scheme = {});

/// The metric field gbar = g/phi^2 itself, for FD cross-checks.
MetricField conformal_metric(const Signature& sig, const ScalarField& phi);

} // namespace soliton
