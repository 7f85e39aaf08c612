#include "soliton/conformal.hpp"

#include <cmath>

namespace soliton {

Signature::Signature(std::vector<int> eps) : eps_(std::move(eps)) {
    if (eps_.size() < 3)
        throw DomainError("Signature: base dimension must be >= 3");
    for (int e : eps_)
        if (e != 1 && e != -1)
            throw DomainError("Signature: entries must be +1 or -1");
}

Signature Signature::riemannian(int n) {
    return Signature(std::vector<int>(static_cast<size_t>(n), 1));
}

Signature Signature::lorentzian(int n) {
    std::vector<int> e(static_cast<size_t>(n), 1);
    e[0] = -1;
    return Signature(std::move(e));
}

Signature Signature::flipped() const {
    std::vector<int> e = eps_;
    for (int& v : e) v = -v;
    return Signature(std::move(e));
}

namespace {

struct PhiData {
    double phi;
    Vector grad;
    Matrix hess;
};

PhiData eval_phi(const Signature& sig, const ScalarField& phi, const Point& x,
                 const FDScheme& scheme, bool need_hess) {
    if (phi.dim() != sig.dim())
        throw DomainError("conformal: phi dimension does not match signature");
    PhiData d;
    d.phi = phi(x);
    if (!(d.phi > 0.0))
        throw DomainError("conformal: phi must be positive at " + format_point(x));
    d.grad = phi.gradient(x, scheme);
    if (need_hess) d.hess = phi.hessian(x, scheme);
    return d;
}

} // namespace

Tensor3 conformal_christoffel(const Signature& sig, const ScalarField& phi,
                              const Point& x, const FDScheme& scheme) {
    const int n = sig.dim();
    PhiData p = eval_phi(sig, phi, x, scheme, /*need_hess=*/false);
    Tensor3 gamma(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = 0.0;
                if (k == j) v -= p.grad[i] / p.phi;
                if (k == i) v -= p.grad[j] / p.phi;
                if (i == j) v += sig.eps(i) * sig.eps(k) * p.grad[k] / p.phi;
                gamma.at(k, i, j) = v;
            }
    return gamma;
}

Matrix conformal_ricci(const Signature& sig, const ScalarField& phi,
                       const Point& x, const FDScheme& scheme) {
    const int n = sig.dim();
    PhiData p = eval_phi(sig, phi, x, scheme, /*need_hess=*/true);

    double lap = 0.0, gradsq = 0.0;
    for (int k = 0; k < n; ++k) {
        lap += sig.eps(k) * p.hess(k, k);
        gradsq += sig.eps(k) * p.grad[k] * p.grad[k];
    }

    Matrix ric(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                ric(i, j) = (n - 2) * p.hess(i, j) / p.phi;
            } else {
                ric(i, i) = ((n - 2) * p.hess(i, i) + sig.eps(i) * lap) / p.phi -
                            (n - 1) * sig.eps(i) * gradsq / (p.phi * p.phi);
            }
        }
    return ric;
}

Matrix conformal_hessian(const Signature& sig, const ScalarField& phi,
                         const ScalarField& u, const Point& x, const FDScheme& scheme) {
    const int n = sig.dim();
    PhiData p = eval_phi(sig, phi, x, scheme, /*need_hess=*/false);
    Vector ug = u.gradient(x, scheme);
    Matrix uh = u.hessian(x, scheme);

    double cross = 0.0;  // sum_k eps_k (phi_,k/phi) u_,k
    for (int k = 0; k < n; ++k) cross += sig.eps(k) * p.grad[k] / p.phi * ug[k];

    Matrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j)
                out(i, j) = uh(i, j) + p.grad[j] / p.phi * ug[i] + p.grad[i] / p.phi * ug[j];
            else
                out(i, i) = uh(i, i) + 2.0 * p.grad[i] / p.phi * ug[i] - sig.eps(i) * cross;
        }
    return out;
}

LaplacianGradSq conformal_laplacian_gradsq(const Signature& sig, const ScalarField& phi,
                                           const ScalarField& u, const Point& x,
                                           const FDScheme& scheme) {
    const int n = sig.dim();
    PhiData p = eval_phi(sig, phi, x, scheme, /*need_hess=*/false);
    Vector ug = u.gradient(x, scheme);
    Matrix uh = u.hessian(x, scheme);

    double lap = 0.0, cross = 0.0, gradsq = 0.0;
    for (int k = 0; k < n; ++k) {
        lap += sig.eps(k) * uh(k, k);
        cross += sig.eps(k) * p.grad[k] * ug[k];
        gradsq += sig.eps(k) * ug[k] * ug[k];
    }
    double phi2 = p.phi * p.phi;
    return {phi2 * lap - (n - 2) * p.phi * cross, phi2 * gradsq};
}

MetricField conformal_metric(const Signature& sig, const ScalarField& phi) {
    const int n = sig.dim();
    return MetricField(n, [sig, phi, n](const Point& x) {
        double p = phi(x);
        if (!(p > 0.0))
            throw DomainError("conformal metric: phi must be positive at " + format_point(x));
        Matrix g = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) g(i, i) = sig.eps(i) / (p * p);
        return g;
    });
}

} // namespace soliton
