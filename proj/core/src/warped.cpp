#include "soliton/warped.hpp"

#include <cmath>

#include "soliton/tensor.hpp"

namespace soliton {

SolitonConfig::SolitonConfig(int n_, int m_, Signature sig_, double rho_, double lambda_F_)
    : n(n_), m(m_), sig(std::move(sig_)), rho(rho_), lambda_F(lambda_F_) {
    if (n < 3) throw DomainError("SolitonConfig: base dimension n must be >= 3");
    if (m < 1) throw DomainError("SolitonConfig: fiber dimension m must be >= 1");
    if (sig.dim() != n) throw DomainError("SolitonConfig: signature length must equal n");
    if (m == 1 && lambda_F != 0.0)
        throw DomainError("SolitonConfig: a one-dimensional fiber forces lambda_F = 0");
}

namespace {

struct BaseData {
    double phi, f;
    Vector dphi, df, dh;
    Matrix d2phi, d2f, d2h;
};

BaseData eval_base(const WarpedData& data, const Point& x, const FDScheme& scheme) {
    BaseData b;
    b.phi = data.phi(x);
    b.f = data.f(x);
    if (!(b.f > 0.0))
        throw DomainError("warped: f must be positive at " + format_point(x));
    if (!(b.phi > 0.0))
        throw DomainError("warped: phi must be positive at " + format_point(x));
    b.dphi = data.phi.gradient(x, scheme);
    b.df = data.f.gradient(x, scheme);
    b.dh = data.h.gradient(x, scheme);
    b.d2phi = data.phi.hessian(x, scheme);
    b.d2f = data.f.hessian(x, scheme);
    b.d2h = data.h.hessian(x, scheme);
    return b;
}

DerivChannel combined_channel(const WarpedData& d) {
    bool analytic = d.phi.has_analytic() && d.f.has_analytic() && d.h.has_analytic();
    return analytic ? DerivChannel::analytic : DerivChannel::finite_difference;
}

} // namespace

RicciBlocks warped_ricci_blocks(const WarpedData& data, const Point& x,
                                const FDScheme& scheme) {
    const SolitonConfig& c = data.config;
    BaseData b = eval_base(data, x, scheme);

    Matrix base = conformal_ricci(c.sig, data.phi, x, scheme) -
                  (c.m / b.f) * conformal_hessian(c.sig, data.phi, data.f, x, scheme);

    double s_ff = 0.0, s_pf = 0.0, s_f2 = 0.0;
    for (int k = 0; k < c.n; ++k) {
        s_ff += c.sig.eps(k) * b.d2f(k, k);
        s_pf += c.sig.eps(k) * b.dphi[k] * b.df[k];
        s_f2 += c.sig.eps(k) * b.df[k] * b.df[k];
    }
    double phi2 = b.phi * b.phi;
    double fiber = c.lambda_F - b.f * phi2 * s_ff + (c.n - 2) * b.f * b.phi * s_pf -
                   (c.m - 1) * phi2 * s_f2;
    return {std::move(base), fiber};
}

double fiber_hessian_scalar(const WarpedData& data, const Point& x, const FDScheme& scheme) {
    const SolitonConfig& c = data.config;
    BaseData b = eval_base(data, x, scheme);
    double s = 0.0;
    for (int k = 0; k < c.n; ++k) s += c.sig.eps(k) * b.df[k] * b.dh[k];
    return b.f * b.phi * b.phi * s;
}

double PdeResiduals::max_abs() const {
    double m = std::abs(fiber);
    m = std::max(m, offdiag.cwiseAbs().maxCoeff());
    m = std::max(m, diag.cwiseAbs().maxCoeff());
    return m;
}

PdeResiduals PdeResiduals::normalized(double scale) const {
    PdeResiduals out = *this;
    out.offdiag /= scale;
    out.diag /= scale;
    out.fiber /= scale;
    return out;
}

PdeResiduals pde_residuals(const WarpedData& data, const Point& x, const FDScheme& scheme) {
    const SolitonConfig& c = data.config;
    const int n = c.n, m = c.m;
    BaseData b = eval_base(data, x, scheme);

    PdeResiduals r;
    r.channel = combined_channel(data);
    r.offdiag = Matrix::Zero(n, n);
    r.diag = Vector::Zero(n);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            r.offdiag(i, j) = (n - 2) * b.f * b.d2phi(i, j) + b.f * b.phi * b.d2h(i, j) -
                              m * b.phi * b.d2f(i, j) - m * b.dphi[i] * b.df[j] -
                              m * b.dphi[j] * b.df[i] + b.f * b.dphi[i] * b.dh[j] +
                              b.f * b.dphi[j] * b.dh[i];
        }

    // Shared sum in the diagonal equation.
    double s_diag = 0.0;
    for (int k = 0; k < n; ++k)
        s_diag += c.sig.eps(k) *
                  (b.f * b.phi * b.d2phi(k, k) - (n - 1) * b.f * b.dphi[k] * b.dphi[k] +
                   m * b.phi * b.dphi[k] * b.df[k] - b.f * b.phi * b.dphi[k] * b.dh[k]);

    for (int i = 0; i < n; ++i) {
        double bracket = (n - 2) * b.f * b.d2phi(i, i) + b.f * b.phi * b.d2h(i, i) -
                         m * b.phi * b.d2f(i, i) - 2.0 * m * b.dphi[i] * b.df[i] +
                         2.0 * b.f * b.dphi[i] * b.dh[i];
        r.diag[i] = b.phi * bracket + c.sig.eps(i) * s_diag - c.sig.eps(i) * c.rho * b.f;
    }

    double phi2 = b.phi * b.phi;
    double s_fib = 0.0;
    for (int k = 0; k < n; ++k)
        s_fib += c.sig.eps(k) *
                 (-b.f * phi2 * b.d2f(k, k) + (n - 2) * b.f * b.phi * b.df[k] * b.dphi[k] -
                  (m - 1) * phi2 * b.df[k] * b.df[k] + b.f * phi2 * b.df[k] * b.dh[k]);
    r.fiber = s_fib - (c.rho * b.f * b.f - c.lambda_F);
    return r;
}

double residual_scale(const WarpedData& data, const Point& x) {
    double phi = data.phi(x), f = data.f(x);
    double gmax = std::max(1.0 / (phi * phi), f * f);
    return std::max(1.0, std::abs(data.config.rho) * gmax);
}

MetricField block_metric(const WarpedData& data) {
    const SolitonConfig& c = data.config;
    if (c.lambda_F != 0.0)
        throw UnsupportedError(
            "block_metric: the concrete fiber is a flat torus, which requires lambda_F = 0; "
            "nonzero lambda_F is handled only through the abstract fiber path");
    const int n = c.n, m = c.m;
    ScalarField phi = data.phi, f = data.f;
    Signature sig = c.sig;
    return MetricField(n + m, [n, m, sig, phi, f](const Point& p) {
        Point xb = p.head(n);
        double pv = phi(xb), fv = f(xb);
        if (!(pv > 0.0) || !(fv > 0.0))
            throw DomainError("block_metric: phi and f must be positive at " +
                              format_point(xb));
        Matrix g = Matrix::Zero(n + m, n + m);
        for (int i = 0; i < n; ++i) g(i, i) = sig.eps(i) / (pv * pv);
        for (int a = 0; a < m; ++a) g(n + a, n + a) = fv * fv;
        return g;
    });
}

ScalarField block_potential(const WarpedData& data) {
    const int n = data.config.n, m = data.config.m;
    ScalarField h = data.h;
    return ScalarField(n + m, [n, h](const Point& p) { return h(p.head(n)); });
}

FiberCheckReport einstein_fiber_check(const WarpedData& data, std::span<const Point> grid,
                                      const FDScheme& scheme) {
    const SolitonConfig& c = data.config;
    MetricField g = block_metric(data);  // enforces the flat-torus mode
    ScalarField h = block_potential(data);
    const int n = c.n, m = c.m;

    FiberCheckReport rep;
    double hess_floor = 100.0 * scheme.step * scheme.step;
    for (const Point& p : grid) {
        if (p.size() != n + m)
            throw DomainError("einstein_fiber_check: grid points must have dim n + m");
        Matrix t = soliton_residual_field(g, h, c.rho, p, scheme);

        double trace = 0.0;
        for (int a = 0; a < m; ++a) trace += t(n + a, n + a);
        double gamma = trace / m;
        rep.gamma.push_back(gamma);
        for (int a = 0; a < m; ++a) {
            rep.max_anisotropy = std::max(rep.max_anisotropy, std::abs(t(n + a, n + a) - gamma));
            for (int bidx = 0; bidx < m; ++bidx)
                if (a != bidx)
                    rep.max_offdiag = std::max(rep.max_offdiag, std::abs(t(n + a, n + bidx)));
        }

        Matrix hf = conformal_hessian(c.sig, data.phi, data.f, p.head(n), scheme);
        if (hf.cwiseAbs().maxCoeff() > hess_floor) rep.base_hessian_nonvanishing = true;
    }
    rep.max_deviation = std::max(rep.max_offdiag, rep.max_anisotropy);
    rep.hessian_test_inconclusive = !rep.base_hessian_nonvanishing;
    return rep;
}

namespace {

double halton(unsigned long index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

} // namespace

std::vector<Point> default_grid(int dim, const Point& center, double half) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    std::vector<Point> pts;
    if (dim <= 3) {
        int counts = 1;
        for (int d = 0; d < dim; ++d) counts *= 7;
        for (int idx = 0; idx < counts; ++idx) {
            Point p(dim);
            int rem = idx;
            for (int d = 0; d < dim; ++d) {
                int q = rem % 7;
                rem /= 7;
                p[d] = center[d] - half + 2.0 * half * q / 6.0;
            }
            pts.push_back(std::move(p));
        }
    } else {
        for (unsigned long idx = 1; idx <= 32; ++idx) {
            Point p(dim);
            for (int d = 0; d < dim; ++d)
                p[d] = center[d] - half + 2.0 * half * halton(idx, primes[d % 16]);
            pts.push_back(std::move(p));
        }
    }
    return pts;
}

} // namespace soliton
