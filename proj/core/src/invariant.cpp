#include "soliton/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace soliton {

std::string to_string(Direction::Causal c) {
    return c == Direction::Causal::null ? "null" : "unit";
}

Direction classify_direction(const Signature& sig, const Vector& alpha) {
    if (alpha.size() != sig.dim())
        throw DomainError("classify_direction: alpha length must equal the base dimension");
    if (alpha.cwiseAbs().maxCoeff() == 0.0)
        throw DomainError("classify_direction: alpha must be nonzero");

    double q = 0.0;
    for (int i = 0; i < alpha.size(); ++i) q += sig.eps(i) * alpha[i] * alpha[i];

    Direction d;
    d.raw_norm_sq = q;
    if (std::abs(q) <= kNullTolerance) {
        d.causal = Direction::Causal::null;
        d.eps_i0 = 0;
        d.alpha = alpha;
    } else {
        d.causal = Direction::Causal::unit;
        d.eps_i0 = (q > 0.0) ? 1 : -1;
        d.alpha = alpha / std::sqrt(std::abs(q));
    }
    return d;
}

namespace {

struct TripleAt {
    double phi, dphi, d2phi;
    double f, df, d2f;
    double dh, d2h;
};

TripleAt eval_triple(const ProfileTriple& t, double xi) {
    TripleAt v;
    v.phi = t.phi.value(xi);
    v.dphi = t.phi.d1(xi);
    v.d2phi = t.phi.d2(xi);
    v.f = t.f.value(xi);
    v.df = t.f.d1(xi);
    v.d2f = t.f.d2(xi);
    v.dh = t.h.d1(xi);
    v.d2h = t.h.d2(xi);
    if (!(v.f > 0.0) || !(v.phi > 0.0))
        throw DomainError("invariant: f and phi must be positive at xi = " +
                          std::to_string(xi));
    return v;
}

double residual_one(const TripleAt& v, int n, int m) {
    return (n - 2) * v.f * v.d2phi + v.f * v.phi * v.d2h - m * v.phi * v.d2f -
           2.0 * m * v.dphi * v.df + 2.0 * v.f * v.dphi * v.dh;
}

double residual_two_raw(const TripleAt& v, int n, int m) {
    return v.f * v.phi * v.d2phi - (n - 1) * v.f * v.dphi * v.dphi +
           m * v.phi * v.dphi * v.df - v.f * v.phi * v.dphi * v.dh;
}

double residual_three_raw(const TripleAt& v, int n, int m) {
    double phi2 = v.phi * v.phi;
    return -v.f * phi2 * v.d2f + (n - 2) * v.f * v.phi * v.dphi * v.df -
           (m - 1) * phi2 * v.df * v.df + v.f * phi2 * v.df * v.dh;
}

} // namespace

double OdeResiduals::max_abs() const {
    return std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
}

OdeResiduals ode_residuals_unit(const SolitonConfig& config, const ProfileTriple& t,
                                double xi, int eps_i0) {
    if (eps_i0 != 1 && eps_i0 != -1)
        throw DomainError("ode_residuals_unit: eps_i0 must be +-1");
    TripleAt v = eval_triple(t, xi);
    OdeResiduals r;
    r.r1 = residual_one(v, config.n, config.m);
    r.r2 = eps_i0 * residual_two_raw(v, config.n, config.m) - config.rho * v.f;
    r.r3 = eps_i0 * residual_three_raw(v, config.n, config.m) -
           (config.rho * v.f * v.f - config.lambda_F);
    return r;
}

double ode_residual_null(const SolitonConfig& config, const ProfileTriple& t, double xi) {
    if (config.rho != 0.0 || config.lambda_F != 0.0)
        throw DomainError(
            "ode_residual_null: a null direction forces a steady soliton over a "
            "Ricci-flat fiber (rho = 0 and lambda_F = 0); got rho = " +
            std::to_string(config.rho) + ", lambda_F = " + std::to_string(config.lambda_F));
    TripleAt v = eval_triple(t, xi);
    return residual_one(v, config.n, config.m);
}

OdeResiduals ode_residuals_m1(const SolitonConfig& config, const ProfileTriple& t,
                              double xi, int eps_i0) {
    if (config.m != 1) throw DomainError("ode_residuals_m1: requires m = 1");
    TripleAt v = eval_triple(t, xi);
    OdeResiduals r;
    r.r1 = residual_one(v, config.n, 1);
    r.r2 = eps_i0 * residual_two_raw(v, config.n, 1) - config.rho * v.f;
    double phi2 = v.phi * v.phi;
    r.r3 = eps_i0 * (-phi2 * v.d2f + (config.n - 2) * v.phi * v.dphi * v.df +
                     phi2 * v.df * v.dh) -
           config.rho * v.f;
    return r;
}

double PhaseState::z() const {
    if (x == 0.0) throw DomainError("PhaseState: z undefined where x = 0");
    return y / x;
}

PhaseVelocity phase_rhs(const PhaseState& s, const SolitonConfig& config) {
    if (!(s.k > 0.0)) throw DomainError("phase_rhs: k must be positive");
    double coef = config.m + (config.n - 2) * s.k * s.k;
    return {s.x * s.y, coef * s.x * s.x - 2.0 * s.k * s.x * s.y};
}

double ray_slope(double k, int n, int m, bool plus) {
    double root = std::sqrt(m + (n - 1) * k * k);
    return plus ? (-k + root) : (-k - root);
}

PhasePath reduce_profiles(const SolitonConfig& config, const ProfileTriple& t, double k,
                          int samples) {
    if (!(k > 0.0)) throw DomainError("reduce_profiles: k must be positive");
    Interval in = t.domain.interior(0.01);
    const double ycoef = (config.n - 2) * k - config.m;

    PhasePath path;
    path.k = k;
    double max_dev = 0.0;
    for (int i = 0; i < samples; ++i) {
        double xi = in.lo + (in.hi - in.lo) * i / (samples - 1);
        TripleAt v = eval_triple(t, xi);
        double x = v.df / v.f;
        double u = v.dphi / v.phi;
        double scale = std::max(1.0, std::abs(k * x));
        max_dev = std::max(max_dev, std::abs(u - k * x) / scale);

        path.xi.push_back(xi);
        path.x.push_back(x);
        path.y.push_back(v.dh + ycoef * x);
        path.z.push_back(x != 0.0 ? path.y.back() / x
                                  : std::numeric_limits<double>::quiet_NaN());
    }
    path.max_proportionality_dev = max_dev;
    if (max_dev > kProportionalityTol) {
        std::ostringstream os;
        os << "reduce_profiles: triple violates phi'/phi = k f'/f (max deviation " << max_dev
           << ", tolerance " << kProportionalityTol << ")";
        throw DomainError(os.str());
    }
    return path;
}

double estimate_coupling(const ProfileTriple& t, int samples) {
    Interval in = t.domain.interior(0.01);
    std::vector<double> ratios;
    for (int i = 0; i < samples; ++i) {
        double xi = in.lo + (in.hi - in.lo) * i / (samples - 1);
        TripleAt v = eval_triple(t, xi);
        double x = v.df / v.f;
        if (std::abs(x) < 1e-10) continue;
        ratios.push_back((v.dphi / v.phi) / x);
    }
    if (ratios.empty())
        throw DomainError("estimate_coupling: f'/f vanishes on the whole sample set");
    std::sort(ratios.begin(), ratios.end());
    size_t mid = ratios.size() / 2;
    return ratios.size() % 2 ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);
}

double ConsistencyReport::max_dev() const {
    return std::max({max_offdiag_dev, max_diag_dev, max_fiber_dev});
}

WarpedData make_invariant_data(const SolitonConfig& config, const ProfileTriple& t,
                               const Direction& dir) {
    return WarpedData{config, pullback_field(t.phi, dir.alpha),
                      pullback_field(t.f, dir.alpha), pullback_field(t.h, dir.alpha)};
}

ConsistencyReport pde_ode_consistency(const SolitonConfig& config, const ProfileTriple& t,
                                      const Direction& dir, std::span<const Point> points) {
    WarpedData data = make_invariant_data(config, t, dir);
    const int n = config.n;
    ConsistencyReport rep;

    for (const Point& p : points) {
        double xi = dir.xi(p);
        if (!t.domain.contains(xi))
            throw DomainError("pde_ode_consistency: xi(point) outside the triple domain");

        PdeResiduals pr = pde_residuals(data, p);
        TripleAt v = eval_triple(t, xi);
        double r1 = residual_one(v, config.n, config.m);
        double r2_raw =
            dir.raw_norm_sq * residual_two_raw(v, config.n, config.m) - config.rho * v.f;
        double r3_raw = dir.raw_norm_sq * residual_three_raw(v, config.n, config.m) -
                        (config.rho * v.f * v.f - config.lambda_F);

        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                double expect = dir.alpha[i] * dir.alpha[j] * r1;
                rep.max_offdiag_dev =
                    std::max(rep.max_offdiag_dev, std::abs(pr.offdiag(i, j) - expect));
            }
            double expect_d =
                dir.alpha[i] * dir.alpha[i] * v.phi * r1 + config.sig.eps(i) * r2_raw;
            rep.max_diag_dev = std::max(rep.max_diag_dev, std::abs(pr.diag[i] - expect_d));
        }
        rep.max_fiber_dev = std::max(rep.max_fiber_dev, std::abs(pr.fiber - r3_raw));
        rep.max_pde_residual = std::max(rep.max_pde_residual, pr.max_abs());

        double ode_max = std::abs(r1);
        if (dir.causal == Direction::Causal::unit) {
            OdeResiduals ode = ode_residuals_unit(config, t, xi, dir.eps_i0);
            ode_max = ode.max_abs();
        }
        rep.max_ode_residual = std::max(rep.max_ode_residual, ode_max);
    }
    return rep;
}

std::vector<Point> sample_base_points(const Vector& alpha, double xi_lo, double xi_hi,
                                      int count, unsigned seed) {
    if (!(xi_lo < xi_hi)) throw DomainError("sample_base_points: empty xi range");
    if (count < 1) throw DomainError("sample_base_points: count must be positive");
    const int n = static_cast<int>(alpha.size());
    double alpha_sq = alpha.squaredNorm();  // Euclidean; positive for alpha != 0
    if (alpha_sq == 0.0) throw DomainError("sample_base_points: alpha must be nonzero");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    double margin = 0.05 * (xi_hi - xi_lo);
    std::uniform_real_distribution<double> xi_draw(xi_lo + margin, xi_hi - margin);

    std::vector<Point> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        Point x(n);
        for (int d = 0; d < n; ++d) x[d] = jitter(rng);
        double target = xi_draw(rng);
        double shift = (target - alpha.dot(x)) / alpha_sq;
        x += shift * alpha;
        pts.push_back(std::move(x));
    }
    return pts;
}

} // namespace soliton
