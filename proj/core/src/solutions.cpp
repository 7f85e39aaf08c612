#include "soliton/solutions.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "soliton/ode.hpp"
#include "soliton/quadrature.hpp"

namespace soliton {

// ---------------------------------------------------------------------------
// Power-law family

double branch_root(double k, int n, int m, Branch branch) {
    if (!(k > 0.0)) throw DomainError("branch_root: k must be positive");
    double root = std::sqrt(m + (n - 1) * k * k);
    return branch == Branch::plus ? (-k + root) : (-k - root);
}

ProfileTriple build_power_law(const SolitonConfig& config, const PowerLawParams& p) {
    if (!(p.k > 0.0 && p.c1 > 0.0 && p.c2 > 0.0))
        throw DomainError("power-law family: k, c1, c2 must be positive");

    const double N = branch_root(p.k, config.n, config.m, p.branch);
    const double b = p.b;
    Interval dom = (N > 0.0) ? Interval{-b / N, 1e300} : Interval{-1e300, -b / N};

    auto w = [N, b](double xi) { return N * xi + b; };
    const double pe = -p.k / N;  // phi exponent
    const double fe = -1.0 / N;  // f exponent
    const double hc = (config.m - (config.n - 2) * p.k + N) / N;

    ScalarProfile phi(
        [c2 = p.c2, w, pe](double xi) { return c2 * std::pow(w(xi), pe); },
        [c2 = p.c2, w, pe, N](double xi) { return c2 * pe * N * std::pow(w(xi), pe - 1.0); },
        [c2 = p.c2, w, pe, N](double xi) {
            return c2 * pe * (pe - 1.0) * N * N * std::pow(w(xi), pe - 2.0);
        },
        dom);
    ScalarProfile f(
        [c1 = p.c1, w, fe](double xi) { return c1 * std::pow(w(xi), fe); },
        [c1 = p.c1, w, fe, N](double xi) { return c1 * fe * N * std::pow(w(xi), fe - 1.0); },
        [c1 = p.c1, w, fe, N](double xi) {
            return c1 * fe * (fe - 1.0) * N * N * std::pow(w(xi), fe - 2.0);
        },
        dom);
    ScalarProfile h([hc, w](double xi) { return -hc * std::log(w(xi)); },
                    [hc, w, N](double xi) { return -hc * N / w(xi); },
                    [hc, w, N](double xi) { return hc * N * N / (w(xi) * w(xi)); }, dom);

    return ProfileTriple{std::move(phi), std::move(f), std::move(h), dom, p.k};
}

// ---------------------------------------------------------------------------
// Phase-flow family

namespace {

struct PhaseFlowSeries {
    HermiteSeries z, lnf, lnphi, h;
    double k, c3, a, root_plus, root_minus;
    int n, m;
    double sign;  // +1 printed orientation, -1 mirrored

    double x_of_z(double zv) const {
        return sign * c3 * std::pow(zv - root_plus, 0.5 * (a - 1.0)) *
               std::pow(zv - root_minus, -0.5 * (a + 1.0));
    }
    double dz(double zv) const {
        // z' = -x (z - N+)(z - N-), equal to the printed closed form.
        return -x_of_z(zv) * (zv - root_plus) * (zv - root_minus);
    }
};

} // namespace

PhaseFlowResult build_phase_flow(const SolitonConfig& config, const PhaseFlowParams& p,
                                 Interval span) {
    span.validate();
    if (!(p.k > 0.0 && p.c3 > 0.0))
        throw DomainError("phase-flow family: k, c3 must be positive");
    if (!(p.f0 > 0.0 && p.phi0 > 0.0))
        throw DomainError("phase-flow family: f0, phi0 must be positive");
    if (!(span.lo <= p.xi0 && p.xi0 <= span.hi))
        throw DomainError("phase-flow family: xi0 must lie inside the span");

    const int n = config.n, m = config.m;
    const double S = std::sqrt(m + (n - 1) * p.k * p.k);
    const double a = p.k / S;
    const double root_plus = -p.k + S, root_minus = -p.k - S;

    if (std::abs(p.z0 - root_plus) < 1e-12 || std::abs(p.z0 - root_minus) < 1e-12)
        throw DomainError("phase-flow family: z0 is an equilibrium root of "
                          "z^2 + 2kz - (m + (n-2)k^2); the ray family covers it");
    if (!(p.z0 > root_plus))
        throw UnsupportedError(
            "phase-flow family: supported region is z0 > -k + sqrt(m + (n-1)k^2), where "
            "both power-law factors are positive");

    auto shared = std::make_shared<PhaseFlowSeries>();
    shared->k = p.k;
    shared->c3 = p.c3;
    shared->a = a;
    shared->root_plus = root_plus;
    shared->root_minus = root_minus;
    shared->n = n;
    shared->m = m;
    shared->sign = p.reverse_orientation ? -1.0 : 1.0;

    const double hcoef = m - p.k * (n - 2);
    auto rhs = [&sh = *shared, hcoef](double, const Eigen::VectorXd& y) {
        double zv = y[0];
        double x = sh.x_of_z(zv);
        Eigen::VectorXd d(4);
        d[0] = sh.dz(zv);
        d[1] = x;             // (ln f)'
        d[2] = sh.k * x;      // (ln phi)'
        d[3] = (zv + hcoef) * x;
        return d;
    };

    // Stop before the z -> N+ equilibrium where x blows up.
    const double z_guard = root_plus + std::max(1e-8, 1e-6 * (p.z0 - root_plus));
    auto stop = [z_guard](double, const Eigen::VectorXd& y) { return y[0] <= z_guard; };

    OdeOptions opt;
    opt.rel_tol = p.rel_tol;
    opt.abs_tol = p.abs_tol;
    opt.max_step = std::max(1e-6, span.width() / 400.0);

    Eigen::VectorXd y0(4);
    y0 << p.z0, std::log(p.f0), std::log(p.phi0), p.h0;

    PhaseFlowResult result;
    std::vector<double> xs;
    std::vector<Eigen::VectorXd> ys;

    OdeSolution fwd = integrate_dopri5(rhs, p.xi0, span.hi, y0, opt, stop);
    result.truncated_hi = fwd.truncated;
    OdeSolution bwd = integrate_dopri5(rhs, p.xi0, span.lo, y0, opt, stop);
    result.truncated_lo = bwd.truncated;

    for (size_t i = bwd.t.size(); i-- > 1;) {
        xs.push_back(bwd.t[i]);
        ys.push_back(bwd.y[i]);
    }
    for (size_t i = 0; i < fwd.t.size(); ++i) {
        xs.push_back(fwd.t[i]);
        ys.push_back(fwd.y[i]);
    }
    if (xs.size() < 2)
        throw NumericError("phase-flow family: integration produced no usable span");

    std::vector<double> zv, lnf, lnphi, hv, dzv, dlnf, dlnphi, dhv;
    for (size_t i = 0; i < xs.size(); ++i) {
        double z = ys[i][0];
        double x = shared->x_of_z(z);
        zv.push_back(z);
        lnf.push_back(ys[i][1]);
        lnphi.push_back(ys[i][2]);
        hv.push_back(ys[i][3]);
        dzv.push_back(shared->dz(z));
        dlnf.push_back(x);
        dlnphi.push_back(p.k * x);
        dhv.push_back((z + hcoef) * x);
    }
    shared->z = HermiteSeries(xs, zv, dzv);
    shared->lnf = HermiteSeries(xs, lnf, dlnf);
    shared->lnphi = HermiteSeries(xs, lnphi, dlnphi);
    shared->h = HermiteSeries(xs, hv, dhv);

    Interval dom{xs.front(), xs.back()};
    if (result.truncated_lo || result.truncated_hi) {
        std::ostringstream os;
        os << "domain truncated to (" << dom.lo << ", " << dom.hi
           << ") before reaching the z equilibrium at " << root_plus;
        result.note = os.str();
    }

    // All derivative channels are algebraic in (z, value); nothing below
    // differentiates an interpolant.
    auto sh = shared;
    ScalarProfile f(
        [sh](double xi) { return std::exp(sh->lnf.eval(xi)); },
        [sh](double xi) {
            double x = sh->x_of_z(sh->z.eval(xi));
            return std::exp(sh->lnf.eval(xi)) * x;
        },
        [sh](double xi) {
            double z = sh->z.eval(xi);
            double x = sh->x_of_z(z);
            return std::exp(sh->lnf.eval(xi)) * x * x * (1.0 + z);
        },
        dom);
    ScalarProfile phi(
        [sh](double xi) { return std::exp(sh->lnphi.eval(xi)); },
        [sh](double xi) {
            double x = sh->x_of_z(sh->z.eval(xi));
            return std::exp(sh->lnphi.eval(xi)) * sh->k * x;
        },
        [sh](double xi) {
            double z = sh->z.eval(xi);
            double x = sh->x_of_z(z);
            return std::exp(sh->lnphi.eval(xi)) * sh->k * x * x * (sh->k + z);
        },
        dom);
    ScalarProfile h(
        [sh](double xi) { return sh->h.eval(xi); },
        [sh, hcoef](double xi) {
            double z = sh->z.eval(xi);
            return (z + hcoef) * sh->x_of_z(z);
        },
        [sh, hcoef](double xi) {
            double z = sh->z.eval(xi);
            double x = sh->x_of_z(z);
            double dz = sh->dz(z);
            return dz * x + (z + hcoef) * x * x * z;
        },
        dom);

    result.triple = ProfileTriple{std::move(phi), std::move(f), std::move(h), dom, p.k};
    return result;
}

// ---------------------------------------------------------------------------
// Null-direction family

ScalarProfile exp_profile(double scale, double rate, Interval domain) {
    if (!(scale > 0.0)) throw DomainError("exp_profile: scale must be positive");
    return ScalarProfile(
        [scale, rate](double xi) { return scale * std::exp(rate * xi); },
        [scale, rate](double xi) { return scale * rate * std::exp(rate * xi); },
        [scale, rate](double xi) { return scale * rate * rate * std::exp(rate * xi); },
        domain);
}

ScalarProfile gaussian_profile(Interval domain) {
    return ScalarProfile(
        [](double xi) { return std::exp(-xi * xi); },
        [](double xi) { return -2.0 * xi * std::exp(-xi * xi); },
        [](double xi) { return (4.0 * xi * xi - 2.0) * std::exp(-xi * xi); }, domain);
}

namespace {

struct NullSeries {
    HermiteSeries inner;  // c4 + cumulative integral of G, slopes G
    HermiteSeries hval;   // c5 + cumulative integral of phi^-2 * inner, slopes h'
};

} // namespace

ProfileTriple build_null_family(const SolitonConfig& config, const NullFamilyParams& p) {
    p.domain.validate();
    if (!(p.anchor >= p.domain.lo && p.anchor <= p.domain.hi))
        throw DomainError("null family: anchor must lie inside the domain");
    // Quadrature nodes sit on the closed build interval, so the input
    // profiles must extend strictly past it.
    if (!p.phi.domain().contains(p.domain.lo) || !p.phi.domain().contains(p.domain.hi) ||
        !p.f.domain().contains(p.domain.lo) || !p.f.domain().contains(p.domain.hi))
        throw DomainError("null family: phi and f must be defined on an interval "
                          "strictly containing the build domain");

    const int n = config.n, m = config.m;
    ScalarProfile phi = p.phi, f = p.f;

    auto G = [phi, f, n, m](double xi) {
        double pv = phi.value(xi), p1 = phi.d1(xi), p2 = phi.d2(xi);
        double fv = f.value(xi), f1 = f.d1(xi), f2 = f.d2(xi);
        if (!(pv > 0.0) || !(fv > 0.0))
            throw DomainError("null family: phi, f must be positive at xi = " +
                              std::to_string(xi));
        return m * (f2 / fv) * pv * pv + 2.0 * m * pv * p1 * (f1 / fv) -
               (n - 2) * pv * p2;
    };

    // Node layout: uniform, anchored so `anchor` is a node.
    const double width = p.domain.width();
    const double target = std::min(0.008, width / 256.0);
    auto nodes_one_side = [&](double from, double to) {
        std::vector<double> out;
        int count = std::max(1, static_cast<int>(std::ceil(std::abs(to - from) / target)));
        for (int i = 1; i <= count; ++i) out.push_back(from + (to - from) * i / count);
        return out;
    };

    std::vector<double> nodes{p.anchor};
    for (double v : nodes_one_side(p.anchor, p.domain.hi)) nodes.push_back(v);
    for (double v : nodes_one_side(p.anchor, p.domain.lo)) nodes.push_back(v);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    size_t anchor_idx =
        static_cast<size_t>(std::lower_bound(nodes.begin(), nodes.end(), p.anchor) -
                            nodes.begin());

    // Inner integral I = c4 + int_anchor^xi G, accumulated over segments.
    std::vector<double> ival(nodes.size(), 0.0), islope(nodes.size(), 0.0);
    ival[anchor_idx] = p.c4;
    for (size_t i = 0; i < nodes.size(); ++i) islope[i] = G(nodes[i]);
    for (size_t i = anchor_idx + 1; i < nodes.size(); ++i) {
        double seg = std::abs(nodes[i] - nodes[i - 1]);
        ival[i] = ival[i - 1] +
                  integrate_adaptive(G, nodes[i - 1], nodes[i], p.inner_tol * seg / width);
    }
    for (size_t i = anchor_idx; i-- > 0;) {
        double seg = std::abs(nodes[i + 1] - nodes[i]);
        ival[i] = ival[i + 1] -
                  integrate_adaptive(G, nodes[i], nodes[i + 1], p.inner_tol * seg / width);
    }

    // Outer integral with the true nested inner value at every quadrature
    // abscissa (anchored at the nearest node to keep the inner spans short).
    auto inner_at = [&](size_t seg_idx, double s) {
        double base = ival[seg_idx];
        double from = nodes[seg_idx];
        return base + integrate_adaptive(G, from, s, p.inner_tol * target / width);
    };
    auto hprime_at = [&](size_t seg_idx, double s) {
        double pv = phi.value(s);
        return inner_at(seg_idx, s) / (pv * pv);
    };

    std::vector<double> hval(nodes.size(), 0.0), hslope(nodes.size(), 0.0);
    hval[anchor_idx] = p.c5;
    for (size_t i = 0; i < nodes.size(); ++i) {
        double pv = phi.value(nodes[i]);
        hslope[i] = ival[i] / (pv * pv);
    }
    for (size_t i = anchor_idx + 1; i < nodes.size(); ++i) {
        double seg = std::abs(nodes[i] - nodes[i - 1]);
        auto integrand = [&, idx = i - 1](double s) { return hprime_at(idx, s); };
        hval[i] = hval[i - 1] + integrate_adaptive(integrand, nodes[i - 1], nodes[i],
                                                   p.outer_tol * seg / width);
    }
    for (size_t i = anchor_idx; i-- > 0;) {
        double seg = std::abs(nodes[i + 1] - nodes[i]);
        auto integrand = [&, idx = i](double s) { return hprime_at(idx, s); };
        hval[i] = hval[i + 1] - integrate_adaptive(integrand, nodes[i], nodes[i + 1],
                                                   p.outer_tol * seg / width);
    }

    auto series = std::make_shared<NullSeries>();
    series->inner = HermiteSeries(nodes, ival, islope);
    series->hval = HermiteSeries(nodes, hval, hslope);

    Interval dom = p.domain;
    ScalarProfile h(
        [series](double xi) { return series->hval.eval(xi); },
        [series, phi](double xi) {
            double pv = phi.value(xi);
            return series->inner.eval(xi) / (pv * pv);
        },
        [series, phi, G](double xi) {
            double pv = phi.value(xi), p1 = phi.d1(xi);
            double hp = series->inner.eval(xi) / (pv * pv);
            return -2.0 * (p1 / pv) * hp + G(xi) / (pv * pv);
        },
        dom);

    return ProfileTriple{phi, f, std::move(h), dom, std::nullopt};
}

std::string to_string(NullShapeSpec::Pair p) {
    switch (p) {
        case NullShapeSpec::Pair::exp_exp: return "exp-exp";
        case NullShapeSpec::Pair::gauss_exp: return "gauss-exp";
        case NullShapeSpec::Pair::const_const: return "const-const";
    }
    return "?";
}

NullShapeSpec::Pair null_pair_from_string(const std::string& s) {
    if (s == "exp-exp") return NullShapeSpec::Pair::exp_exp;
    if (s == "gauss-exp") return NullShapeSpec::Pair::gauss_exp;
    if (s == "const-const") return NullShapeSpec::Pair::const_const;
    throw ConfigError("unknown null profile pair '" + s +
                      "' (expected exp-exp, gauss-exp or const-const)");
}

ProfileTriple build_null_shape(const SolitonConfig& config, const NullShapeSpec& s) {
    NullFamilyParams p;
    // These shapes are entire functions; give the profiles one unit of slack
    // so the quadrature can touch the closed endpoints of the build domain.
    Interval wide{s.domain.lo - 1.0, s.domain.hi + 1.0};
    switch (s.pair) {
        case NullShapeSpec::Pair::exp_exp:
            p.phi = exp_profile(s.scale, s.rate, wide);
            p.f = exp_profile(s.scale, s.rate, wide);
            break;
        case NullShapeSpec::Pair::gauss_exp:
            p.f = gaussian_profile(wide);
            p.phi = exp_profile(1.0, s.rate, wide);
            break;
        case NullShapeSpec::Pair::const_const:
            p.phi = ScalarProfile::constant(1.0, wide);
            p.f = ScalarProfile::constant(1.0, wide);
            break;
    }
    p.c4 = s.c4;
    p.c5 = s.c5;
    p.anchor = s.anchor;
    p.domain = s.domain;
    return build_null_family(config, p);
}

// ---------------------------------------------------------------------------
// Defect injection

std::string to_string(DefectSpec::Target t) {
    switch (t) {
        case DefectSpec::Target::none: return "none";
        case DefectSpec::Target::phi: return "phi";
        case DefectSpec::Target::f: return "f";
        case DefectSpec::Target::h: return "h";
    }
    return "?";
}

std::string to_string(DefectSpec::Mode m) {
    switch (m) {
        case DefectSpec::Mode::zero: return "zero";
        case DefectSpec::Mode::scale_bump: return "scale-bump";
        case DefectSpec::Mode::add_quadratic: return "add-quadratic";
    }
    return "?";
}

namespace {

ScalarProfile scale_bump(const ScalarProfile& p, double a) {
    Interval dom = p.domain();
    return ScalarProfile(
        [p, a](double xi) { return p.value(xi) * (1.0 + a * std::sin(xi)); },
        [p, a](double xi) {
            return p.d1(xi) * (1.0 + a * std::sin(xi)) + p.value(xi) * a * std::cos(xi);
        },
        [p, a](double xi) {
            return p.d2(xi) * (1.0 + a * std::sin(xi)) + 2.0 * p.d1(xi) * a * std::cos(xi) -
                   p.value(xi) * a * std::sin(xi);
        },
        dom);
}

ScalarProfile add_quadratic(const ScalarProfile& p, double a) {
    Interval dom = p.domain();
    return ScalarProfile([p, a](double xi) { return p.value(xi) + a * xi * xi; },
                         [p, a](double xi) { return p.d1(xi) + 2.0 * a * xi; },
                         [p, a](double xi) { return p.d2(xi) + 2.0 * a; }, dom);
}

} // namespace

ProfileTriple inject_defect(const ProfileTriple& t, const DefectSpec& defect) {
    if (defect.target == DefectSpec::Target::none) return t;
    ProfileTriple out = t;
    auto apply = [&](const ScalarProfile& p, bool positive) {
        switch (defect.mode) {
            case DefectSpec::Mode::zero:
                if (positive)
                    throw ConfigError("defect mode 'zero' applies only to the potential h");
                return ScalarProfile::constant(0.0, t.domain);
            case DefectSpec::Mode::scale_bump: return scale_bump(p, defect.amplitude);
            case DefectSpec::Mode::add_quadratic: return add_quadratic(p, defect.amplitude);
        }
        throw ConfigError("unknown defect mode");
    };
    switch (defect.target) {
        case DefectSpec::Target::phi: out.phi = apply(t.phi, true); break;
        case DefectSpec::Target::f: out.f = apply(t.f, true); break;
        case DefectSpec::Target::h: out.h = apply(t.h, false); break;
        case DefectSpec::Target::none: break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Family dispatch and presets

std::string family_id(FamilyKind k) {
    switch (k) {
        case FamilyKind::power_law: return "thm14";
        case FamilyKind::phase_flow: return "thm15";
        case FamilyKind::null_quadrature: return "thm17";
        case FamilyKind::external_profile: return "external-profile";
        case FamilyKind::preset: return "preset";
    }
    return "?";
}

ProfileTriple build_family(const SolitonConfig& config, const FamilySpec& spec,
                           Interval span) {
    switch (spec.kind) {
        case FamilyKind::power_law: return build_power_law(config, spec.power_law);
        case FamilyKind::phase_flow:
            return build_phase_flow(config, spec.phase_flow, span).triple;
        case FamilyKind::null_quadrature: {
            NullShapeSpec s = spec.null_shape;
            s.domain = span;
            return build_null_shape(config, s);
        }
        case FamilyKind::external_profile:
            throw ConfigError("external-profile families are resolved by the run layer");
        case FamilyKind::preset:
            throw ConfigError("preset families are resolved by the run layer");
    }
    throw ConfigError("unknown family kind");
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = [] {
        std::vector<Preset> v;

        {
            Preset p{"thm14-riemannian-plus",
                     "power-law family, Riemannian base, positive branch (k = 1, b = 0)",
                     SolitonConfig(3, 2, Signature::riemannian(3), 0.0, 0.0),
                     Vector(3),
                     FamilySpec{},
                     {0.2, 5.0}};
            p.alpha << 1.0, 0.0, 0.0;
            p.family.kind = FamilyKind::power_law;
            p.family.power_law = PowerLawParams{1.0, 1.0, 1.0, 0.0, Branch::plus};
            v.push_back(std::move(p));
        }
        {
            Preset p{"thm14-lorentzian-minus",
                     "power-law family, timelike direction in a Lorentzian base, "
                     "negative branch (k = 1, b = 0)",
                     SolitonConfig(3, 2, Signature::lorentzian(3), 0.0, 0.0),
                     Vector(3),
                     FamilySpec{},
                     {-5.0, -0.2}};
            p.alpha << 1.0, 0.0, 0.0;
            p.family.kind = FamilyKind::power_law;
            p.family.power_law = PowerLawParams{1.0, 1.0, 1.0, 0.0, Branch::minus};
            v.push_back(std::move(p));
        }
        {
            Preset p{"thm15-riemannian",
                     "phase-flow family integrated from z0 = 2.5 (k = 1, c3 = 1)",
                     SolitonConfig(3, 2, Signature::riemannian(3), 0.0, 0.0),
                     Vector(3),
                     FamilySpec{},
                     {-0.8, 0.8}};
            p.alpha << 1.0, 0.0, 0.0;
            p.family.kind = FamilyKind::phase_flow;
            p.family.phase_flow = PhaseFlowParams{};
            p.family.phase_flow.z0 = 2.5;
            v.push_back(std::move(p));
        }
        {
            Preset p{"thm17-exp",
                     "null-direction family with f = phi = e^xi (c4 = c5 = 0)",
                     SolitonConfig(3, 2, Signature::lorentzian(3), 0.0, 0.0),
                     Vector(3),
                     FamilySpec{},
                     {-3.0, 3.0}};
            p.alpha << 1.0, 1.0, 0.0;
            p.family.kind = FamilyKind::null_quadrature;
            p.family.null_shape = NullShapeSpec{};
            v.push_back(std::move(p));
        }
        {
            Preset p{"thm17-gauss",
                     "null-direction family with f = e^(-xi^2), phi = e^xi (c4 = c5 = 0)",
                     SolitonConfig(3, 2, Signature::lorentzian(3), 0.0, 0.0),
                     Vector(3),
                     FamilySpec{},
                     {-2.5, 2.5}};
            p.alpha << 1.0, 1.0, 0.0;
            p.family.kind = FamilyKind::null_quadrature;
            p.family.null_shape = NullShapeSpec{};
            p.family.null_shape.pair = NullShapeSpec::Pair::gauss_exp;
            v.push_back(std::move(p));
        }
        {
            Preset p{"flat-product",
                     "flat unwarped product (phi = f = 1, h = 0); every residual "
                     "is at the roundoff floor",
                     SolitonConfig(3, 2, Signature::riemannian(3), 0.0, 0.0),
                     Vector(3),
                     FamilySpec{},
                     {-1.0, 1.0}};
            p.alpha << 1.0, 0.0, 0.0;
            p.family.kind = FamilyKind::null_quadrature;
            p.family.null_shape = NullShapeSpec{};
            p.family.null_shape.pair = NullShapeSpec::Pair::const_const;
            v.push_back(std::move(p));
        }
        return v;
    }();
    return all;
}

const Preset& find_preset(const std::string& name) {
    for (const Preset& p : presets())
        if (p.name == name) return p;
    throw ConfigError("unknown preset '" + name + "'");
}

} // namespace soliton
