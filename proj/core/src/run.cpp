#include "soliton/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "soliton/tensor.hpp"
#include "soliton/version.hpp"

namespace soliton {

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out;
    if (count == 1) {
        out.push_back(0.5 * (lo + hi));
        return out;
    }
    for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
    return out;
}

/// Window of xi values inside both the requested grid and the triple domain.
std::pair<double, double> xi_window(const GridSpec& grid, const Interval& dom) {
    double lo = grid.xi_min, hi = grid.xi_max;
    if (dom.lo > -1e299) lo = std::max(lo, dom.lo + 1e-9 * std::max(1.0, std::abs(dom.lo)));
    if (dom.hi < 1e299) hi = std::min(hi, dom.hi - 1e-9 * std::max(1.0, std::abs(dom.hi)));
    if (!(lo < hi))
        throw ConfigError("[grid]: the xi window does not intersect the family domain");
    return {lo, hi};
}

double halton1(unsigned long index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

ResidualReport make_report(const std::string& command, const RunConfig& rc) {
    ResidualReport rep;
    rep.command = command;
    rep.tool = kToolName;
    rep.version = kToolVersion;
    rep.timestamp = iso8601_utc_now();
    rep.config_text = serialize_run_config(rc);
    return rep;
}

EquationReport summarize(std::string name, DerivChannel channel, double tolerance,
                         std::vector<double> xi, std::vector<double> absres,
                         std::vector<double> normres) {
    EquationReport eq;
    eq.name = std::move(name);
    eq.channel = channel;
    eq.tolerance = tolerance;
    eq.xi = std::move(xi);
    eq.residual = std::move(absres);
    double sq = 0.0;
    for (size_t i = 0; i < eq.residual.size(); ++i) {
        eq.max_norm = std::max(eq.max_norm, eq.residual[i]);
        eq.normalized_max = std::max(eq.normalized_max, normres[i]);
        sq += eq.residual[i] * eq.residual[i];
    }
    eq.rms = eq.residual.empty() ? 0.0 : std::sqrt(sq / eq.residual.size());
    eq.pass = eq.max_norm <= eq.tolerance;
    return eq;
}

void finish_verdict(ResidualReport& rep) {
    bool ok = true;
    for (const auto& eq : rep.equations) ok = ok && eq.pass;
    rep.verdict = ok ? "pass" : "fail";
}

void print_report(const ResidualReport& rep, const RunOverrides& ov) {
    if (ov.quiet) return;
    for (const auto& eq : rep.equations)
        std::printf("[%s] %-14s max %.3e  rms %.3e  (tol %.1e)\n",
                    eq.pass ? "pass" : "FAIL", eq.name.c_str(), eq.max_norm, eq.rms,
                    eq.tolerance);
    if (rep.oracle) {
        const auto& o = *rep.oracle;
        if (o.at_floor) {
            std::printf("oracle: residuals at roundoff floor; order fit: floor\n");
        } else {
            std::printf("oracle: order estimate %.3f, extrapolated residual %.3e\n",
                        o.order_estimate, o.extrapolated);
        }
    }
    std::printf("verdict: %s\n", rep.verdict.c_str());
}

std::string write_text(const std::string& dir, const std::string& name,
                       const std::string& content) {
    namespace fs = std::filesystem;
    fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
    fs::create_directories(p);
    fs::path file = p / name;
    std::ofstream out(file, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file '" + file.string() + "'");
    out << content;
    return file.string();
}

std::string report_to_csv(const ResidualReport& rep) {
    SampleTable t;
    t.columns = {"equation_index", "xi", "residual"};
    for (size_t e = 0; e < rep.equations.size(); ++e)
        for (size_t i = 0; i < rep.equations[e].xi.size(); ++i)
            t.rows.push_back({static_cast<double>(e), rep.equations[e].xi[i],
                              rep.equations[e].residual[i]});
    return table_to_csv(t);
}

void emit(RunOutput& out, const RunConfig& rc, const RunOverrides& ov,
          const std::string& stem) {
    std::string format = ov.format.value_or(rc.output.format);
    if (format != "json" && format != "csv")
        throw ConfigError("--format: expected json or csv");
    if (!ov.write_files) return;
    std::string dir = ov.out_dir.value_or(".");
    if (format == "json")
        out.files_written.push_back(
            write_text(dir, stem + "-report.json", report_to_json(out.report)));
    else
        out.files_written.push_back(
            write_text(dir, stem + "-report.csv", report_to_csv(out.report)));
}

DerivChannel family_channel(const FamilySpec& fam) {
    return fam.kind == FamilyKind::power_law ? DerivChannel::analytic
                                             : DerivChannel::finite_difference;
}

double ode_tolerance(const RunConfig& rc) {
    return rc.family.kind == FamilyKind::power_law ? rc.tol.ode : rc.tol.ode_numeric;
}

/// Block point: base point extended with deterministic torus coordinates.
Point lift_point(const Point& base, int m, unsigned long idx) {
    static const int primes[] = {2, 3, 5, 7, 11, 13};
    Point p(base.size() + m);
    p.head(base.size()) = base;
    for (int a = 0; a < m; ++a)
        p[base.size() + a] = 0.1 + 0.3 * halton1(idx + 1, primes[a % 6]);
    return p;
}

} // namespace

ProfileTriple load_profile_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open profile table '" + path + "'");

    std::string header;
    if (!std::getline(in, header)) throw ConfigError("profile table '" + path + "' is empty");
    std::vector<std::string> cols;
    {
        std::stringstream ss(header);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
    }
    auto col_index = [&](const std::string& name) {
        auto it = std::find(cols.begin(), cols.end(), name);
        if (it == cols.end())
            throw ConfigError("profile table: missing column '" + name + "'");
        return static_cast<size_t>(it - cols.begin());
    };
    size_t ci_xi = col_index("xi"), ci_phi = col_index("phi"), ci_f = col_index("f"),
           ci_h = col_index("h"), ci_dphi = col_index("dphi"), ci_df = col_index("df"),
           ci_dh = col_index("dh");

    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            row.push_back(std::strtod(cell.c_str(), &end));
            if (end == cell.c_str())
                throw ConfigError("profile table line " + std::to_string(lineno) +
                                  ": bad number '" + cell + "'");
        }
        if (row.size() != cols.size())
            throw ConfigError("profile table line " + std::to_string(lineno) +
                              ": wrong column count");
        rows.push_back(std::move(row));
    }
    if (rows.size() < 4)
        throw ConfigError("profile table: need at least 4 rows");
    std::sort(rows.begin(), rows.end(),
              [&](const auto& a, const auto& b) { return a[ci_xi] < b[ci_xi]; });

    size_t nrows = rows.size();
    auto column = [&](size_t ci) {
        std::vector<double> v(nrows);
        for (size_t i = 0; i < nrows; ++i) v[i] = rows[i][ci];
        return v;
    };
    std::vector<double> xs = column(ci_xi);

    // Central-difference estimate over the tabulated nodes (second-order
    // inside, one-sided at the ends).
    auto fd_nodes = [&](const std::vector<double>& v) {
        std::vector<double> d(nrows);
        for (size_t i = 1; i + 1 < nrows; ++i)
            d[i] = (v[i + 1] - v[i - 1]) / (xs[i + 1] - xs[i - 1]);
        d[0] = (v[1] - v[0]) / (xs[1] - xs[0]);
        d[nrows - 1] = (v[nrows - 1] - v[nrows - 2]) / (xs[nrows - 1] - xs[nrows - 2]);
        return d;
    };

    Interval dom{xs.front(), xs.back()};
    auto make_profile = [&](size_t ci_v, size_t ci_d) {
        auto val = std::make_shared<HermiteSeries>(xs, column(ci_v), column(ci_d));
        std::vector<double> d1 = column(ci_d);
        auto slope = std::make_shared<HermiteSeries>(xs, d1, fd_nodes(d1));
        std::vector<double> d2 = fd_nodes(d1);
        auto curv = std::make_shared<HermiteSeries>(xs, d2, fd_nodes(d2));
        return ScalarProfile([val](double xi) { return val->eval(xi); },
                             [slope](double xi) { return slope->eval(xi); },
                             [curv](double xi) { return curv->eval(xi); }, dom);
    };

    ProfileTriple t{make_profile(ci_phi, ci_dphi), make_profile(ci_f, ci_df),
                    make_profile(ci_h, ci_dh), dom, std::nullopt};
    return t;
}

ProfileTriple resolve_triple(const RunConfig& rc, std::string* note) {
    ProfileTriple triple = [&] {
        if (rc.family.kind == FamilyKind::external_profile)
            return load_profile_table(rc.family.external_path);
        if (rc.family.kind == FamilyKind::phase_flow) {
            PhaseFlowResult r = build_phase_flow(rc.config, rc.family.phase_flow,
                                                 {rc.grid.xi_min, rc.grid.xi_max});
            if (note && !r.note.empty()) *note = r.note;
            return r.triple;
        }
        return build_family(rc.config, rc.family, {rc.grid.xi_min, rc.grid.xi_max});
    }();
    return inject_defect(triple, rc.defect);
}

RunOutput cmd_verify(const RunConfig& rc, const RunOverrides& ov) {
    validate_run_config(rc);
    RunOutput out;
    out.report = make_report("verify", rc);

    Direction dir = classify_direction(rc.config.sig, rc.alpha);
    std::string note;
    ProfileTriple triple = resolve_triple(rc, &note);
    out.report.note = note;

    auto [lo, hi] = xi_window(rc.grid, triple.domain);
    std::vector<double> xs = linspace(lo, hi, rc.grid.samples);

    DerivChannel channel = family_channel(rc.family);
    double tol = ov.tolerance.value_or(ode_tolerance(rc));

    auto scale_at = [&](double xi) {
        double phi = triple.phi.value(xi), f = triple.f.value(xi);
        double gmax = std::max(1.0 / (phi * phi), f * f);
        return std::max(1.0, std::abs(rc.config.rho) * gmax);
    };

    if (dir.causal == Direction::Causal::unit) {
        std::vector<double> r1, r2, r3, n1, n2, n3;
        for (double xi : xs) {
            OdeResiduals r = ode_residuals_unit(rc.config, triple, xi, dir.eps_i0);
            double s = scale_at(xi);
            r1.push_back(std::abs(r.r1));
            r2.push_back(std::abs(r.r2));
            r3.push_back(std::abs(r.r3));
            n1.push_back(std::abs(r.r1) / s);
            n2.push_back(std::abs(r.r2) / s);
            n3.push_back(std::abs(r.r3) / s);
        }
        out.report.equations.push_back(summarize("ode-1", channel, tol, xs, r1, n1));
        out.report.equations.push_back(summarize("ode-2", channel, tol, xs, r2, n2));
        out.report.equations.push_back(summarize("ode-3", channel, tol, xs, r3, n3));
    } else {
        std::vector<double> r, nr;
        for (double xi : xs) {
            double v = std::abs(ode_residual_null(rc.config, triple, xi));
            r.push_back(v);
            nr.push_back(v / scale_at(xi));
        }
        out.report.equations.push_back(summarize("ode-null", channel, tol, xs, r, nr));
    }

    if (rc.grid.base_points > 0) {
        std::vector<Point> pts =
            sample_base_points(dir.alpha, lo, hi, rc.grid.base_points, rc.grid.seed);
        WarpedData data = make_invariant_data(rc.config, triple, dir);
        double ptol = ov.tolerance.value_or(rc.tol.pde);
        std::vector<double> xi_pts, ro, rd, rf, no, nd, nf;
        for (const Point& p : pts) {
            PdeResiduals pr = pde_residuals(data, p);
            double s = residual_scale(data, p);
            xi_pts.push_back(dir.xi(p));
            double o = pr.offdiag.cwiseAbs().maxCoeff();
            double d = pr.diag.cwiseAbs().maxCoeff();
            double fb = std::abs(pr.fiber);
            ro.push_back(o);
            rd.push_back(d);
            rf.push_back(fb);
            no.push_back(o / s);
            nd.push_back(d / s);
            nf.push_back(fb / s);
        }
        out.report.equations.push_back(
            summarize("pde-offdiag", DerivChannel::analytic, ptol, xi_pts, ro, no));
        out.report.equations.push_back(
            summarize("pde-diag", DerivChannel::analytic, ptol, xi_pts, rd, nd));
        out.report.equations.push_back(
            summarize("pde-fiber", DerivChannel::analytic, ptol, xi_pts, rf, nf));
    }

    if (rc.oracle.enabled) {
        if (rc.config.lambda_F != 0.0)
            throw ConfigError("[oracle]: the concrete flat-torus fiber requires lambda_f = 0");
        double step = ov.fd_step.value_or(rc.oracle.fd_step);
        FDScheme scheme{step, rc.oracle.fd_order};
        int count = std::min(rc.grid.base_points > 0 ? rc.grid.base_points : 4, 8);
        std::vector<Point> pts = sample_base_points(dir.alpha, lo, hi, count, rc.grid.seed);
        Direction fd_dir = dir;
        WarpedData data = make_invariant_data(rc.config, triple, fd_dir);
        MetricField g = block_metric(data);
        ScalarField h = block_potential(data);
        double otol = ov.tolerance.value_or(rc.tol.oracle);
        std::vector<double> xi_pts, res, nres;
        for (size_t i = 0; i < pts.size(); ++i) {
            Point bp = lift_point(pts[i], rc.config.m, i);
            Matrix t = soliton_residual_field(g, h, rc.config.rho, bp, scheme);
            xi_pts.push_back(dir.xi(pts[i]));
            double v = t.cwiseAbs().maxCoeff();
            res.push_back(v);
            nres.push_back(v / residual_scale(data, pts[i]));
        }
        out.report.equations.push_back(summarize("oracle-fd", DerivChannel::finite_difference,
                                                 otol, xi_pts, res, nres));
    }

    finish_verdict(out.report);
    out.exit_code = out.report.pass() ? kExitPass : kExitResidualFailure;
    emit(out, rc, ov, "verify");
    print_report(out.report, ov);
    return out;
}

RunOutput cmd_sample(const RunConfig& rc, const RunOverrides& ov) {
    validate_run_config(rc);
    RunOutput out;
    out.report = make_report("sample", rc);

    std::string note;
    ProfileTriple triple = resolve_triple(rc, &note);
    out.report.note = note;

    auto [lo, hi] = xi_window(rc.grid, triple.domain);
    std::vector<double> xs = linspace(lo, hi, rc.grid.samples);

    SampleTable& t = out.table;
    t.columns = {"xi", "phi", "f", "h", "dphi", "df", "dh"};
    bool phase_cols = triple.coupling.has_value();
    if (phase_cols) {
        t.columns.push_back("x");
        t.columns.push_back("y");
        t.columns.push_back("z");
    }
    double k = triple.coupling.value_or(0.0);
    double ycoef = (rc.config.n - 2) * k - rc.config.m;
    for (double xi : xs) {
        std::vector<double> row = {xi,
                                   triple.phi.value(xi),
                                   triple.f.value(xi),
                                   triple.h.value(xi),
                                   triple.phi.d1(xi),
                                   triple.f.d1(xi),
                                   triple.h.d1(xi)};
        if (phase_cols) {
            double x = triple.f.d1(xi) / triple.f.value(xi);
            double y = triple.h.d1(xi) + ycoef * x;
            row.push_back(x);
            row.push_back(y);
            row.push_back(x != 0.0 ? y / x : std::numeric_limits<double>::quiet_NaN());
        }
        t.rows.push_back(std::move(row));
    }

    out.report.verdict = "pass";
    out.exit_code = kExitPass;

    std::string format = ov.format.value_or(rc.output.format);
    if (format != "json" && format != "csv")
        throw ConfigError("--format: expected json or csv");
    if (ov.write_files) {
        std::string dir = ov.out_dir.value_or(".");
        if (format == "csv")
            out.files_written.push_back(write_text(dir, "sample.csv", table_to_csv(t)));
        else
            out.files_written.push_back(write_text(dir, "sample.json", table_to_json(t)));
    }
    if (!ov.quiet)
        std::printf("sampled %zu rows on [%.6g, %.6g]\n", t.rows.size(), lo, hi);
    return out;
}

RunOutput cmd_oracle(const RunConfig& rc, const RunOverrides& ov) {
    validate_run_config(rc);
    if (rc.config.lambda_F != 0.0)
        throw ConfigError("[oracle]: the concrete flat-torus fiber requires lambda_f = 0");

    RunOutput out;
    out.report = make_report("oracle", rc);

    Direction dir = classify_direction(rc.config.sig, rc.alpha);
    std::string note;
    ProfileTriple triple = resolve_triple(rc, &note);
    out.report.note = note;

    auto [lo, hi] = xi_window(rc.grid, triple.domain);
    int count = std::min(rc.grid.base_points > 0 ? rc.grid.base_points : 4, 8);
    std::vector<Point> pts = sample_base_points(dir.alpha, lo, hi, count, rc.grid.seed);

    WarpedData data = make_invariant_data(rc.config, triple, dir);
    MetricField g = block_metric(data);
    ScalarField h = block_potential(data);

    double fine = ov.fd_step.value_or(rc.oracle.fd_step);
    std::vector<double> steps = {4.0 * fine, 2.0 * fine, fine};
    OracleBlock block;
    block.steps = steps;
    for (double s : steps) {
        FDScheme scheme{s, rc.oracle.fd_order};
        double worst = 0.0;
        for (size_t i = 0; i < pts.size(); ++i) {
            Point bp = lift_point(pts[i], rc.config.m, i);
            Matrix t = soliton_residual_field(g, h, rc.config.rho, bp, scheme);
            worst = std::max(worst, t.cwiseAbs().maxCoeff());
        }
        block.residuals.push_back(worst);
    }

    const double floor = 1e-10;
    block.at_floor = *std::max_element(block.residuals.begin(), block.residuals.end()) < floor;
    if (!block.at_floor) {
        // Least-squares slope of log(residual) against log(step).
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int ns = static_cast<int>(steps.size());
        for (int i = 0; i < ns; ++i) {
            double X = std::log(steps[i]), Y = std::log(std::max(block.residuals[i], 1e-300));
            sx += X;
            sy += Y;
            sxx += X * X;
            sxy += X * Y;
        }
        block.order_estimate = (ns * sxy - sx * sy) / (ns * sxx - sx * sx);
        double p = block.order_estimate;
        double rf = block.residuals.back(), rm = block.residuals[block.residuals.size() - 2];
        if (p > 0.1) {
            double w = std::pow(2.0, p);
            block.extrapolated = std::abs((w * rf - rm) / (w - 1.0));
        } else {
            block.extrapolated = rf;
        }
    }

    double otol = ov.tolerance.value_or(rc.tol.oracle);
    std::vector<double> xi_pts;
    for (const Point& p : pts) xi_pts.push_back(dir.xi(p));
    std::vector<double> finest(xi_pts.size(), block.residuals.back());
    out.report.equations.push_back(summarize("oracle-fd", DerivChannel::finite_difference,
                                             otol, {fine}, {block.residuals.back()},
                                             {block.residuals.back()}));
    out.report.oracle = block;

    finish_verdict(out.report);
    out.exit_code = out.report.pass() ? kExitPass : kExitResidualFailure;
    emit(out, rc, ov, "oracle");
    print_report(out.report, ov);
    return out;
}

} // namespace soliton
