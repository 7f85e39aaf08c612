#include "soliton/tensor.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace soliton {

std::string to_string(DerivChannel c) {
    return c == DerivChannel::analytic ? "analytic" : "finite-difference";
}

void FDScheme::validate() const {
    if (!(step > 0.0))
        throw DomainError("FDScheme: step must be positive");
    if (order != 2 && order != 4)
        throw DomainError("FDScheme: order must be 2 or 4");
}

std::string format_point(const Point& x) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < x.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", x[i]);
        os << (i ? ", " : "") << buf;
    }
    os << ")";
    return os.str();
}

namespace {

void check_finite(double v, const Point& x) {
    if (!std::isfinite(v))
        throw NumericError("non-finite field value at " + format_point(x));
}

void check_stencil(const FDScheme& scheme, const std::optional<double>& regularity) {
    scheme.validate();
    if (regularity && !(scheme.step * (scheme.order / 2) < *regularity))
        throw DomainError("FD stencil reach exceeds the metric regularity hint");
}

} // namespace

// ---------------------------------------------------------------------------
// ScalarField / MetricField

ScalarField::ScalarField(int dim, ValueFn value) : dim_(dim), value_(std::move(value)) {
    if (dim_ < 1) throw DomainError("ScalarField: dim must be positive");
}

ScalarField::ScalarField(int dim, ValueFn value, GradFn grad, HessFn hess)
    : dim_(dim), value_(std::move(value)), grad_(std::move(grad)), hess_(std::move(hess)) {
    if (dim_ < 1) throw DomainError("ScalarField: dim must be positive");
    if (!grad_ || !hess_)
        throw DomainError("ScalarField: analytic channel requires both gradient and Hessian");
}

double ScalarField::operator()(const Point& x) const {
    double v = value_(x);
    check_finite(v, x);
    return v;
}

Vector ScalarField::gradient(const Point& x, const FDScheme& scheme) const {
    if (grad_) {
        Vector g = grad_(x);
        for (int i = 0; i < g.size(); ++i) check_finite(g[i], x);
        return g;
    }
    Vector g(dim_);
    for (int i = 0; i < dim_; ++i) g[i] = fd_partial(*this, x, i, scheme);
    return g;
}

Matrix ScalarField::hessian(const Point& x, const FDScheme& scheme) const {
    if (hess_) {
        Matrix h = hess_(x);
        for (int i = 0; i < h.rows(); ++i)
            for (int j = 0; j < h.cols(); ++j) check_finite(h(i, j), x);
        return h;
    }
    Matrix h(dim_, dim_);
    auto f = [this](const Point& p) { return (*this)(p); };
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            h(i, j) = h(j, i) = fd_second(f, x, i, j, scheme);
    return h;
}

MetricField::MetricField(int dim, EvalFn eval, std::optional<double> regularity)
    : dim_(dim), eval_(std::move(eval)), regularity_(regularity) {
    if (dim_ < 1) throw DomainError("MetricField: dim must be positive");
}

Matrix MetricField::operator()(const Point& x) const {
    Matrix g = eval_(x);
    if (g.rows() != dim_ || g.cols() != dim_)
        throw NumericError("metric eval returned wrong shape at " + format_point(x));
    double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            check_finite(g(i, j), x);
            if (std::abs(g(i, j) - g(j, i)) > 1e-14 * scale)
                throw NumericError("metric matrix not symmetric at " + format_point(x));
        }
    return g;
}

double Tensor3::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

// ---------------------------------------------------------------------------
// Finite differences

double fd_partial(const std::function<double(const Point&)>& f, const Point& x,
                  int axis, const FDScheme& scheme) {
    scheme.validate();
    if (axis < 0 || axis >= x.size())
        throw DomainError("fd_partial: axis out of range");
    const double h = scheme.step;
    Point p = x;
    auto eval = [&](double offset) {
        p[axis] = x[axis] + offset;
        double v = f(p);
        check_finite(v, p);
        return v;
    };
    if (scheme.order == 2)
        return (eval(h) - eval(-h)) / (2.0 * h);
    return (-eval(2 * h) + 8.0 * eval(h) - 8.0 * eval(-h) + eval(-2 * h)) / (12.0 * h);
}

double fd_partial(const ScalarField& f, const Point& x, int axis, const FDScheme& scheme) {
    return fd_partial([&f](const Point& p) { return f(p); }, x, axis, scheme);
}

double fd_second(const std::function<double(const Point&)>& f, const Point& x,
                 int i, int j, const FDScheme& scheme) {
    scheme.validate();
    const double h = scheme.step;
    if (i == j) {
        Point p = x;
        auto eval = [&](double offset) {
            p[i] = x[i] + offset;
            double v = f(p);
            check_finite(v, p);
            return v;
        };
        if (scheme.order == 2)
            return (eval(h) - 2.0 * eval(0.0) + eval(-h)) / (h * h);
        return (-eval(2 * h) + 16.0 * eval(h) - 30.0 * eval(0.0) + 16.0 * eval(-h) -
                eval(-2 * h)) /
               (12.0 * h * h);
    }
    // Mixed partial: outer difference along i of the inner difference along j.
    auto dj = [&](const Point& p) { return fd_partial(f, p, j, scheme); };
    return fd_partial(dj, x, i, scheme);
}

// ---------------------------------------------------------------------------
// Curvature

Matrix invert_metric(const Matrix& g, const Point& where) {
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double smin = sv[sv.size() - 1], smax = sv[0];
    if (!(smin > 0.0) || smax / smin > kMaxMetricCondition)
        throw SingularMetricError("metric numerically singular at " + format_point(where) +
                                  " (condition > 1e12)");
    return svd.solve(Matrix::Identity(g.rows(), g.cols()));
}

Tensor3 christoffel(const MetricField& metric, const Point& x, const FDScheme& scheme) {
    check_stencil(scheme, metric.regularity());
    const int d = metric.dim();

    // dg[a](i,j) = d_a g_ij
    std::vector<Matrix> dg(d);
    for (int a = 0; a < d; ++a) {
        dg[a].resize(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                double v = fd_partial(
                    [&metric, i, j](const Point& p) { return metric(p)(i, j); }, x, a, scheme);
                dg[a](i, j) = dg[a](j, i) = v;
            }
    }

    Matrix ginv = invert_metric(metric(x), x);
    Tensor3 gamma(d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                double s = 0.0;
                for (int l = 0; l < d; ++l)
                    s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                gamma.at(k, i, j) = 0.5 * s;
                gamma.at(k, j, i) = gamma.at(k, i, j);
            }
    return gamma;
}

Matrix ricci(const MetricField& metric, const Point& x, const FDScheme& scheme) {
    check_stencil(scheme, metric.regularity());
    const int d = metric.dim();
    const double h = scheme.step;

    auto gamma_at = [&](const Point& p) { return christoffel(metric, p, scheme); };

    // dgamma[a].at(k,i,j) = d_a G^k_ij
    std::vector<Tensor3> dgamma(d, Tensor3(d));
    for (int a = 0; a < d; ++a) {
        Point p = x;
        if (scheme.order == 2) {
            p[a] = x[a] + h;
            Tensor3 gp = gamma_at(p);
            p[a] = x[a] - h;
            Tensor3 gm = gamma_at(p);
            for (int k = 0; k < d; ++k)
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        dgamma[a].at(k, i, j) = (gp.at(k, i, j) - gm.at(k, i, j)) / (2.0 * h);
        } else {
            p[a] = x[a] + 2 * h;
            Tensor3 g2p = gamma_at(p);
            p[a] = x[a] + h;
            Tensor3 gp = gamma_at(p);
            p[a] = x[a] - h;
            Tensor3 gm = gamma_at(p);
            p[a] = x[a] - 2 * h;
            Tensor3 g2m = gamma_at(p);
            for (int k = 0; k < d; ++k)
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        dgamma[a].at(k, i, j) = (-g2p.at(k, i, j) + 8.0 * gp.at(k, i, j) -
                                                 8.0 * gm.at(k, i, j) + g2m.at(k, i, j)) /
                                                (12.0 * h);
        }
    }

    Tensor3 gamma = gamma_at(x);
    Matrix ric(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double v = 0.0;
            for (int k = 0; k < d; ++k) {
                v += dgamma[k].at(k, i, j) - dgamma[i].at(k, k, j);
                for (int l = 0; l < d; ++l)
                    v += gamma.at(k, k, l) * gamma.at(l, i, j) -
                         gamma.at(k, i, l) * gamma.at(l, k, j);
            }
            ric(i, j) = v;
        }
    return ric;
}

Matrix hessian_fd(const ScalarField& h, const MetricField& metric, const Point& x,
                  const FDScheme& scheme) {
    check_stencil(scheme, metric.regularity());
    const int d = metric.dim();
    Tensor3 gamma = christoffel(metric, x, scheme);

    auto f = [&h](const Point& p) { return h(p); };
    Vector grad(d);
    for (int k = 0; k < d; ++k) grad[k] = fd_partial(f, x, k, scheme);

    Matrix out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            double v = fd_second(f, x, i, j, scheme);
            for (int k = 0; k < d; ++k) v -= gamma.at(k, i, j) * grad[k];
            out(i, j) = out(j, i) = v;
        }
    return out;
}

Matrix soliton_residual_field(const MetricField& metric, const ScalarField& h,
                              double rho, const Point& x, const FDScheme& scheme) {
    return ricci(metric, x, scheme) + hessian_fd(h, metric, x, scheme) - rho * metric(x);
}

} // namespace soliton
