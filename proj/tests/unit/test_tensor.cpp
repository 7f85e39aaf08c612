#include <doctest.h>

#include <cmath>

#include "soliton/conformal.hpp"
#include "soliton/tensor.hpp"

using namespace soliton;

namespace {

Point pt3(double a, double b, double c) {
    Point p(3);
    p << a, b, c;
    return p;
}

MetricField flat_metric(const Signature& sig) {
    int n = sig.dim();
    return MetricField(n, [sig, n](const Point&) {
        Matrix g = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) g(i, i) = sig.eps(i);
        return g;
    });
}

ScalarField value_only(int dim, std::function<double(const Point&)> f) {
    return ScalarField(dim, std::move(f));
}

} // namespace

TEST_CASE("fd_partial: constant field differentiates to zero exactly") {
    ScalarField c = value_only(3, [](const Point&) { return 4.25; });
    FDScheme s{1e-3, 2};
    for (int axis = 0; axis < 3; ++axis)
        CHECK(fd_partial(c, pt3(0.3, -1.0, 2.0), axis, s) == 0.0);
}

TEST_CASE("fd_partial: central difference is exact on quadratics") {
    ScalarField q = value_only(3, [](const Point& x) { return x[0] * x[0]; });
    for (double step : {1e-1, 1e-2, 1e-3}) {
        FDScheme s{step, 2};
        CHECK(fd_partial(q, pt3(0.7, 0.0, 0.0), 0, s) == doctest::Approx(1.4).epsilon(1e-12));
    }
}

TEST_CASE("fd_partial: exponential at the documented accuracy") {
    ScalarField e = value_only(3, [](const Point& x) { return std::exp(x[0]); });
    FDScheme s{1e-3, 2};
    CHECK(std::abs(fd_partial(e, pt3(0.0, 0.0, 0.0), 0, s) - 1.0) < 2e-7);
    FDScheme s4{1e-3, 4};
    CHECK(std::abs(fd_partial(e, pt3(0.0, 0.0, 0.0), 0, s4) - 1.0) < 1e-12);
}

TEST_CASE("fd_partial rejects bad axes and steps") {
    ScalarField c = value_only(3, [](const Point&) { return 1.0; });
    CHECK_THROWS_AS(fd_partial(c, pt3(0, 0, 0), 3, FDScheme{1e-3, 2}), DomainError);
    CHECK_THROWS_AS(fd_partial(c, pt3(0, 0, 0), 0, FDScheme{0.0, 2}), DomainError);
    CHECK_THROWS_AS(fd_partial(c, pt3(0, 0, 0), 0, FDScheme{1e-3, 3}), DomainError);
}

TEST_CASE("NaN from a field names the offending point") {
    ScalarField bad = value_only(3, [](const Point& x) {
        return x[0] > 0.5 ? std::nan("") : 1.0;
    });
    FDScheme s{1e-3, 2};
    CHECK_THROWS_AS(fd_partial(bad, pt3(0.5, 0, 0), 0, s), NumericError);
    try {
        fd_partial(bad, pt3(0.5, 0, 0), 0, s);
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("0.501") != std::string::npos);
    }
}

TEST_CASE("christoffel: flat pseudo-Euclidean metrics are symbol-free") {
    for (auto sig : {Signature::riemannian(3), Signature::lorentzian(3)}) {
        MetricField g = flat_metric(sig);
        Tensor3 gamma = christoffel(g, pt3(0.3, -0.4, 1.7), FDScheme{1e-3, 2});
        CHECK(gamma.max_abs() < 1e-12);
    }
}

TEST_CASE("christoffel: conformal metric matches the closed-form symbols") {
    // gbar = g / phi^2 with phi = e^{x1}: phi_,1/phi = 1 and the nonzero
    // symbols are G^1_11 = G^2_12 = G^3_13 = -1, G^1_22 = G^1_33 = +1.
    Signature sig = Signature::riemannian(3);
    ScalarField phi = value_only(3, [](const Point& x) { return std::exp(x[0]); });
    MetricField gbar = conformal_metric(sig, phi);
    Point x = pt3(0.2, 0.0, 0.0);
    Tensor3 gamma = christoffel(gbar, x, FDScheme{1e-3, 4});

    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double expect = 0.0;
                if (k == i && j == 0) expect -= 1.0;
                if (k == j && i == 0) expect -= 1.0;
                if (i == j && k == 0) expect += 1.0;
                CHECK(std::abs(gamma.at(k, i, j) - expect) < 1e-7);
            }
}

TEST_CASE("christoffel: 2-d warped diagonal metric by hand") {
    // diag(1, x1^2) on x1 > 0: G^2_12 = 1/x1, G^1_22 = -x1, everything else 0.
    MetricField g(2, [](const Point& x) {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = 1.0;
        m(1, 1) = x[0] * x[0];
        return m;
    });
    Point x(2);
    x << 1.3, 0.4;
    Tensor3 gamma = christoffel(g, x, FDScheme{1e-3, 2});
    CHECK(std::abs(gamma.at(1, 0, 1) - 1.0 / 1.3) < 1e-8);
    CHECK(std::abs(gamma.at(1, 1, 0) - 1.0 / 1.3) < 1e-8);
    CHECK(std::abs(gamma.at(0, 1, 1) + 1.3) < 1e-8);
    CHECK(std::abs(gamma.at(0, 0, 0)) < 1e-10);
    CHECK(std::abs(gamma.at(1, 1, 1)) < 1e-10);
    CHECK(std::abs(gamma.at(0, 0, 1)) < 1e-10);
}

TEST_CASE("christoffel symmetry in the lower pair is exact by construction") {
    ScalarField phi = value_only(3, [](const Point& x) {
        return 1.0 + 0.3 * x[0] * x[0] + 0.2 * x[1] + 0.1 * x[0] * x[2];
    });
    MetricField gbar = conformal_metric(Signature::lorentzian(3), phi);
    Tensor3 gamma = christoffel(gbar, pt3(0.1, 0.2, -0.3), FDScheme{1e-3, 2});
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(gamma.at(k, i, j) == gamma.at(k, j, i));
}

TEST_CASE("ricci: flat metric is Ricci-flat") {
    MetricField g = flat_metric(Signature::lorentzian(4));
    Point x(4);
    x << 0.1, 0.2, 0.3, 0.4;
    Matrix ric = ricci(g, x, FDScheme{1e-3, 2});
    CHECK(ric.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ricci: conformal exponential factor against hand-computed values") {
    // For phi = e^{x1}, n = 3: Ric_11 = 0 and Ric_22 = Ric_33 = -1 at any point.
    Signature sig = Signature::riemannian(3);
    ScalarField phi = value_only(3, [](const Point& x) { return std::exp(x[0]); });
    MetricField gbar = conformal_metric(sig, phi);
    Matrix ric = ricci(gbar, pt3(0.2, -0.1, 0.5), FDScheme{1e-3, 2});
    CHECK(std::abs(ric(0, 0) - 0.0) < 5e-6);
    CHECK(std::abs(ric(1, 1) + 1.0) < 5e-6);
    CHECK(std::abs(ric(2, 2) + 1.0) < 5e-6);
    CHECK(std::abs(ric(0, 1)) < 5e-6);
}

TEST_CASE("ricci symmetry stays within the FD noise floor") {
    ScalarField phi = value_only(3, [](const Point& x) {
        return 1.5 + 0.2 * std::sin(x[0]) + 0.1 * x[1] * x[1] + 0.05 * x[0] * x[2];
    });
    MetricField gbar = conformal_metric(Signature::riemannian(3), phi);
    FDScheme s{1e-3, 2};
    for (double t : {-0.4, 0.0, 0.3, 0.8, 1.2}) {
        Matrix ric = ricci(gbar, pt3(t, 0.5 * t, -0.2 * t), s);
        CHECK((ric - ric.transpose()).cwiseAbs().maxCoeff() < 1e-5);
    }
}

TEST_CASE("ricci FD error shrinks by ~4x when the step halves") {
    Signature sig = Signature::riemannian(3);
    auto phi_fn = [](const Point& x) { return std::exp(0.5 * x[0] + 0.2 * x[1]); };
    ScalarField phi_value = value_only(3, phi_fn);
    ScalarField phi_analytic(
        3, phi_fn,
        [phi_fn](const Point& x) {
            Vector g(3);
            double v = phi_fn(x);
            g << 0.5 * v, 0.2 * v, 0.0;
            return g;
        },
        [phi_fn](const Point& x) {
            double v = phi_fn(x);
            Matrix h(3, 3);
            h << 0.25 * v, 0.1 * v, 0.0, 0.1 * v, 0.04 * v, 0.0, 0.0, 0.0, 0.0;
            return h;
        });
    MetricField gbar = conformal_metric(sig, phi_value);

    int checked = 0;
    for (double t : {-0.5, -0.2, 0.1, 0.4, 0.7, 1.0}) {
        Point x = pt3(t, -0.3 * t, 0.2);
        Matrix exact = conformal_ricci(sig, phi_analytic, x);
        double e2 = (ricci(gbar, x, FDScheme{2e-3, 2}) - exact).cwiseAbs().maxCoeff();
        double e1 = (ricci(gbar, x, FDScheme{1e-3, 2}) - exact).cwiseAbs().maxCoeff();
        if (e1 < 1e-12) continue;  // below the floor, ratio meaningless
        double ratio = e2 / e1;
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
        ++checked;
    }
    CHECK(checked >= 5);
}

TEST_CASE("hessian_fd: constants and quadratics") {
    Signature sig = Signature::lorentzian(3);
    MetricField g = flat_metric(sig);
    FDScheme s{1e-3, 2};

    ScalarField c = value_only(3, [](const Point&) { return 2.0; });
    CHECK(hessian_fd(c, g, pt3(0.3, 0.1, -0.2), s).cwiseAbs().maxCoeff() < 1e-12);

    // h = 1/2 sum eps_i x_i^2 has Hessian diag(eps_i) exactly.
    ScalarField q = value_only(3, [sig](const Point& x) {
        double v = 0.0;
        for (int i = 0; i < 3; ++i) v += 0.5 * sig.eps(i) * x[i] * x[i];
        return v;
    });
    Matrix hess = hessian_fd(q, g, pt3(0.7, -0.4, 1.1), s);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(hess(i, j) - (i == j ? sig.eps(i) : 0.0)) < 1e-12);
}

TEST_CASE("hessian_fd matches the closed-form conformal Hessian") {
    Signature sig = Signature::riemannian(3);
    ScalarField phi = value_only(3, [](const Point& x) { return std::exp(x[0]); });
    ScalarField u = value_only(3, [](const Point& x) { return x[0] * x[1]; });
    MetricField gbar = conformal_metric(sig, phi);
    Point x = pt3(0.2, 0.4, -0.1);
    Matrix fd = hessian_fd(u, gbar, x, FDScheme{1e-3, 4});
    Matrix cf = conformal_hessian(sig, phi, u, x, FDScheme{1e-4, 4});
    CHECK((fd - cf).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("soliton_residual_field: quadratic potentials on flat space") {
    Signature sig = Signature::riemannian(3);
    MetricField g = flat_metric(sig);
    FDScheme s{1e-3, 2};
    const double A = 0.7;

    ScalarField h = value_only(3, [A](const Point& x) { return 0.5 * A * x.squaredNorm(); });
    Matrix r = soliton_residual_field(g, h, A, pt3(0.3, -0.2, 0.5), s);
    CHECK(r.cwiseAbs().maxCoeff() < 1e-10);

    // h = 0, rho = 1 leaves exactly -g.
    ScalarField zero = value_only(3, [](const Point&) { return 0.0; });
    Matrix r2 = soliton_residual_field(g, zero, 1.0, pt3(0.3, -0.2, 0.5), s);
    CHECK((r2 + g(pt3(0.3, -0.2, 0.5))).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("near-singular metrics are rejected, not regularized") {
    MetricField g(3, [](const Point&) {
        Matrix m = Matrix::Identity(3, 3);
        m(2, 2) = 1e-14;
        return m;
    });
    CHECK_THROWS_AS(christoffel(g, pt3(0, 0, 0), FDScheme{1e-3, 2}), SingularMetricError);
}

TEST_CASE("FD stencil must stay below the regularity hint") {
    MetricField g(3, [](const Point&) { return Matrix(Matrix::Identity(3, 3)); },
                  /*regularity=*/5e-4);
    CHECK_THROWS_AS(christoffel(g, pt3(0, 0, 0), FDScheme{1e-3, 2}), DomainError);
    CHECK_NOTHROW(christoffel(g, pt3(0, 0, 0), FDScheme{1e-4, 2}));
}

TEST_CASE("metric symmetry is enforced at evaluation") {
    MetricField g(3, [](const Point&) {
        Matrix m = Matrix::Identity(3, 3);
        m(0, 1) = 0.5;  // m(1,0) stays 0
        return m;
    });
    CHECK_THROWS_AS(g(pt3(0, 0, 0)), NumericError);
}
