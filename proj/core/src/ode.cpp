#include "soliton/ode.hpp"

#include <cmath>
#include <sstream>

#include "soliton/errors.hpp"

namespace soliton {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order embedded weights.
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

} // namespace

OdeSolution integrate_dopri5(const OdeRhs& rhs, double t0, double t1,
                             Eigen::VectorXd y0, const OdeOptions& opt,
                             const OdeStop& stop) {
    OdeSolution sol;
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    if (span == 0.0) {
        sol.t.push_back(t0);
        sol.y.push_back(std::move(y0));
        return sol;
    }

    double t = t0;
    Eigen::VectorXd y = std::move(y0);
    Eigen::VectorXd k1 = rhs(t, y);

    double h = span / 100.0;
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);

    sol.t.push_back(t);
    sol.y.push_back(y);

    auto err_norm = [&](const Eigen::VectorXd& err, const Eigen::VectorXd& ya,
                        const Eigen::VectorXd& yb) {
        double s = 0.0;
        for (int i = 0; i < err.size(); ++i) {
            double sc = opt.abs_tol +
                        opt.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            double q = err[i] / sc;
            s += q * q;
        }
        return std::sqrt(s / err.size());
    };

    long steps = 0;
    while (dir * (t1 - t) > 1e-15 * span) {
        if (++steps > opt.max_steps)
            throw NumericError("ODE integration exceeded step budget at t = " +
                               std::to_string(t));
        if (h < opt.min_step)
            throw NumericError("ODE step size underflow at t = " + std::to_string(t));
        double hs = dir * std::min(h, std::abs(t1 - t));
        if (opt.max_step > 0.0) hs = dir * std::min(std::abs(hs), opt.max_step);

        Eigen::VectorXd k2 = rhs(t + c2 * hs, y + hs * (a21 * k1));
        Eigen::VectorXd k3 = rhs(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
        Eigen::VectorXd k4 = rhs(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
        Eigen::VectorXd k5 =
            rhs(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        Eigen::VectorXd k6 =
            rhs(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        Eigen::VectorXd y5 =
            y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        Eigen::VectorXd k7 = rhs(t + hs, y5);
        Eigen::VectorXd y4 =
            y + hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        Eigen::VectorXd errv = y5 - y4;
        if (!errv.allFinite()) {
            h *= 0.25;
            continue;
        }
        double err = err_norm(errv, y, y5);

        if (err <= 1.0) {
            t += hs;
            y = std::move(y5);
            k1 = std::move(k7);  // FSAL
            if (stop && stop(t, y)) {
                sol.t.push_back(t);
                sol.y.push_back(y);
                sol.truncated = true;
                sol.truncation_reason = "stop predicate at t = " + std::to_string(t);
                return sol;
            }
            sol.t.push_back(t);
            sol.y.push_back(y);
        }

        double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        fac = std::min(5.0, std::max(0.2, fac));
        h = std::abs(hs) * fac;
        if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
    }
    return sol;
}

} // namespace soliton
