#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace soliton {

/// Adaptive Dormand-Prince 5(4) initial value solver. Accepted steps are
/// recorded as output nodes; `max_step` bounds the node spacing so the
/// records can back a dense interpolant.
struct OdeOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-9;
    double max_step = 0.0;  // 0 = no bound
    double min_step = 1e-14;
    long max_steps = 2'000'000;
};

struct OdeSolution {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> y;
    bool truncated = false;      // stop predicate fired before reaching t1
    std::string truncation_reason;
};

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;
using OdeStop = std::function<bool(double, const Eigen::VectorXd&)>;

/// Integrate from t0 to t1 (either direction). Throws NumericError if the
/// step size underflows or the step budget is exhausted, reporting the last
/// good t.
OdeSolution integrate_dopri5(const OdeRhs& rhs, double t0, double t1,
                             Eigen::VectorXd y0, const OdeOptions& opt = {},
                             const OdeStop& stop = {});

} // namespace soliton
