#pragma once

#include <functional>

namespace soliton {

/// Adaptive Simpson quadrature with Richardson correction. `abs_tol` is an
/// absolute tolerance for the whole interval; throws NumericError (with the
/// offending subinterval) if the recursion depth cap is reached before the
/// local error estimate falls under the budget.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 48);

} // namespace soliton
