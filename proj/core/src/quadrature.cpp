#include "soliton/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "soliton/errors.hpp"

namespace soliton {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth, int max_depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm))
        throw NumericError("quadrature: non-finite integrand inside [" +
                           std::to_string(a) + ", " + std::to_string(b) + "]");
    double left = simpson(fa, flm, fm, m - a);
    double right = simpson(fm, frm, fb, b - m);
    double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol || (b - a) < 1e-14 * (1.0 + std::abs(a)))
        return left + right + err / 15.0;
    if (depth >= max_depth) {
        std::ostringstream os;
        os << "quadrature did not converge on [" << a << ", " << b << "] (est. error "
           << std::abs(err) / 15.0 << ")";
        throw NumericError(os.str());
    }
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw NumericError("quadrature: non-finite integrand at an endpoint or midpoint");
    double whole = simpson(fa, fm, fb, b - a);
    return sign * adapt(f, a, b, fa, fm, fb, whole, abs_tol, 0, max_depth);
}

} // namespace soliton
