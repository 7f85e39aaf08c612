#include "soliton/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace soliton {

void Interval::validate() const {
    if (!(lo < hi)) throw DomainError("Interval: lo must be < hi");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        if (!(lo <= -1e300 || hi >= 1e300))
            throw DomainError("Interval: bounds must be finite or sentinel-infinite");
}

Interval Interval::interior(double margin) const {
    double w = hi - lo;
    return {lo + margin * w, hi - margin * w};
}

ScalarProfile::ScalarProfile(Fn value, Fn d1, Fn d2, Interval domain)
    : value_(std::move(value)), d1_(std::move(d1)), d2_(std::move(d2)), domain_(domain) {
    domain_.validate();
    if (!value_ || !d1_ || !d2_)
        throw DomainError("ScalarProfile: all three channels are required");
}

ScalarProfile ScalarProfile::constant(double c, Interval domain) {
    return ScalarProfile([c](double) { return c; }, [](double) { return 0.0; },
                         [](double) { return 0.0; }, domain);
}

double ScalarProfile::eval(const Fn& f, double xi) const {
    if (!f) throw DomainError("ScalarProfile: empty profile");
    if (!domain_.contains(xi)) {
        std::ostringstream os;
        os << "ScalarProfile: xi = " << xi << " outside domain (" << domain_.lo << ", "
           << domain_.hi << ")";
        throw DomainError(os.str());
    }
    double v = f(xi);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "ScalarProfile: non-finite value at xi = " << xi;
        throw NumericError(os.str());
    }
    return v;
}

ScalarProfile ScalarProfile::shifted(double c) const {
    ScalarProfile out = *this;
    Fn base = value_;
    out.value_ = [base, c](double xi) { return base(xi) + c; };
    return out;
}

HermiteSeries::HermiteSeries(std::vector<double> xi, std::vector<double> value,
                             std::vector<double> slope)
    : xi_(std::move(xi)), value_(std::move(value)), slope_(std::move(slope)) {
    if (xi_.size() < 2 || xi_.size() != value_.size() || xi_.size() != slope_.size())
        throw DomainError("HermiteSeries: need >= 2 nodes with matching values and slopes");
    if (!std::is_sorted(xi_.begin(), xi_.end()))
        throw DomainError("HermiteSeries: nodes must be sorted");
}

double HermiteSeries::eval(double x) const {
    if (x < xi_.front() || x > xi_.back())
        throw DomainError("HermiteSeries: query outside node range");
    auto it = std::upper_bound(xi_.begin(), xi_.end(), x);
    size_t j = (it == xi_.begin()) ? 0 : static_cast<size_t>(it - xi_.begin()) - 1;
    if (j >= xi_.size() - 1) j = xi_.size() - 2;

    double hseg = xi_[j + 1] - xi_[j];
    double t = (x - xi_[j]) / hseg;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1;
    double h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2;
    double h11 = t3 - t2;
    return h00 * value_[j] + h10 * hseg * slope_[j] + h01 * value_[j + 1] +
           h11 * hseg * slope_[j + 1];
}

void ProfileTriple::validate_positivity(int samples) const {
    Interval in = domain.interior(1e-6);
    for (int i = 0; i < samples; ++i) {
        double xi = in.lo + (in.hi - in.lo) * i / (samples - 1);
        if (!(f.value(xi) > 0.0))
            throw DomainError("ProfileTriple: f must be positive on the domain");
        if (!(phi.value(xi) > 0.0))
            throw DomainError("ProfileTriple: phi must be positive on the domain");
    }
}

ScalarField pullback_field(const ScalarProfile& p, const Vector& alpha) {
    const int n = static_cast<int>(alpha.size());
    auto xi_of = [alpha](const Point& x) { return alpha.dot(x); };
    return ScalarField(
        n, [p, xi_of](const Point& x) { return p.value(xi_of(x)); },
        [p, xi_of, alpha](const Point& x) { return Vector(p.d1(xi_of(x)) * alpha); },
        [p, xi_of, alpha](const Point& x) {
            return Matrix(p.d2(xi_of(x)) * (alpha * alpha.transpose()));
        });
}

} // namespace soliton
