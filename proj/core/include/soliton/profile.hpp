#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "soliton/fields.hpp"

namespace soliton {

/// Open interval of the invariant variable xi.
struct Interval {
    double lo;
    double hi;

    bool contains(double xi) const { return xi > lo && xi < hi; }
    double width() const { return hi - lo; }
    /// Shrink by `margin` fraction of the width on both ends.
    Interval interior(double margin = 0.05) const;
    void validate() const;
};

/// Smooth function of one variable with explicit first and second
/// derivative channels, valid on an open interval. Queries outside the
/// domain throw DomainError.
class ScalarProfile {
public:
    using Fn = std::function<double(double)>;

    ScalarProfile() = default;
    ScalarProfile(Fn value, Fn d1, Fn d2, Interval domain);

    static ScalarProfile constant(double c, Interval domain = {-1e300, 1e300});

    double value(double xi) const { return eval(value_, xi); }
    double d1(double xi) const { return eval(d1_, xi); }
    double d2(double xi) const { return eval(d2_, xi); }
    const Interval& domain() const { return domain_; }

    /// Same profile with the value channel shifted by a constant;
    /// derivative channels are untouched (bit-identical).
    ScalarProfile shifted(double c) const;

private:
    double eval(const Fn& f, double xi) const;

    Fn value_, d1_, d2_;
    Interval domain_{0.0, 0.0};
};

/// Piecewise cubic Hermite series on sorted nodes; slopes are supplied by
/// the caller (typically from a defining ODE or quadrature), never fitted.
/// With exact slopes on smooth monotone data the interpolant is monotone.
class HermiteSeries {
public:
    HermiteSeries() = default;
    HermiteSeries(std::vector<double> xi, std::vector<double> value, std::vector<double> slope);

    double eval(double x) const;
    double front() const { return xi_.front(); }
    double back() const { return xi_.back(); }
    size_t size() const { return xi_.size(); }
    const std::vector<double>& nodes() const { return xi_; }
    const std::vector<double>& values() const { return value_; }

private:
    std::vector<double> xi_, value_, slope_;
};

/// The (phi, f, h) data of an invariant warped-product ansatz, as profiles
/// of xi on a shared validity interval. `coupling` is the constant k with
/// phi'/phi = k f'/f for families that have one.
struct ProfileTriple {
    ScalarProfile phi;
    ScalarProfile f;
    ScalarProfile h;
    Interval domain;
    std::optional<double> coupling;

    void validate_positivity(int samples = 64) const;
};

/// Pull a profile back to a field on R^n along xi(x) = sum_i alpha_i x_i,
/// with analytic derivative channels p' alpha_i and p'' alpha_i alpha_j.
ScalarField pullback_field(const ScalarProfile& p, const Vector& alpha);

} // namespace soliton
