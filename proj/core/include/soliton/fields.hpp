#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "soliton/errors.hpp"

namespace soliton {

using Point  = Eigen::VectorXd;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Which channel produced a derivative: closed-form expressions attached to
/// the field, or central finite differences on its value channel.
enum class DerivChannel { analytic, finite_difference };

std::string to_string(DerivChannel c);

/// Central finite-difference scheme: per-axis step and order (2 or 4).
struct FDScheme {
    double step  = 1e-3;
    int    order = 2;

    void validate() const;
};

std::string format_point(const Point& x);

/// Smooth scalar function on an open subset of R^d. The value channel is
/// mandatory; closed-form gradient/Hessian channels are optional and, when
/// present, are preferred over finite differences by downstream formulas.
class ScalarField {
public:
    using ValueFn = std::function<double(const Point&)>;
    using GradFn  = std::function<Vector(const Point&)>;
    using HessFn  = std::function<Matrix(const Point&)>;

    ScalarField(int dim, ValueFn value);
    ScalarField(int dim, ValueFn value, GradFn grad, HessFn hess);

    int dim() const { return dim_; }
    bool has_analytic() const { return static_cast<bool>(grad_); }
    DerivChannel channel() const {
        return has_analytic() ? DerivChannel::analytic : DerivChannel::finite_difference;
    }

    /// Evaluate; throws NumericError naming the point if the value is not finite.
    double operator()(const Point& x) const;

    /// Gradient and Hessian through the preferred channel.
    Vector gradient(const Point& x, const FDScheme& scheme = {}) const;
    Matrix hessian(const Point& x, const FDScheme& scheme = {}) const;

private:
    int     dim_;
    ValueFn value_;
    GradFn  grad_;
    HessFn  hess_;
};

/// Metric tensor field on an open subset of R^d: point -> symmetric d x d
/// component matrix, invertible wherever queried. `regularity` is an
/// optional lower bound on the distance to the singular locus; FD stencils
/// must stay below it.
class MetricField {
public:
    using EvalFn = std::function<Matrix(const Point&)>;

    MetricField(int dim, EvalFn eval, std::optional<double> regularity = std::nullopt);

    int dim() const { return dim_; }
    std::optional<double> regularity() const { return regularity_; }

    /// Evaluate; checks symmetry (1e-14 relative) and finiteness.
    Matrix operator()(const Point& x) const;

private:
    int                   dim_;
    EvalFn                eval_;
    std::optional<double> regularity_;
};

/// Dense rank-3 coefficient array G[k](i,j), k the upper index.
class Tensor3 {
public:
    explicit Tensor3(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim * dim, 0.0) {}

    int dim() const { return dim_; }
    double& at(int k, int i, int j) { return data_[idx(k, i, j)]; }
    double at(int k, int i, int j) const { return data_[idx(k, i, j)]; }

    double max_abs() const;

private:
    size_t idx(int k, int i, int j) const {
        return (static_cast<size_t>(k) * dim_ + i) * dim_ + j;
    }
    int dim_;
    std::vector<double> data_;
};

} // namespace soliton
