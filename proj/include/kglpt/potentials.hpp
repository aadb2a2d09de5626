#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kglpt/error.hpp"

namespace kglpt {

/// Coefficients of the 1/r-prefactored expansions
///
///     V(r) = (1/r) sum_i v[i] r^i,    W(r) = (1/r) sum_i w[i] r^i
///
/// of the Lorentz-vector (time component) and Lorentz-scalar potentials,
/// in natural units hbar = c = 1. Both lists always have the same length.
template <std::floating_point Real>
class BasicCouplingSeries
{
  public:
    BasicCouplingSeries(std::vector<Real> vector_part, std::vector<Real> scalar_part)
      : v_(std::move(vector_part))
      , w_(std::move(scalar_part))
    {
        if (v_.empty() || v_.size() != w_.size()) {
            throw Error(ErrorKind::InvalidArgument,
                        "coupling series needs equal, non-empty coefficient lists");
        }
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (!std::isfinite(v_[i]) || !std::isfinite(w_[i])) {
                throw Error(ErrorKind::InvalidArgument,
                            "non-finite coupling coefficient at index " + std::to_string(i));
            }
        }
    }

    /// Highest retained power index I.
    int order() const noexcept { return static_cast<int>(v_.size()) - 1; }

    const std::vector<Real>& v() const noexcept { return v_; }
    const std::vector<Real>& w() const noexcept { return w_; }

    /// Coefficient lookups with the implicit-termination convention: negative
    /// indices contribute zero.
    Real v(int i) const { return i < 0 ? Real(0) : v_.at(static_cast<std::size_t>(i)); }
    Real w(int i) const { return i < 0 ? Real(0) : w_.at(static_cast<std::size_t>(i)); }

    friend bool operator==(const BasicCouplingSeries&, const BasicCouplingSeries&) = default;

  private:
    std::vector<Real> v_;
    std::vector<Real> w_;
};

using CouplingSeries = BasicCouplingSeries<double>;

/// Attractive Hulthen potential V = -a lam/(e^{lam r}-1), W = -b lam/(e^{lam r}-1).
struct HulthenParams
{
    double a = 0.0;      // vector coupling
    double b = 0.0;      // scalar coupling
    double lambda = 0.0; // screening, inverse length

    void validate() const;
};

/// Series order needed to compute corrections E_0..E_K.
constexpr int required_series_order(int max_order) noexcept { return max_order + 1; }

namespace detail {

template <std::floating_point Real>
std::vector<Real> hulthen_coefficients(Real coupling, Real lambda, int order)
{
    std::vector<Real> c(static_cast<std::size_t>(order) + 1, Real(0));
    c[0] = -coupling;
    for (int k = 1; k <= order; ++k) {
        Real sum = 0;
        Real factorial = 1; // (k+1-j)! built up as j runs downward
        Real power = 1;     // lam^{k-j}
        for (int j = k - 1; j >= 0; --j) {
            factorial *= static_cast<Real>(k + 1 - j);
            power *= lambda;
            sum += c[static_cast<std::size_t>(j)] * power / factorial;
        }
        c[static_cast<std::size_t>(k)] = -sum;
    }
    return c;
}

} // namespace detail

/// Expansion coefficients of the Hulthen potential up to index `order`.
template <std::floating_point Real = double>
BasicCouplingSeries<Real> hulthen_series(const HulthenParams& p, int order)
{
    p.validate();
    if (order < 0) {
        throw Error(ErrorKind::InvalidArgument, "series order must be non-negative");
    }
    const auto lambda = static_cast<Real>(p.lambda);
    return {detail::hulthen_coefficients(static_cast<Real>(p.a), lambda, order),
            detail::hulthen_coefficients(static_cast<Real>(p.b), lambda, order)};
}

/// Pure Coulomb couplings: only the 1/r strengths are nonzero.
template <std::floating_point Real = double>
BasicCouplingSeries<Real> coulomb_series(Real v0, Real w0, int order)
{
    if (order < 0) {
        throw Error(ErrorKind::InvalidArgument, "series order must be non-negative");
    }
    std::vector<Real> v(static_cast<std::size_t>(order) + 1, Real(0));
    std::vector<Real> w(v.size(), Real(0));
    v[0] = v0;
    w[0] = w0;
    return {std::move(v), std::move(w)};
}

/// Closed-form potential pair used by the numerical eigensolver.
class PotentialFunction
{
  public:
    using Evaluator = std::function<double(double)>;

    PotentialFunction(Evaluator vector_part, Evaluator scalar_part);

    /// Time-component value V(r); throws for r <= 0.
    double v(double r) const;
    /// Scalar value W(r); throws for r <= 0.
    double w(double r) const;

  private:
    Evaluator v_;
    Evaluator w_;
};

/// Hulthen pair in closed form. Below lam*r < series_threshold the factor
/// x/(e^x - 1) is evaluated from its Bernoulli series.
PotentialFunction hulthen_closed_form(const HulthenParams& p, double series_threshold = 1e-4);

/// Pure Coulomb pair V = v0/r, W = w0/r.
PotentialFunction coulomb_closed_form(double v0, double w0);

} // namespace kglpt
