#pragma once

// Logarithmic perturbation theory for the radial Klein-Gordon equation via
// hbar-expansions.
//
// The log-derivative C = R'/R and the energy are expanded order by order,
// C = sum_k C_k(r), E = sum_k E_k. Each C_k (k >= 1) is a Laurent series
//
//     C_k(r) = r^{-k} sum_i C^k_i r^i,
//
// and C_0 = C^0_0 = -sqrt(m^2 - E_0^2) is constant. The residue conditions
// C^{k+1}_k = N delta_{k,0} (N = n + 1/2 + gamma) fix the energies, so ground
// and radially excited states are handled by one recursion with no explicit
// node factors.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "kglpt/error.hpp"
#include "kglpt/potentials.hpp"

namespace kglpt {

struct QuantumState
{
    int n = 0;      // radial quantum number (node count)
    int l = 0;      // orbital quantum number
    double m = 1.0; // rest mass

    void validate() const;
};

template <std::floating_point Real>
struct EffectiveNumbers
{
    Real gamma = 0; // sqrt(W_0^2 - V_0^2 + (l+1/2)^2)
    Real cap_n = 0; // n + 1/2 + gamma
    Real mu_sq = 0; // m^2 - E_0^2, zero until E_0 is known
};

template <std::floating_point Real>
EffectiveNumbers<Real> effective_numbers(const QuantumState& state,
                                         const BasicCouplingSeries<Real>& series)
{
    state.validate();
    const Real v0 = series.v(0);
    const Real w0 = series.w(0);
    const Real half_l = static_cast<Real>(state.l) + Real(0.5);
    const Real disc = w0 * w0 - v0 * v0 + half_l * half_l;
    if (disc < 0) {
        std::ostringstream msg;
        msg << "W0^2 - V0^2 + (l+1/2)^2 = " << static_cast<double>(disc)
            << " < 0; no regular bound state";
        throw Error(ErrorKind::NegativeDiscriminant, msg.str());
    }
    EffectiveNumbers<Real> out;
    out.gamma = std::sqrt(disc);
    out.cap_n = static_cast<Real>(state.n) + Real(0.5) + out.gamma;
    return out;
}

/// Leading-order energy (upper-continuum branch). Returns m for vanishing couplings.
template <std::floating_point Real>
Real leading_energy(const QuantumState& state, const BasicCouplingSeries<Real>& series)
{
    const auto nums = effective_numbers(state, series);
    const Real v0 = series.v(0);
    const Real w0 = series.w(0);
    const Real m = static_cast<Real>(state.m);
    const Real n2 = nums.cap_n * nums.cap_n;
    const Real inner = n2 + v0 * v0 - w0 * w0;
    if (inner < 0) {
        throw Error(ErrorKind::NoBoundState, "N^2 + V0^2 - W0^2 < 0; leading energy is complex");
    }
    const Real e0 = m / (n2 + v0 * v0) * (nums.cap_n * std::sqrt(inner) - v0 * w0);
    if (!(m * m - e0 * e0 >= 0)) {
        std::ostringstream msg;
        msg << "leading energy E0 = " << static_cast<double>(e0) << " lies outside (-m, m)";
        throw Error(ErrorKind::NoBoundState, msg.str());
    }
    return e0;
}

/// Triangular table of Laurent coefficients C^k_i for 1 <= k <= max_order,
/// 0 <= i <= width, plus the constant C^0_0.
///
/// Lookups follow the recursion's conventions: C^0_i = 0 for i > 0 and any
/// negative index reads as zero. Reading an entry that has not been filled
/// throws MissingDependency.
template <std::floating_point Real>
class LaurentTable
{
  public:
    LaurentTable() = default;

    LaurentTable(Real c00, int max_order, int width)
      : c00_(c00)
      , max_order_(max_order)
      , width_(width)
      , values_(static_cast<std::size_t>(max_order) * static_cast<std::size_t>(width + 1), Real(0))
      , filled_(values_.size(), false)
    {
    }

    Real c00() const noexcept { return c00_; }
    int max_order() const noexcept { return max_order_; }
    int width() const noexcept { return width_; }

    bool contains(int k, int i) const noexcept
    {
        return k >= 1 && k <= max_order_ && i >= 0 && i <= width_ && filled_[index(k, i)];
    }

    Real operator()(int k, int i) const
    {
        if (k < 0 || i < 0) {
            return Real(0);
        }
        if (k == 0) {
            return i == 0 ? c00_ : Real(0);
        }
        if (!contains(k, i)) {
            throw Error(ErrorKind::MissingDependency,
                        "Laurent coefficient C^" + std::to_string(k) + "_" + std::to_string(i)
                            + " requested before it was computed");
        }
        return values_[index(k, i)];
    }

    void set(int k, int i, Real value)
    {
        if (k < 1 || k > max_order_ || i < 0 || i > width_) {
            throw Error(ErrorKind::InvalidArgument, "Laurent table index out of range");
        }
        values_[index(k, i)] = value;
        filled_[index(k, i)] = true;
    }

  private:
    std::size_t index(int k, int i) const noexcept
    {
        return static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(width_ + 1)
               + static_cast<std::size_t>(i);
    }

    Real c00_ = 0;
    int max_order_ = 0;
    int width_ = 0;
    std::vector<Real> values_;
    std::vector<bool> filled_;
};

template <std::floating_point Real>
struct EnergyExpansion
{
    std::vector<Real> corrections; // E_0..E_K; the physical energy is their sum
    QuantumState state;
    BasicCouplingSeries<Real> series;
    int max_order = 0;
    EffectiveNumbers<Real> numbers;
    LaurentTable<Real> table;

    Real total() const
    {
        Real s = 0;
        for (const Real e : corrections) {
            s += e;
        }
        return s;
    }
};

namespace detail {

template <std::floating_point Real>
Real coefficient_or_missing(const std::vector<Real>& c, int i, const char* name)
{
    if (i < 0) {
        return Real(0);
    }
    if (static_cast<std::size_t>(i) >= c.size()) {
        throw Error(ErrorKind::MissingDependency,
                    std::string("potential coefficient ") + name + "_" + std::to_string(i)
                        + " beyond the supplied series order");
    }
    return c[static_cast<std::size_t>(i)];
}

template <std::floating_point Real>
Real energy_or_missing(std::span<const Real> energies, int j)
{
    if (j < 0 || static_cast<std::size_t>(j) >= energies.size()) {
        throw Error(ErrorKind::MissingDependency,
                    "energy correction E_" + std::to_string(j) + " not yet available");
    }
    return energies[static_cast<std::size_t>(j)];
}

template <std::floating_point Real>
void require_finite(Real x, const char* what, int k)
{
    if (!std::isfinite(x)) {
        throw Error(ErrorKind::DivergentTable,
                    std::string(what) + " became non-finite at order " + std::to_string(k));
    }
}

} // namespace detail

/// Laurent coefficient C^k_i from the order-k, power r^{i-k} balance of the
/// Riccati hierarchy. The diagonal i == k additionally needs E_k, so it can only
/// be evaluated after the energy at that order has been fixed.
template <std::floating_point Real>
Real laurent_coefficient(int k, int i, const LaurentTable<Real>& table,
                         std::span<const Real> energies, const BasicCouplingSeries<Real>& series,
                         const QuantumState& state)
{
    if (k < 1 || i < 0) {
        throw Error(ErrorKind::InvalidArgument, "Laurent coefficient needs k >= 1 and i >= 0");
    }
    const auto& v = series.v();
    const auto& w = series.w();

    Real sum = static_cast<Real>(i - k + 1) * table(k - 1, i);
    for (int j = 1; j < k; ++j) {
        for (int p = 0; p <= i; ++p) {
            sum += table(j, p) * table(k - j, i - p);
        }
    }
    if (k == i) {
        for (int j = 0; j <= k; ++j) {
            sum += detail::energy_or_missing(energies, j) * detail::energy_or_missing(energies, k - j);
        }
    }
    sum -= 2 * detail::energy_or_missing(energies, k - 1) * detail::coefficient_or_missing(v, i - k + 1, "V");
    if (k == 2) {
        for (int p = 0; p <= i; ++p) {
            sum += detail::coefficient_or_missing(v, p, "V") * detail::coefficient_or_missing(v, i - p, "V")
                   - detail::coefficient_or_missing(w, p, "W") * detail::coefficient_or_missing(w, i - p, "W");
        }
        if (i == 0) {
            sum -= static_cast<Real>(state.l) * static_cast<Real>(state.l + 1);
        }
    }
    if (k == 1) {
        sum -= 2 * static_cast<Real>(state.m) * detail::coefficient_or_missing(w, i, "W");
    }
    return -sum / (2 * table.c00());
}

/// E_k for k >= 1 from the residue condition C^{k+1}_k = 0, solved in closed
/// form. Needs column k of the table filled except the diagonal.
template <std::floating_point Real>
Real correction_from_residue(int k, const LaurentTable<Real>& table, std::span<const Real> energies,
                             const BasicCouplingSeries<Real>& series, const QuantumState& state)
{
    if (k < 1) {
        throw Error(ErrorKind::InvalidArgument, "residue solve starts at k = 1");
    }
    const auto& v = series.v();
    const auto& w = series.w();
    auto vc = [&](int i) { return detail::coefficient_or_missing(v, i, "V"); };
    auto wc = [&](int i) { return detail::coefficient_or_missing(w, i, "W"); };
    auto e = [&](int j) { return detail::energy_or_missing(energies, j); };

    const Real c00 = table.c00();
    const Real c01 = table(1, 0);

    // Products that do not contain the diagonal C^k_k.
    Real first = 0;
    for (int j = 2; j <= k - 1; ++j) {
        for (int p = 0; p <= k; ++p) {
            first += table(j, p) * table(k + 1 - j, k - p);
        }
    }
    if (k >= 2) {
        for (int p = 1; p <= k; ++p) {
            first += 2 * table(1, p) * table(k, k - p);
        }
    }
    if (k == 1) {
        // The cross term of V^2 - W^2 at power r^{-1} appears twice.
        first += 2 * (vc(0) * vc(1) - wc(0) * wc(1));
    }

    // C^k_k without its E_0 E_k part.
    Real second = table(k - 1, k);
    for (int j = 1; j <= k - 1; ++j) {
        for (int p = 0; p <= k; ++p) {
            second += table(j, p) * table(k - j, k - p);
        }
        second += e(j) * e(k - j);
    }
    second -= 2 * e(k - 1) * vc(1);
    if (k == 2) {
        for (int j = 0; j <= 2; ++j) {
            second += vc(j) * vc(2 - j) - wc(j) * wc(2 - j);
        }
    }
    if (k == 1) {
        second -= 2 * static_cast<Real>(state.m) * wc(1);
    }

    const Real denom = 2 * (e(0) * c01 + vc(0) * c00);
    if (denom == 0) {
        throw Error(ErrorKind::DivergentTable, "E0*C^1_0 + V0*C_0 vanishes; residue equation is singular");
    }
    return c00 * c01 / denom * (first / c01 - second / c00);
}

/// Energy corrections E_0..E_K for the state and couplings.
///
/// The table is filled column by column; within column k every row except the
/// diagonal comes first, then E_k from the residue condition, then C^k_k. A
/// guard column K+1 is filled (except its diagonal) so the last residue can be
/// re-checked.
template <std::floating_point Real>
EnergyExpansion<Real> energy_corrections(const QuantumState& state,
                                         const BasicCouplingSeries<Real>& series, int max_order)
{
    state.validate();
    if (max_order < 0) {
        throw Error(ErrorKind::InvalidArgument, "maximum order K must be non-negative");
    }
    if (series.order() < required_series_order(max_order)) {
        throw Error(ErrorKind::InvalidArgument,
                    "coupling series of order " + std::to_string(series.order()) + " is too short for K = "
                        + std::to_string(max_order) + " (needs order "
                        + std::to_string(required_series_order(max_order)) + ")");
    }
    if (series.v(0) == 0 && series.w(0) == 0) {
        throw Error(ErrorKind::NoCoulombSingularity,
                    "V0 = W0 = 0: the expansion requires a Coulombic 1/r term");
    }

    EnergyExpansion<Real> out{.corrections = {},
                              .state = state,
                              .series = series,
                              .max_order = max_order,
                              .numbers = effective_numbers(state, series),
                              .table = {}};
    const Real e0 = leading_energy(state, series);
    const Real m = static_cast<Real>(state.m);
    // sqrt(m^2 - E0^2) = -(E0 V0 + m W0) / N, free of the cancellation near E0 = m.
    const Real mu = -(e0 * series.v(0) + m * series.w(0)) / out.numbers.cap_n;
    if (!(mu > 0) || !(m * m - e0 * e0 > 0)) {
        throw Error(ErrorKind::NoBoundState, "m^2 - E0^2 <= 0");
    }
    out.numbers.mu_sq = mu * mu;
    out.corrections.reserve(static_cast<std::size_t>(max_order) + 1);
    out.corrections.push_back(e0);

    const int columns = max_order + 1;
    const int width = max_order + 1;
    out.table = LaurentTable<Real>(-mu, columns, width);

    for (int k = 1; k <= columns; ++k) {
        for (int i = 0; i <= width; ++i) {
            if (i == k) {
                continue;
            }
            const Real c = laurent_coefficient<Real>(k, i, out.table, out.corrections, series, state);
            detail::require_finite(c, "Laurent coefficient", k);
            out.table.set(k, i, c);
        }
        if (k <= max_order) {
            const Real ek = correction_from_residue<Real>(k, out.table, out.corrections, series, state);
            detail::require_finite(ek, "energy correction", k);
            out.corrections.push_back(ek);
            const Real diag = laurent_coefficient<Real>(k, k, out.table, out.corrections, series, state);
            detail::require_finite(diag, "Laurent coefficient", k);
            out.table.set(k, k, diag);
        }
    }
    return out;
}

/// Re-evaluates the residue C^{k+1}_k for 0 <= k <= K; equals N at k = 0 and
/// vanishes for k >= 1 when the corrections are consistent.
template <std::floating_point Real>
Real quantization_residue(const EnergyExpansion<Real>& expansion, int k)
{
    if (k < 0 || k > expansion.max_order) {
        throw Error(ErrorKind::InvalidArgument, "residue index outside 0..K");
    }
    return laurent_coefficient<Real>(k + 1, k, expansion.table, expansion.corrections, expansion.series,
                                     expansion.state);
}

} // namespace kglpt
