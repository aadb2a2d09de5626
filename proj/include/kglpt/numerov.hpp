#pragma once

// Shooting eigensolver for the reduced radial Klein-Gordon equation
//
//     R''(r) = f(r) R(r),   f = (m + W)^2 - (E - V)^2 + l(l+1)/r^2   (hbar = c = 1)
//
// with the Noumerov three-point scheme. The grid is uniform in the mapped
// coordinate x = ln r + r/beta (logarithmic near the origin, linear far out);
// with R = sqrt(dr/dx) u the equation keeps the first-derivative-free form
// u''(x) = F(x) u(x), so the stencil applies unchanged.

#include <vector>

#include "kglpt/perturbation.hpp"
#include "kglpt/potentials.hpp"

namespace kglpt {

enum class GridKind
{
    LogLinear, // uniform in x = ln r + r/beta
    Uniform,   // uniform in r starting at r_min
};

enum class MatchRule
{
    TurningPoint, // outermost sign change of f, falling back to match_fraction
    Fraction,     // always match_fraction * r_max
};

struct NumerovConfig
{
    double r_min = 0.0;          // innermost grid radius; 0 selects 1e-6 / m
    double r_max = 0.0;          // outer cutoff; 0 selects 40 / sqrt(m^2 - E_upper^2)
    int steps = 20000;           // grid intervals
    double match_fraction = 0.5; // fallback matching radius as a fraction of r_max
    double energy_tol = 1e-13;   // absolute tolerance on the eigenvalue
    int max_iter = 200;          // cap for each root-finding phase
    double beta = 0.0;           // log-to-linear crossover radius; 0 selects 1/sqrt(m^2 - E_upper^2)
    GridKind grid = GridKind::LogLinear;
    MatchRule match = MatchRule::TurningPoint;

    void validate() const;
};

struct EnergyBracket
{
    double lower = 0.0;
    double upper = 0.0;
};

struct ShootResult
{
    double mismatch = 0.0;     // log-derivative jump at the match point, per local wavenumber
    int nodes = 0;             // nodes of the outward sweep up to the match point
    double match_radius = 0.0;
};

struct RadialSolution
{
    double energy = 0.0;
    int nodes = 0;
    std::vector<double> radii;
    std::vector<double> samples; // unnormalized R(r) on `radii`
    double mismatch = 0.0;
    double match_radius = 0.0;
};

/// f(r) for the trial energy; the ODE is R'' = f R.
double effective_coefficient(const PotentialFunction& potential, const QuantumState& state, double energy,
                             double r);

/// Origin exponent 1/2 + sqrt(W0^2 - V0^2 + (l+1/2)^2), with the Coulomb
/// strengths read off r V(r), r W(r) at a tiny radius.
double origin_exponent(const PotentialFunction& potential, const QuantumState& state);

/// Grid, cached potentials and Noumerov sweeps for one (potential, state).
class NumerovSolver
{
  public:
    NumerovSolver(const PotentialFunction& potential, const QuantumState& state, const NumerovConfig& config,
                  double reference_energy);

    const std::vector<double>& radii() const noexcept { return r_; }
    double r_max() const noexcept { return r_.back(); }

    /// Sign changes of the outward solution over the whole grid. Non-decreasing in E;
    /// it steps from n to n+1 across the n-th level.
    int count_nodes(double energy) const;

    /// Match index used for `energy` under the configured rule.
    std::size_t match_index(double energy) const;

    ShootResult shoot(double energy) const;
    ShootResult shoot(double energy, std::size_t match) const;

    /// Stitched solution at `energy` (normally a converged eigenvalue).
    RadialSolution solution(double energy) const;

  private:
    struct Sweep
    {
        std::vector<double> u;
        int nodes = 0;
    };

    void fill_F(double energy, std::vector<double>& F) const;
    Sweep outward(const std::vector<double>& F, std::size_t last) const;
    Sweep inward(const std::vector<double>& F, double energy, std::size_t first) const;
    double log_derivative_x(const std::vector<double>& F, const std::vector<double>& u, std::size_t i) const;

    QuantumState state_;
    NumerovConfig config_;
    double h_ = 0.0;
    double origin_exponent_ = 0.0;
    std::vector<double> r_;
    std::vector<double> sqrt_jac_;  // sqrt(dr/dx)
    std::vector<double> jac_sq_;    // (dr/dx)^2
    std::vector<double> jac_term_;  // Schwarzian-type term of the transformation
    std::vector<double> v_;
    std::vector<double> w_;
};

/// Mismatch and outward node count at trial energy `energy`, grid sized from `energy` itself.
ShootResult shoot(const PotentialFunction& potential, const QuantumState& state, double energy,
                  const NumerovConfig& config);

/// Eigenvalue with state.n nodes inside `bracket` (subset of (-m, m)).
RadialSolution solve_eigenvalue(const PotentialFunction& potential, const QuantumState& state,
                                const EnergyBracket& bracket, const NumerovConfig& config = {});

} // namespace kglpt
