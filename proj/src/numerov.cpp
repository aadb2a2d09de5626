#include "kglpt/numerov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kglpt {

namespace {

constexpr double kRescaleAbove = 1e200;

// Root of ln r + r/beta = x. The left side is increasing and convex in t = ln r,
// so Newton from a point right of the root converges monotonically.
double invert_log_linear(double x, double beta)
{
    double t = x;
    const double bx = beta * x;
    if (x > 0 && bx > 1) {
        t = std::min(x, std::log(bx));
    }
    for (int it = 0; it < 200; ++it) {
        const double er = std::exp(t) / beta;
        const double step = (t + er - x) / (1 + er);
        t -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(t))) {
            break;
        }
    }
    return std::exp(t);
}

int sign_of(double x) { return (x > 0) - (x < 0); }

// Counts strict sign changes, ignoring exact zeros.
struct NodeCounter
{
    int last = 0;
    int nodes = 0;

    void push(double x)
    {
        const int s = sign_of(x);
        if (s == 0) {
            return;
        }
        if (last != 0 && s != last) {
            ++nodes;
        }
        last = s;
    }
};

} // namespace

void NumerovConfig::validate() const
{
    if (steps < 1000) {
        throw Error(ErrorKind::InvalidArgument, "Numerov grid needs at least 1000 steps");
    }
    if (!(energy_tol > 0)) {
        throw Error(ErrorKind::InvalidArgument, "energy tolerance must be positive");
    }
    if (!(match_fraction > 0 && match_fraction < 1)) {
        throw Error(ErrorKind::InvalidArgument, "match_fraction must lie in (0, 1)");
    }
    if (r_min < 0 || r_max < 0 || beta < 0) {
        throw Error(ErrorKind::InvalidArgument, "grid radii must be non-negative (0 = automatic)");
    }
    if (r_min > 0 && r_max > 0 && !(r_min < r_max)) {
        throw Error(ErrorKind::InvalidArgument, "need r_min < r_max");
    }
    if (max_iter < 1) {
        throw Error(ErrorKind::InvalidArgument, "max_iter must be positive");
    }
}

double effective_coefficient(const PotentialFunction& potential, const QuantumState& state, double energy,
                             double r)
{
    const double mass = state.m + potential.w(r);
    const double kinetic = energy - potential.v(r);
    return mass * mass - kinetic * kinetic + static_cast<double>(state.l) * (state.l + 1) / (r * r);
}

double origin_exponent(const PotentialFunction& potential, const QuantumState& state)
{
    const double probe = 1e-10 / state.m;
    const double v0 = probe * potential.v(probe);
    const double w0 = probe * potential.w(probe);
    const double half_l = state.l + 0.5;
    const double disc = w0 * w0 - v0 * v0 + half_l * half_l;
    if (disc < 0) {
        throw Error(ErrorKind::NegativeDiscriminant, "W0^2 - V0^2 + (l+1/2)^2 < 0 at the origin");
    }
    return 0.5 + std::sqrt(disc);
}

NumerovSolver::NumerovSolver(const PotentialFunction& potential, const QuantumState& state,
                             const NumerovConfig& config, double reference_energy)
  : state_(state)
  , config_(config)
{
    state_.validate();
    config_.validate();
    const double m = state_.m;
    const double mu_sq = m * m - reference_energy * reference_energy;
    if (!(mu_sq > 0)) {
        throw Error(ErrorKind::InvalidArgument, "reference energy must lie inside (-m, m)");
    }
    const double mu = std::sqrt(mu_sq);
    const double r_min = config_.r_min > 0 ? config_.r_min : 1e-6 / m;
    const double r_max = config_.r_max > 0 ? config_.r_max : 40.0 / mu;
    const double beta = config_.beta > 0 ? config_.beta : 1.0 / mu;
    if (!(r_min < r_max)) {
        throw Error(ErrorKind::InvalidArgument, "grid needs r_min < r_max");
    }

    const auto count = static_cast<std::size_t>(config_.steps) + 1;
    r_.resize(count);
    sqrt_jac_.resize(count);
    jac_sq_.resize(count);
    jac_term_.resize(count);

    if (config_.grid == GridKind::Uniform) {
        h_ = (r_max - r_min) / config_.steps;
        for (std::size_t i = 0; i < count; ++i) {
            r_[i] = r_min + static_cast<double>(i) * h_;
            sqrt_jac_[i] = 1.0;
            jac_sq_[i] = 1.0;
            jac_term_[i] = 0.0;
        }
    } else {
        const double x_min = std::log(r_min) + r_min / beta;
        const double x_max = std::log(r_max) + r_max / beta;
        h_ = (x_max - x_min) / config_.steps;
        for (std::size_t i = 0; i < count; ++i) {
            const double r = i == 0             ? r_min
                             : i + 1 == count   ? r_max
                                                : invert_log_linear(x_min + static_cast<double>(i) * h_, beta);
            // Derivatives of x(r) give those of r(x): r' = 1/g1 and so on.
            const double g1 = 1.0 / r + 1.0 / beta;
            const double g2 = -1.0 / (r * r);
            const double g3 = 2.0 / (r * r * r);
            const double rp = 1.0 / g1;
            const double r2_over_r1 = -g2 / (g1 * g1);
            const double r3_over_r1 = -g3 / (g1 * g1 * g1) + 3.0 * g2 * g2 / (g1 * g1 * g1 * g1);
            r_[i] = r;
            sqrt_jac_[i] = std::sqrt(rp);
            jac_sq_[i] = rp * rp;
            jac_term_[i] = 0.75 * r2_over_r1 * r2_over_r1 - 0.5 * r3_over_r1;
        }
    }

    v_.resize(count);
    w_.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        v_[i] = potential.v(r_[i]);
        w_[i] = potential.w(r_[i]);
    }
    origin_exponent_ = origin_exponent(potential, state_);
}

void NumerovSolver::fill_F(double energy, std::vector<double>& F) const
{
    const double m = state_.m;
    const double centrifugal = static_cast<double>(state_.l) * (state_.l + 1);
    F.resize(r_.size());
    for (std::size_t i = 0; i < r_.size(); ++i) {
        const double mass = m + w_[i];
        const double kinetic = energy - v_[i];
        const double f = mass * mass - kinetic * kinetic + centrifugal / (r_[i] * r_[i]);
        F[i] = jac_sq_[i] * f + jac_term_[i];
    }
}

NumerovSolver::Sweep NumerovSolver::outward(const std::vector<double>& F, std::size_t last) const
{
    const double t = h_ * h_ / 12.0;
    Sweep s;
    s.u.resize(last + 1);
    s.u[0] = 1.0;
    s.u[1] = std::pow(r_[1] / r_[0], origin_exponent_) * sqrt_jac_[0] / sqrt_jac_[1];
    NodeCounter counter;
    counter.push(s.u[0]);
    counter.push(s.u[1]);
    for (std::size_t i = 1; i < last; ++i) {
        s.u[i + 1] = (2.0 * (1.0 + 5.0 * t * F[i]) * s.u[i] - (1.0 - t * F[i - 1]) * s.u[i - 1])
                     / (1.0 - t * F[i + 1]);
        if (!std::isfinite(s.u[i + 1])) {
            throw Error(ErrorKind::GridUnderflow, "outward Noumerov sweep overflowed before the match point");
        }
        if (std::abs(s.u[i + 1]) > kRescaleAbove) {
            for (std::size_t j = 0; j <= i + 1; ++j) {
                s.u[j] /= kRescaleAbove;
            }
        }
        counter.push(s.u[i + 1]);
    }
    s.nodes = counter.nodes;
    return s;
}

NumerovSolver::Sweep NumerovSolver::inward(const std::vector<double>& F, double energy, std::size_t first) const
{
    const double t = h_ * h_ / 12.0;
    const std::size_t last = r_.size() - 1;
    Sweep s;
    s.u.assign(r_.size(), 0.0);
    const double f_end = (F[last] - jac_term_[last]) / jac_sq_[last];
    const double m2e2 = state_.m * state_.m - energy * energy;
    const double kappa = std::sqrt(std::max({f_end, m2e2, 0.0}));
    s.u[last - 1] = 1.0 / sqrt_jac_[last - 1];
    s.u[last] = std::exp(-kappa * (r_[last] - r_[last - 1])) / sqrt_jac_[last];
    NodeCounter counter;
    counter.push(s.u[last]);
    counter.push(s.u[last - 1]);
    for (std::size_t i = last - 1; i > first; --i) {
        s.u[i - 1] = (2.0 * (1.0 + 5.0 * t * F[i]) * s.u[i] - (1.0 - t * F[i + 1]) * s.u[i + 1])
                     / (1.0 - t * F[i - 1]);
        if (std::abs(s.u[i - 1]) > kRescaleAbove) {
            for (std::size_t j = i - 1; j <= last; ++j) {
                s.u[j] /= kRescaleAbove;
            }
        }
        counter.push(s.u[i - 1]);
    }
    s.nodes = counter.nodes;
    return s;
}

double NumerovSolver::log_derivative_x(const std::vector<double>& F, const std::vector<double>& u,
                                       std::size_t i) const
{
    const double s = h_ * h_ / 6.0;
    return ((1.0 - s * F[i + 1]) * u[i + 1] - (1.0 - s * F[i - 1]) * u[i - 1]) / (2.0 * h_ * u[i]);
}

int NumerovSolver::count_nodes(double energy) const
{
    std::vector<double> F;
    fill_F(energy, F);
    const double t = h_ * h_ / 12.0;
    double prev = 1.0;
    double cur = std::pow(r_[1] / r_[0], origin_exponent_) * sqrt_jac_[0] / sqrt_jac_[1];
    NodeCounter counter;
    counter.push(prev);
    counter.push(cur);
    for (std::size_t i = 1; i + 1 < r_.size(); ++i) {
        double next = (2.0 * (1.0 + 5.0 * t * F[i]) * cur - (1.0 - t * F[i - 1]) * prev) / (1.0 - t * F[i + 1]);
        if (std::abs(next) > kRescaleAbove) {
            next /= kRescaleAbove;
            cur /= kRescaleAbove;
        }
        counter.push(next);
        prev = cur;
        cur = next;
    }
    return counter.nodes;
}

std::size_t NumerovSolver::match_index(double energy) const
{
    const std::size_t last = r_.size() - 1;
    const auto clamp = [last](std::size_t i) { return std::clamp<std::size_t>(i, 2, last - 2); };
    if (config_.match == MatchRule::TurningPoint) {
        std::vector<double> F;
        fill_F(energy, F);
        for (std::size_t i = last; i-- > 1;) {
            const double f = (F[i] - jac_term_[i]) / jac_sq_[i];
            if (f < 0) {
                return clamp(i);
            }
        }
    }
    const double target = config_.match_fraction * r_.back();
    const auto it = std::lower_bound(r_.begin(), r_.end(), target);
    return clamp(static_cast<std::size_t>(it - r_.begin()));
}

ShootResult NumerovSolver::shoot(double energy) const { return shoot(energy, match_index(energy)); }

ShootResult NumerovSolver::shoot(double energy, std::size_t match) const
{
    std::vector<double> F;
    fill_F(energy, F);
    const auto out = outward(F, match + 1);
    const auto in = inward(F, energy, match - 1);
    const double jump = log_derivative_x(F, out.u, match) - log_derivative_x(F, in.u, match);

    const double f_match = (F[match] - jac_term_[match]) / jac_sq_[match];
    const double m2e2 = state_.m * state_.m - energy * energy;
    const double wavenumber =
        std::max({std::sqrt(std::abs(f_match)), std::sqrt(std::max(m2e2, 0.0)), std::numeric_limits<double>::min()});
    const double dr_dx = sqrt_jac_[match] * sqrt_jac_[match];

    ShootResult result;
    result.mismatch = jump / (dr_dx * wavenumber);
    // Nodes strictly inside [0, match]; the sweep went one point further.
    NodeCounter counter;
    for (std::size_t i = 0; i <= match; ++i) {
        counter.push(out.u[i]);
    }
    result.nodes = counter.nodes;
    result.match_radius = r_[match];
    return result;
}

RadialSolution NumerovSolver::solution(double energy) const
{
    const std::size_t match = match_index(energy);
    std::vector<double> F;
    fill_F(energy, F);
    const auto out = outward(F, match + 1);
    auto in = inward(F, energy, match - 1);
    const double scale = out.u[match] / in.u[match];

    RadialSolution sol;
    sol.energy = energy;
    sol.radii = r_;
    sol.samples.resize(r_.size());
    NodeCounter counter;
    for (std::size_t i = 0; i < r_.size(); ++i) {
        const double u = i <= match ? out.u[i] : scale * in.u[i];
        sol.samples[i] = sqrt_jac_[i] * u;
        counter.push(sol.samples[i]);
    }
    sol.nodes = counter.nodes;
    const auto shot = shoot(energy, match);
    sol.mismatch = shot.mismatch;
    sol.match_radius = shot.match_radius;
    return sol;
}

ShootResult shoot(const PotentialFunction& potential, const QuantumState& state, double energy,
                  const NumerovConfig& config)
{
    return NumerovSolver(potential, state, config, energy).shoot(energy);
}

RadialSolution solve_eigenvalue(const PotentialFunction& potential, const QuantumState& state,
                                const EnergyBracket& bracket, const NumerovConfig& config)
{
    state.validate();
    config.validate();
    const double m = state.m;
    if (!(-m < bracket.lower && bracket.lower < bracket.upper && bracket.upper < m)) {
        throw Error(ErrorKind::InvalidArgument, "energy bracket must satisfy -m < lower < upper < m");
    }
    const int n = state.n;
    double lo = bracket.lower;
    double hi = bracket.upper;

    const bool auto_grid = config.r_max <= 0 || config.beta <= 0;
    NumerovSolver solver(potential, state, config, hi);
    // While the window is wide, count on a grid sized for each trial energy so the far
    // forbidden region stays inside the stencil's stability range.
    const auto count_at = [&](double e) {
        return auto_grid ? NumerovSolver(potential, state, config, e).count_nodes(e) : solver.count_nodes(e);
    };
    {
        const int n_lo = count_at(lo);
        const int n_hi = count_at(hi);
        if (n_lo > n || n_hi <= n) {
            std::ostringstream msg;
            msg << "no " << n << "-node level in [" << lo << ", " << hi << "] (node counts " << n_lo << ", "
                << n_hi << ")";
            throw Error(ErrorKind::BracketFailure, msg.str());
        }
    }
    for (int it = 0; hi - lo > 1e-4 * m && it < 4 * config.max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        (count_at(mid) <= n ? lo : hi) = mid;
    }

    auto narrow = [&](const NumerovSolver& s, double width) {
        for (int it = 0; hi - lo > width && it < 4 * config.max_iter; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            (s.count_nodes(mid) <= n ? lo : hi) = mid;
        }
    };

    if (auto_grid) {
        // Resize the grid for the isolated level and re-establish the window on it.
        NumerovSolver refined(potential, state, config, hi);
        double pad = hi - lo;
        bool ok = false;
        for (int tries = 0; tries < 30; ++tries) {
            if (refined.count_nodes(lo) <= n && refined.count_nodes(hi) > n) {
                ok = true;
                break;
            }
            lo = std::max(bracket.lower, lo - pad);
            hi = std::min(bracket.upper, hi + pad);
            pad *= 2;
        }
        if (!ok) {
            throw Error(ErrorKind::BracketFailure, "level window lost after grid refinement");
        }
        solver = std::move(refined);
    }
    narrow(solver, 1e-8 * m);

    const std::size_t match = solver.match_index(0.5 * (lo + hi));
    double f_lo = solver.shoot(lo, match).mismatch;
    double f_hi = solver.shoot(hi, match).mismatch;
    double energy = 0.5 * (lo + hi);
    if (sign_of(f_lo) * sign_of(f_hi) < 0) {
        // Illinois variant of regula falsi on the matching mismatch.
        int side = 0;
        for (int it = 0; it < config.max_iter && hi - lo > config.energy_tol; ++it) {
            double e = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
            if (!(e > lo && e < hi)) {
                e = 0.5 * (lo + hi);
            }
            const double f = solver.shoot(e, match).mismatch;
            energy = e;
            if (f == 0) {
                break;
            }
            if (sign_of(f) == sign_of(f_lo)) {
                lo = e;
                f_lo = f;
                if (side == -1) {
                    f_hi *= 0.5;
                }
                side = -1;
            } else {
                hi = e;
                f_hi = f;
                if (side == 1) {
                    f_lo *= 0.5;
                }
                side = 1;
            }
        }
    } else {
        // Mismatch did not bracket; fall back to the node-count boundary.
        narrow(solver, config.energy_tol);
        energy = 0.5 * (lo + hi);
    }

    RadialSolution sol = solver.solution(energy);
    if (sol.nodes != n) {
        std::ostringstream msg;
        msg << "converged solution at E = " << energy << " has " << sol.nodes << " nodes, expected " << n;
        throw Error(ErrorKind::BracketFailure, msg.str());
    }
    return sol;
}

} // namespace kglpt
