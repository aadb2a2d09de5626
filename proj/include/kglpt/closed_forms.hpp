#pragma once

#include <array>
#include <vector>

#include "kglpt/perturbation.hpp"
#include "kglpt/potentials.hpp"

namespace kglpt {

/// Analytic Hulthen corrections E_0..E_5 for arbitrary l.
std::array<double, 6> hulthen_closed_corrections(const HulthenParams& p, const QuantumState& state);

struct SWaveExact
{
    double energy = 0;      // exact l = 0 eigenvalue
    double kappa = 0;       // sqrt(N~^2 + a^2 - b^2)
    double cap_n_tilde = 0; // n + 1/2 + sqrt(b^2 - a^2 + 1/4)
};

/// Exact s-wave Hulthen energy. Throws AboveCritical when the square root in
/// the energy formula turns negative.
SWaveExact exact_swave_energy(const HulthenParams& p, int n, double m);

/// Power-series expansion of the exact s-wave energy in lambda, terms E_0..E_5.
std::array<double, 6> exact_swave_expansion(const HulthenParams& p, int n, double m);

/// Screening at which the exact s-wave formula stops being real. Only a, b of
/// `couplings` are used.
double critical_lambda(const HulthenParams& couplings, int n, double m);

/// Laurent coefficients of C_k(rho) = d_k rho^{-k} for pure Coulomb couplings,
/// with rho = 2 mu r.
struct CoulombLaurent
{
    std::vector<double> d;
    double gamma = 0;
    int n = 0;
};

CoulombLaurent coulomb_d_coefficients(int n, double gamma, int max_order);

/// Coefficients a_0..a_n (a_n = 1) of the node polynomial P_n(rho) in
/// R = exp(-rho/2) rho^{1/2+gamma} P_n(rho).
std::vector<double> coulomb_polynomial(int n, double gamma);

/// Consecutive ratios a_{j-1}/a_j, j = 1..n. They follow
/// j (j + 2 gamma) / (j - n - 1), the associated-Laguerre pattern of L_n^{2 gamma}.
std::vector<double> coulomb_polynomial_check(int n, double gamma);

/// Reference value j (j + 2 gamma) / (j - n - 1) of the ratio above.
double laguerre_ratio(int j, int n, double gamma);

} // namespace kglpt
