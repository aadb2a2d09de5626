#include "kglpt/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kglpt {

namespace {

struct SWaveNumbers
{
    double cap_n_tilde;
    double kappa;
};

SWaveNumbers swave_numbers(double a, double b, int n)
{
    if (n < 0) {
        throw Error(ErrorKind::InvalidArgument, "radial quantum number must be non-negative");
    }
    const double disc = b * b - a * a + 0.25;
    if (disc < 0) {
        throw Error(ErrorKind::NegativeDiscriminant, "b^2 - a^2 + 1/4 < 0");
    }
    const double nt = n + 0.5 + std::sqrt(disc);
    const double k2 = nt * nt + a * a - b * b;
    if (k2 < 0) {
        throw Error(ErrorKind::NoBoundState, "N~^2 + a^2 - b^2 < 0");
    }
    return {nt, std::sqrt(k2)};
}

void require_mass(double m)
{
    if (!(m > 0.0) || !std::isfinite(m)) {
        throw Error(ErrorKind::InvalidArgument, "mass must be positive and finite");
    }
}

} // namespace

std::array<double, 6> hulthen_closed_corrections(const HulthenParams& p, const QuantumState& state)
{
    p.validate();
    state.validate();
    const double a = p.a;
    const double b = p.b;
    const double lam = p.lambda;
    const double m = state.m;
    const double L = static_cast<double>(state.l) * (state.l + 1);

    const double half_l = state.l + 0.5;
    const double disc = b * b - a * a + half_l * half_l;
    if (disc < 0) {
        throw Error(ErrorKind::NegativeDiscriminant, "b^2 - a^2 + (l+1/2)^2 < 0");
    }
    const double N = state.n + 0.5 + std::sqrt(disc);
    const double inner = N * N + a * a - b * b;
    if (inner < 0) {
        throw Error(ErrorKind::NoBoundState, "N^2 + a^2 - b^2 < 0");
    }

    const double e0 = m / (N * N + a * a) * (N * std::sqrt(inner) - a * b);
    const double x = a * m + b * e0; // recurring combination a m + b E0
    const double y = b * m + a * e0;
    const double mu = y / N; // sqrt(m^2 - E0^2) without cancellation
    const double mu2 = mu * mu;
    if (!(mu > 0) || !(m * m - e0 * e0 > 0)) {
        throw Error(ErrorKind::NoBoundState, "m^2 - E0^2 <= 0");
    }
    const double x2 = x * x;
    const double x4 = x2 * x2;
    const double x6 = x4 * x2;
    const double e02 = e0 * e0;
    const double m2 = m * m;
    const double m4 = m2 * m2;
    const double b2 = b * b;

    const double e1 = lam / (2 * m) * x;
    const double e2 = -lam * lam * y / (24 * x * mu2 * m) * (3 * x2 - mu2 * L);
    const double e3 = -lam * b / (2 * m) * e2;

    // Bracket shared by E4 and E5.
    const double common = 24 * a * a * a * m * m2 * b * e0 * (6 * e02 - m2)
                          + 6 * a * a * a * a * m4 * (7 * e02 - 2 * m2)
                          - a * m * mu2 * (a * m + 2 * b * e0) * (5 * L * e02 + 13 * L * m2 - 6 * m2)
                          + b2 * m2 * mu2 * (5 * L * m2 - 23 * L * e02 + 6 * e02)
                          + 6 * b2 * e02 * (22 * a * a * m2 * e02 - 2 * a * a * m4 - 5 * b2 * e02 * e02);

    const double lam4 = lam * lam * lam * lam;
    const double bracket4 = common - 6 * b2 * x2 * (13 * m4 - 28 * m2 * e02 + 5 * e02 * e02);
    const double e4 = -lam4 * y / (5760 * x * x2 * mu2 * mu2 * m * m2)
                      * (45 * (x6 + 5 * b2 * mu2 * x4) + L * bracket4);

    const double bracket5 = common - 2 * b2 * x2 * (19 * m4 - 44 * m2 * e02 - 5 * e02 * e02);
    const double e5 = lam4 * lam * b * y / (3840 * x * x2 * mu2 * mu2 * m4)
                      * (45 * x6 + 105 * b2 * mu2 * x4 + L * bracket5);

    return {e0, e1, e2, e3, e4, e5};
}

SWaveExact exact_swave_energy(const HulthenParams& p, int n, double m)
{
    p.validate();
    require_mass(m);
    const auto [nt, kappa] = swave_numbers(p.a, p.b, n);
    const double lam = p.lambda;
    const double root_arg = m * m + lam * m * p.b - lam * lam * kappa * kappa / 4;
    if (root_arg < 0) {
        std::ostringstream msg;
        msg << "lambda = " << lam << " exceeds the critical screening "
            << critical_lambda(p, n, m);
        throw Error(ErrorKind::AboveCritical, msg.str());
    }
    const double energy = (-p.a * p.b * m + lam * p.a * kappa * kappa / 2 + nt * kappa * std::sqrt(root_arg))
                          / (nt * nt + p.a * p.a);
    return {energy, kappa, nt};
}

std::array<double, 6> exact_swave_expansion(const HulthenParams& p, int n, double m)
{
    p.validate();
    require_mass(m);
    const auto [nt, kappa] = swave_numbers(p.a, p.b, n);
    const double a = p.a;
    const double b = p.b;
    const double lam = p.lambda;
    const double denom = nt * nt + a * a;
    const double k2 = kappa * kappa;

    const double e0 = m * (-a * b + nt * kappa) / denom;
    const double e1 = lam / 2 * kappa * (kappa * a + nt * b) / denom;
    const double e2 = -lam * lam / (8 * m) * nt * kappa * (k2 + b * b) / denom;
    const double e3 = -lam * b / (2 * m) * e2;
    const double e4 = lam * lam * (k2 + 5 * b * b) / (16 * m * m) * e2;
    const double e5 = -lam * lam * lam * b * (3 * k2 + 7 * b * b) / (32 * m * m * m) * e2;
    return {e0, e1, e2, e3, e4, e5};
}

double critical_lambda(const HulthenParams& couplings, int n, double m)
{
    require_mass(m);
    if (!(couplings.a >= 0) || !(couplings.b >= 0)) {
        throw Error(ErrorKind::InvalidArgument, "Hulthen couplings a, b must be >= 0");
    }
    const auto [nt, kappa] = swave_numbers(couplings.a, couplings.b, n);
    const double denom = std::sqrt(nt * nt + couplings.a * couplings.a) - couplings.b;
    if (!(denom > 0)) {
        throw Error(ErrorKind::NoCritical, "sqrt(N~^2 + a^2) <= b; no finite critical screening");
    }
    return 2 * m / denom;
}

CoulombLaurent coulomb_d_coefficients(int n, double gamma, int max_order)
{
    if (max_order < 0 || n < 0) {
        throw Error(ErrorKind::InvalidArgument, "coulomb_d_coefficients needs n >= 0 and K >= 0");
    }
    if (!(gamma > 0)) {
        throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
    }
    CoulombLaurent out{.d = {}, .gamma = gamma, .n = n};
    out.d.reserve(static_cast<std::size_t>(std::max(max_order, 2)) + 1);
    out.d.push_back(-0.5);
    out.d.push_back(n + 0.5 + gamma);
    out.d.push_back(n * (n + 2 * gamma));
    for (int k = 3; k <= max_order; ++k) {
        double dk = (1 - k) * out.d[static_cast<std::size_t>(k - 1)];
        for (int j = 1; j < k; ++j) {
            dk += out.d[static_cast<std::size_t>(j)] * out.d[static_cast<std::size_t>(k - j)];
        }
        out.d.push_back(dk);
    }
    out.d.resize(static_cast<std::size_t>(max_order) + 1);
    return out;
}

std::vector<double> coulomb_polynomial(int n, double gamma)
{
    if (n < 0) {
        throw Error(ErrorKind::InvalidArgument, "polynomial degree must be non-negative");
    }
    const auto d = coulomb_d_coefficients(n, gamma, n + 1).d;
    std::vector<double> a(static_cast<std::size_t>(n) + 1, 0.0);
    a[static_cast<std::size_t>(n)] = 1.0;
    // a_k (n - k) + sum_{j > k} a_j d_{j-k+1} = 0, solved from the top.
    for (int k = n - 1; k >= 0; --k) {
        const double pivot = n - k;
        double s = 0;
        for (int j = k + 1; j <= n; ++j) {
            s += a[static_cast<std::size_t>(j)] * d[static_cast<std::size_t>(j - k + 1)];
        }
        if (pivot == 0 || !std::isfinite(s)) {
            throw Error(ErrorKind::SingularSystem, "zero pivot in node-polynomial system");
        }
        a[static_cast<std::size_t>(k)] = -s / pivot;
    }
    return a;
}

std::vector<double> coulomb_polynomial_check(int n, double gamma)
{
    const auto a = coulomb_polynomial(n, gamma);
    std::vector<double> ratios;
    ratios.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        if (a[static_cast<std::size_t>(j)] == 0) {
            throw Error(ErrorKind::SingularSystem, "vanishing polynomial coefficient a_" + std::to_string(j));
        }
        ratios.push_back(a[static_cast<std::size_t>(j - 1)] / a[static_cast<std::size_t>(j)]);
    }
    return ratios;
}

double laguerre_ratio(int j, int n, double gamma)
{
    return j * (j + 2 * gamma) / (j - n - 1);
}

} // namespace kglpt
