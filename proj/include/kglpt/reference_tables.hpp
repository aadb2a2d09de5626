#pragma once

// Published reference values for the Hulthen p-state benchmarks
// (a = b = 1 couplings, hbar = m = c = 1). The table commands grade against these.

#include <array>

namespace kglpt::reference {

/// One row of the lambda sweep: five-correction partial sums S_5 for n = 1,
/// l = 1 and the percentage error against the numerical eigenvalue.
struct LambdaSweepRow
{
    double lambda;
    double e_vector;
    double err_vector;
    double e_scalar;
    double err_scalar;
    double e_mixed;
    double err_mixed;
};

inline constexpr std::array<LambdaSweepRow, 11> kLambdaSweep{{
    {0.05, 0.95706870, 0.00001, 0.97392119, 0.00003, 0.84245453, 0.00001},
    {0.06, 0.96113964, 0.00002, 0.97739507, 0.00008, 0.85034939, 0.00002},
    {0.07, 0.96503895, 0.00005, 0.98064017, 0.00020, 0.85805052, 0.00004},
    {0.08, 0.96876527, 0.00011, 0.98365749, 0.00045, 0.86555969, 0.00008},
    {0.09, 0.97231703, 0.00023, 0.98644772, 0.00091, 0.87287852, 0.00016},
    {0.10, 0.97569245, 0.00044, 0.98901136, 0.00171, 0.88000851, 0.00030},
    {0.11, 0.97888956, 0.00080, 0.99134866, 0.00307, 0.88695104, 0.00052},
    {0.12, 0.98190615, 0.00138, 0.99345974, 0.00527, 0.89370738, 0.00086},
    {0.13, 0.98473983, 0.00229, 0.99534457, 0.00873, 0.90027874, 0.00137},
    {0.14, 0.98738798, 0.00369, 0.99700303, 0.01414, 0.90666626, 0.00210},
    {0.15, 0.98984779, 0.00577, 0.99843492, 0.02255, 0.91287103, 0.00312},
}};

/// One column of the partial-sum sequences at lambda = 0.05, l = 1.
struct PartialSumColumn
{
    const char* label;
    double a;
    double b;
    int n;
    std::array<double, 11> sums; // S_0..S_10
    double e_num;                // numerical eigenvalue
};

inline constexpr std::array<PartialSumColumn, 6> kPartialSumColumns{{
    {"E_V(n=1)", 1.0, 0.0, 1,
     {0.9341723590, 0.9591723590, 0.9570741392, 0.9570741392, 0.9570686998, 0.9570686998, 0.9570686381,
      0.9570686381, 0.9570686368, 0.9570686368, 0.9570686367},
     0.9570686367},
    {"E_W(n=1)", 0.0, 1.0, 1,
     {0.9530618622, 0.9768884088, 0.9738581555, 0.9739339118, 0.9739202644, 0.9739211933, 0.9739209078,
      0.9739209397, 0.9739209276, 0.9739209295, 0.9739209288},
     0.9739209289},
    {"E_V+W(n=1)", 1.0, 1.0, 1,
     {0.8000000000, 0.8450000000, 0.8423958333, 0.8424609375, 0.8424540955, 0.8424545273, 0.8424544790,
      0.8424544833, 0.8424544828, 0.8424544828, 0.8424544828},
     0.8424544828},
    {"E_V(n=2)", 1.0, 0.0, 2,
     {0.9638612635, 0.9888612635, 0.9848180151, 0.9848180151, 0.9847983143, 0.9847983143, 0.9847977509,
      0.9847977509, 0.9847977150, 0.9847977150, 0.9847977119},
     0.9847977115},
    {"E_W(n=2)", 0.0, 1.0, 2,
     {0.9726183555, 0.9969338144, 0.9915208448, 0.9916561690, 0.9916167626, 0.9916195489, 0.9916177074,
      0.9916179261, 0.9916177253, 0.9916177586, 0.9916177282},
     0.9916177295},
    {"E_V+W(n=2)", 1.0, 1.0, 2,
     {0.8823529412, 0.9294117647, 0.9246200980, 0.9247398897, 0.9247202876, 0.9247216080, 0.9247213732,
      0.9247213972, 0.9247213921, 0.9247213928, 0.9247213926},
     0.9247213926},
}};

inline constexpr double kPartialSumLambda = 0.05;
inline constexpr int kPartialSumL = 1;

} // namespace kglpt::reference
