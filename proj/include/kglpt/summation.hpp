#pragma once

#include <span>
#include <vector>

#include "kglpt/perturbation.hpp"

namespace kglpt {

/// Cumulative sums S_k = E_0 + ... + E_k.
struct PartialSumSequence
{
    std::vector<double> corrections;
    std::vector<double> sums;

    int max_order() const noexcept { return static_cast<int>(sums.size()) - 1; }
};

PartialSumSequence partial_sums(std::span<const double> corrections);

template <std::floating_point Real>
PartialSumSequence partial_sums(const EnergyExpansion<Real>& expansion)
{
    std::vector<double> c(expansion.corrections.begin(), expansion.corrections.end());
    return partial_sums(std::span<const double>(c));
}

/// 100 |e_pert - e_ref| / |e_ref|.
double percent_error(double e_pert, double e_ref);

enum class AveragingRule
{
    Consecutive, // any neighbouring pair (S_k, S_{k+1}), 1 <= k < K
    EvenOdd,     // only pairs (S_k, S_{k+1}) with k even, k >= 2
};

struct StabilizedEstimate
{
    double value = 0.0;
    int index = 0; // k* of the pair (S_k*, S_k*+1)
};

/// Averages the pair of partial sums where the upper and lower subsequences
/// come closest. When the increments E_2..E_K never change sign the tail is
/// monotone and the estimate is the mean of the last two sums.
StabilizedEstimate stabilized_estimate(const PartialSumSequence& seq,
                                       AveragingRule rule = AveragingRule::Consecutive);

} // namespace kglpt
