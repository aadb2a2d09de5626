#include "kglpt/summation.hpp"

#include <cmath>
#include <limits>

namespace kglpt {

PartialSumSequence partial_sums(std::span<const double> corrections)
{
    if (corrections.empty()) {
        throw Error(ErrorKind::InvalidArgument, "partial sums of an empty expansion");
    }
    PartialSumSequence seq;
    seq.corrections.assign(corrections.begin(), corrections.end());
    seq.sums.reserve(corrections.size());
    double s = 0.0;
    for (const double e : corrections) {
        s += e;
        seq.sums.push_back(s);
    }
    return seq;
}

double percent_error(double e_pert, double e_ref)
{
    if (e_ref == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "percentage error against a zero reference");
    }
    return 100.0 * std::abs(e_pert - e_ref) / std::abs(e_ref);
}

namespace {

bool increments_monotone(const PartialSumSequence& seq)
{
    const int K = seq.max_order();
    const double scale = std::abs(seq.sums.back());
    int sign = 0;
    for (int k = 2; k <= K; ++k) {
        const double inc = seq.sums[static_cast<std::size_t>(k)] - seq.sums[static_cast<std::size_t>(k - 1)];
        if (std::abs(inc) <= 1e-14 * scale) {
            continue; // structurally vanishing term
        }
        const int s = inc > 0 ? 1 : -1;
        if (sign != 0 && s != sign) {
            return false;
        }
        sign = s;
    }
    return true;
}

} // namespace

StabilizedEstimate stabilized_estimate(const PartialSumSequence& seq, AveragingRule rule)
{
    const int K = seq.max_order();
    if (K < 2) {
        throw Error(ErrorKind::InvalidArgument, "stabilized estimate needs at least S_0..S_2");
    }
    const auto S = [&seq](int k) { return seq.sums[static_cast<std::size_t>(k)]; };

    if (increments_monotone(seq)) {
        return {0.5 * (S(K - 1) + S(K)), K - 1};
    }

    const int first = rule == AveragingRule::EvenOdd ? 2 : 1;
    const int stride = rule == AveragingRule::EvenOdd ? 2 : 1;
    int best = -1;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int k = first; k < K; k += stride) {
        const double gap = std::abs(S(k + 1) - S(k));
        if (gap < best_gap) {
            best_gap = gap;
            best = k;
        }
    }
    if (best < 0) {
        // EvenOdd with K == 2 leaves no admissible pair.
        best = K - 1;
    }
    return {0.5 * (S(best) + S(best + 1)), best};
}

} // namespace kglpt
