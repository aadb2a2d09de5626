#include "kglpt/perturbation.hpp"

namespace kglpt {

void QuantumState::validate() const
{
    if (n < 0 || l < 0) {
        throw Error(ErrorKind::InvalidArgument, "quantum numbers n and l must be non-negative");
    }
    if (!(m > 0.0) || !std::isfinite(m)) {
        throw Error(ErrorKind::InvalidArgument, "mass must be positive and finite");
    }
}

template EnergyExpansion<double> energy_corrections(const QuantumState&, const CouplingSeries&, int);

} // namespace kglpt
