#include "kglpt/error.hpp"

namespace kglpt {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NegativeDiscriminant: return "NegativeDiscriminant";
        case ErrorKind::NoBoundState: return "NoBoundState";
        case ErrorKind::NoCoulombSingularity: return "NoCoulombSingularity";
        case ErrorKind::MissingDependency: return "MissingDependency";
        case ErrorKind::AboveCritical: return "AboveCritical";
        case ErrorKind::NoCritical: return "NoCritical";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::DivergentTable: return "DivergentTable";
        case ErrorKind::GridUnderflow: return "GridUnderflow";
        case ErrorKind::BracketFailure: return "BracketFailure";
    }
    return "Unknown";
}

bool is_convergence_failure(ErrorKind kind) noexcept
{
    switch (kind) {
        case ErrorKind::DivergentTable:
        case ErrorKind::GridUnderflow:
        case ErrorKind::BracketFailure:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorKind kind, const std::string& message)
  : std::runtime_error(std::string(to_string(kind)) + ": " + message)
  , kind_(kind)
{
}

} // namespace kglpt
