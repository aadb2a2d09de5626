#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kglpt {

/// Failure categories raised by the library.
///
/// Domain errors describe inputs for which no regular bound state (or no
/// well-defined expansion) exists. Convergence errors come from the numerical
/// machinery: a non-finite recursion table or a shooting solve that cannot
/// isolate the requested level.
enum class ErrorKind
{
    InvalidArgument,
    NegativeDiscriminant,
    NoBoundState,
    NoCoulombSingularity,
    MissingDependency,
    AboveCritical,
    NoCritical,
    SingularSystem,
    DivergentTable,
    GridUnderflow,
    BracketFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for failures of the numerical procedure rather than of the input domain.
bool is_convergence_failure(ErrorKind kind) noexcept;

class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace kglpt
