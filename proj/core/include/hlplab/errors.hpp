#pragma once

#include <stdexcept>
#include <string>

namespace hlplab {

// Argument outside an operation's documented domain.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A closed-form or numeric integral provably diverges; the message names the
// offending term and endpoint.
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A piecewise function falls outside the shapes a closed-form routine
// supports; callers should switch to the numeric path.
struct UnsupportedShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A weak-norm supremum grows without bound.
struct UnboundedNormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An integrand produced a non-finite value; the message carries the abscissa.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A quadrature result did not reach its tolerance and the caller gave no way
// to receive the best-effort estimate.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hlplab
