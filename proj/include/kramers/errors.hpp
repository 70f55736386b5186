#pragma once

#include <stdexcept>
#include <string>

namespace kramers {

/// Base class of every numerical-failure exception thrown by this library.
/// Input/usage mistakes (bad argument ranges, malformed configs) throw
/// std::invalid_argument instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An argument was NaN or infinite where a finite value is required.
struct NonFiniteInput : Error {
  using Error::Error;
};

/// Evaluation requested exactly at an integrable singularity (the kernel at
/// alpha = 0, mu = 0). Callers integrate around the point instead.
struct SingularPoint : Error {
  using Error::Error;
};

/// An integrand returned NaN/inf at an interior quadrature node.
struct NonFiniteIntegrand : Error {
  using Error::Error;
};

/// Adaptive quadrature or a series summation exhausted its budget before
/// meeting the requested tolerance.
struct ToleranceNotReached : Error {
  using Error::Error;
};

struct PoleTooCloseToBoundary : Error {
  using Error::Error;
};

struct DivergentSeries : Error {
  using Error::Error;
};

/// Spectral density failed the boundedness check near k = 0.
struct GridTooCoarse : Error {
  using Error::Error;
};

/// q = 0 requested: the slip velocity diverges in the specular limit.
struct SpecularLimit : Error {
  using Error::Error;
};

/// Phase curve violated the continuity invariant after refinement.
struct BranchDiscontinuity : Error {
  using Error::Error;
};

/// Oscillatory Fourier integral failed to converge within its panel budget.
struct OscillatoryTolerance : Error {
  using Error::Error;
};

}  // namespace kramers
