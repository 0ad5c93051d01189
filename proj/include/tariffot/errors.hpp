#pragma once

#include <stdexcept>
#include <string>

namespace tariffot {

/// Base class for all solver errors. Exit-code mapping lives in the CLI.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed problem file or bad CLI arguments.
struct ParseError : Error {
  using Error::Error;
};

/// Problem admits no feasible transport plan.
struct InfeasibleError : Error {
  using Error::Error;
};

/// Tariffs violate psi_minus(y) - psi_plus(x) <= c(x,y) on reserve pairs.
struct NoArbitrageError : Error {
  using Error::Error;
};

/// A numeric parameter is outside its admissible range.
struct ParameterError : Error {
  using Error::Error;
};

/// Hamiltonian flow ran into a non-differentiable point of H.
struct KinkCrossingError : Error {
  explicit KinkCrossingError(const std::string& what, double time)
      : Error(what), t(time) {}
  double t;
};

/// A candidate (phi_minus, J) pair fails the reserve constraints of the
/// Eulerian dual.
struct CandidateInfeasibleError : Error {
  using Error::Error;
};

/// An internal invariant was violated; indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace tariffot
