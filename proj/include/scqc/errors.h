#pragma once

#include <stdexcept>
#include <string>

namespace scqc {

// All library failures derive from Error so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};
struct GridError : Error {
  using Error::Error;
};
// Hamiltonian sampler returned something non-Hermitian.
struct ModelError : Error {
  using Error::Error;
};
struct DegenerateFrameError : Error {
  using Error::Error;
};
struct ReparameterizationError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct FitError : Error {
  using Error::Error;
};
struct OptimizerError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace scqc
