#pragma once

#include <stdexcept>
#include <string>

namespace dlv {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexing/parsing failures; carries a character offset into the input.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t at)
      : Error(what + " (at offset " + std::to_string(at) + ")"), offset(at) {}
  std::size_t offset;
};

// Division by zero, exponential-closure violations, non-polynomial collect.
struct DomainError : Error {
  using Error::Error;
};

// A total derivative would need a jet variable beyond second order.
struct JetOrderError : Error {
  using Error::Error;
};

// Catalog instantiation with parameters violating a row restriction.
struct RestrictionError : Error {
  using Error::Error;
};

// A transform would take a system outside the reaction-diffusion class.
struct ClassError : Error {
  using Error::Error;
};

// Non-invertible or non-representable local transformation.
struct TransformError : Error {
  using Error::Error;
};

struct SamplingError : Error {
  using Error::Error;
};

struct ReductionError : Error {
  using Error::Error;
};

}  // namespace dlv
