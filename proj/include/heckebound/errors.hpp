#ifndef HECKEBOUND_ERRORS_HPP
#define HECKEBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heckebound {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input is valid but outside what this library computes (e.g. non-coprime T_n).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact path unavailable (character of order > 2); a numeric path exists.
class NotExactlySupported : public UnsupportedError {
 public:
  using UnsupportedError::UnsupportedError;
};

/// Certified interval arithmetic could not decide a comparison.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// External data contradicts a schema or a theorem.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heckebound

#endif
