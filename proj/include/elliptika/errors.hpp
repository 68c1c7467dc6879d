#pragma once

#include <stdexcept>
#include <string>

namespace elliptika {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of the requested function (Im tau <= 0, a pole
/// of a degenerate trig limit, a Fourier series outside its strip, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A q-series or product hit max_terms before reaching its tail target.
class TruncationNotConverged : public Error {
 public:
  using Error::Error;
};

/// Evaluation point closer than the pole guard to a pole.
class PoleProximity : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

class RadiusTooLarge : public Error {
 public:
  using Error::Error;
};

/// (a, b) violates the parity hypothesis of the elliptic identity.
class NotAdmissible : public Error {
 public:
  using Error::Error;
};

/// (a, b) violates the parity hypothesis of a trigonometric identity.
class ParityViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace elliptika
