#pragma once

#include <stdexcept>
#include <string>

namespace kuostab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BetaOutOfRange : public Error {
 public:
  using Error::Error;
};

class GammaOutOfRange : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class DivergesAtOne : public Error {
 public:
  using Error::Error;
};

/// A series, bisection or iteration did not reach its tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Phase speed inside the range of U (other than U_beta) or at a singular endpoint.
class InvalidSpeed : public Error {
 public:
  using Error::Error;
};

class NodeCountMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedIndex : public Error {
 public:
  using Error::Error;
};

/// The adaptive integrator hit its step floor.
class StepFailure : public Error {
 public:
  using Error::Error;
};

/// A root of the dispersion function sits too close to the counting contour.
class ContourAmbiguous : public Error {
 public:
  using Error::Error;
};

}  // namespace kuostab
