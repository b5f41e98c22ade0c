#ifndef ADJCHAR_ERRORS_HPP
#define ADJCHAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adjchar {

/// Base class of all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// State with rho <= 0 or p <= 0 (or non-finite data).
struct NonPhysicalState : Error {
  using Error::Error;
};

/// Operation requires M >= 1 but the state is subsonic.
struct SubsonicInput : Error {
  using Error::Error;
};

/// Zero-velocity state where a flow direction is required.
struct StagnantState : Error {
  using Error::Error;
};

/// dx = 0 where the x-expanded closed forms are requested.
struct DegenerateDirection : Error {
  using Error::Error;
};

/// Malformed field file; message carries line/field position.
struct FormatError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// Query point outside the grid footprint. Signals curve termination,
/// not failure.
struct OutOfDomain : Error {
  using Error::Error;
};

struct OutOfDomainAtStart : OutOfDomain {
  using OutOfDomain::OutOfDomain;
};

struct SubsonicAtStart : SubsonicInput {
  using SubsonicInput::SubsonicInput;
};

struct MissingAdjoint : Error {
  using Error::Error;
};

struct FamilyMismatch : Error {
  using Error::Error;
};

struct TooFewPoints : Error {
  using Error::Error;
};

struct OutOfProfileDomain : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace adjchar

#endif
