#pragma once

#include <stdexcept>
#include <string>

namespace wigner {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coordinate radius at or below the horizon radius 2M.
struct RadiusInsideHorizon : Error {
  using Error::Error;
};

// Polar angle too close to the coordinate axis for the requested quantity.
struct PolarSingularity : Error {
  using Error::Error;
};

// Null ray with the given constants cannot exist at the requested point
// (a radicand of the momentum components is negative).
struct ForbiddenRegion : Error {
  using Error::Error;
};

// A radial turning point lies strictly between the segment endpoints, so the
// segment is not monotone in r.
struct TurningPointInside : Error {
  using Error::Error;
};

// The requested triad gauge function is incompatible with the ray at this
// point (the frame would have to leave the real domain).
struct GaugeDomainViolation : Error {
  using Error::Error;
};

// kappa out of range for a closed-form expression (e.g. kappa >= R^2).
struct DegenerateKappa : Error {
  using Error::Error;
};

// Segment endpoints coincide where a finite radial span is required.
struct DegenerateRadii : Error {
  using Error::Error;
};

// No admissible kappa produces the requested angular sweep.
struct Unreachable : Error {
  using Error::Error;
};

// A path was asked to match a named scheme template but has the wrong shape.
struct SchemeTemplateMismatch : Error {
  using Error::Error;
};

// Scenario configuration failed validation.
struct ConfigInvalid : Error {
  using Error::Error;
};

// Malformed argument outside the named physics error conditions.
struct InvalidArgument : Error {
  using Error::Error;
};

}  // namespace wigner
