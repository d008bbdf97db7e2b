#pragma once

#include <stdexcept>
#include <string>

namespace regge {

// Thrown for malformed inputs: bad axis, non-Lorentz matrix, invalid config.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidAxis : ValidationError {
  using ValidationError::ValidationError;
};

struct DegenerateGeometry : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complex function evaluated on (or too close to) a branch cut.
struct BranchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Angle outside the region where the sector identities hold.
struct SectorViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct CertificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace regge
