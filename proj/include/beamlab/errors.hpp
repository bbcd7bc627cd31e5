#pragma once

#include <stdexcept>
#include <string>

namespace beamlab {

// Requested computation exceeds a hard implementation limit (e.g. a reduced
// state over more than two packets).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fock-space truncation is inadequate for the requested parameters.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A Bayesian update annihilated every grid weight.
struct ImpossibleEvidenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace beamlab
