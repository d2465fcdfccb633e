#pragma once

#include <stdexcept>
#include <string>

namespace eot {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape disagreement between points, weights, or matrices.
struct DimensionError : Error {
  using Error::Error;
};

// A scalar or vector parameter outside its admissible range.
struct InvalidParameter : Error {
  using Error::Error;
};

// Negative entry in a weight vector.
struct InvalidWeight : Error {
  using Error::Error;
};

// Zero entry where the strict simplex is required.
struct NotStrictlyPositive : Error {
  using Error::Error;
};

// Weight vector with no mass at all.
struct DegenerateMeasure : Error {
  using Error::Error;
};

// Coupling whose total plan has an empty row or column.
struct DegeneratePlan : Error {
  using Error::Error;
};

// Distance matrix that is not symmetric, nonnegative, or zero-diagonal.
struct InvalidMetric : Error {
  using Error::Error;
};

// Solver could not reach the requested accuracy (cycling, overflow, ...).
struct NumericalFailure : Error {
  using Error::Error;
};

}  // namespace eot
