#pragma once

#include <stdexcept>
#include <string>

namespace holelab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (vertex ids, probabilities, certificates).
class InputError : public Error {
public:
  using Error::Error;
};

/// Instance exceeds the hard cap of an exhaustive routine.
class SizeError : public Error {
public:
  using Error::Error;
};

/// A pair was about to be sampled twice in the same layer.
class ExposureOrderError : public Error {
public:
  using Error::Error;
};

/// An internal audit failed. Never expected in a correct build.
class InternalInvariantError : public Error {
public:
  using Error::Error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

}  // namespace detail
}  // namespace holelab
