#pragma once

#include <stdexcept>
#include <string>

namespace nodal {

// Raised for malformed inputs: wrong sphere dimension, non-unit points,
// mismatched coefficient lengths, out-of-range degrees.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The rows of a subspace sample do not span an n-dimensional subspace.
class RankDeficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation hit a non-isolated zero set (e.g. a great circle contained
// in a nodal line) and has no finite answer.
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The embedding identified two points that are neither equal nor in the
// expected fiber. Indicates a bug in the basis.
class UnexpectedFiber : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nodal
