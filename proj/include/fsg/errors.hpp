#pragma once

#include <stdexcept>
#include <string>

namespace fsg {

/// Malformed word text.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A labeling forced two targets for one (vertex, signed label) pair.
class FoldConflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A word could not be traced in a graph.
class NotTraceable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input-size or arithmetic-width guard was tripped.
class GuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace fsg
