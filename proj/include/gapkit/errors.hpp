#pragma once

#include <stdexcept>

namespace gapkit {

// A request exceeds what 64-bit arithmetic or configured memory can support.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A gap sample arrived out of order or discontinuous with the running state.
class SequencingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An exact-rational quantity was requested past the configured exact window.
class ModeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checkpoint file failed validation (digest, schema, or structure).
class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gapkit
