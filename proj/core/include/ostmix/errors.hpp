#pragma once

#include <stdexcept>
#include <string>

namespace ostmix {

/// Base class for all ostmix errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands belong to groups with different parameters.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The group order overflows 64 bits or exceeds the exact-engine cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A rank or position lies outside its valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// A distance curve failed to cross the requested threshold before the
/// step limit. Carries the last step and distance reached.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& what, int last_step, double last_distance)
      : Error(what), last_step_(last_step), last_distance_(last_distance) {}

  int last_step() const noexcept { return last_step_; }
  double last_distance() const noexcept { return last_distance_; }

 private:
  int last_step_;
  double last_distance_;
};

}  // namespace ostmix
