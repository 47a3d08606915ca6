#pragma once

#include <stdexcept>
#include <string>

namespace gwregion {

/// A precondition on an argument was violated (value outside its domain).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The queried (alpha, beta) lies outside the projection region I0*.
class OutsideRegionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A bracketed root search was handed endpoints that do not straddle a root.
class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gwregion
