#pragma once

#include <stdexcept>
#include <string>

namespace specdpp {

// Bad input: out-of-range argument, invalid point, cut-locus violation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedOrderError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A numerical invariant that should hold by construction did not
// (rejection envelope exceeded, degenerate feature vector).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateFeatureError : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

}  // namespace specdpp
