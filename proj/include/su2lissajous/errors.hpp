#pragma once

#include <stdexcept>
#include <string>

namespace su2lissajous {

/// Input outside the mathematical domain of an operation (bad λ, p < 1, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The untwisted variable z̃ has no phase because the corresponding mode
/// amplitude vanishes (line orbit).
class DegenerateOrbitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Stereographic projection of the projection pole itself.
class PointAtInfinityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace su2lissajous
