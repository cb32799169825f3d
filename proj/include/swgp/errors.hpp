#pragma once

#include <stdexcept>
#include <string>

namespace swgp {

// Recoverable numerical failure (factorization breakdown after jitter
// escalation, near-singular update denominators, inconsistent variances).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace swgp
