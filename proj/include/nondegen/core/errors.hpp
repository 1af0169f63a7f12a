#pragma once

#include <stdexcept>
#include <string>

namespace nondegen {

/// Input violates an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A bounded search or construction ran out of its budget.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// A polynomial operation would exceed the global degree cap.
class DegreeCapExceeded : public BudgetExhausted {
 public:
  explicit DegreeCapExceeded(const std::string& what) : BudgetExhausted(what) {}
};

/// A self-check on a constructed object failed. Always a bug.
class CertificateFailure : public std::logic_error {
 public:
  explicit CertificateFailure(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace nondegen
