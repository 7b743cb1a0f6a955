#pragma once

#include <stdexcept>
#include <string>

namespace infoconv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (normalization, dimensions, ranges).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A configured enumeration or work budget would be exceeded.
class BudgetExceeded : public Error {
public:
  BudgetExceeded(const std::string& budget, double requested, double limit);

  const std::string& budget() const noexcept { return budget_; }

private:
  std::string budget_;
};

/// Work limits shared by every operation that can blow up combinatorially.
struct Budgets {
  /// Upper bound on the number of type classes enumerated by iid_spectrum.
  double max_type_classes = 2.0e6;
  /// Upper bound on |X| * |Y| for the expanded (per-label) map synthesis path
  /// and on any explicit expansion of a compressed spectrum.
  double max_expanded_dim = 4.0e6;
  /// Upper bound on |Y|^|X| for exhaustive map enumeration.
  double brute_force_cap = 1.0e6;
};

}  // namespace infoconv
