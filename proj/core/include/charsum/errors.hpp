#pragma once

#include <stdexcept>
#include <string>

namespace charsum {

/// A numerical routine cannot meet the accuracy the caller asked for.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested computation exceeds the configured time/memory budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, double estimated_seconds)
      : std::runtime_error(what), estimated_seconds_(estimated_seconds) {}
  double estimated_seconds() const noexcept { return estimated_seconds_; }

 private:
  double estimated_seconds_;
};

}  // namespace charsum
