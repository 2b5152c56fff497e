#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace miclust {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thrown when an exhaustive operation would exceed its enumeration budget.
/// The CLI maps this to a dedicated exit code, distinct from input errors.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Single knob for the construction-identity tolerance (default 1e-12).
/// Consistency checks of builders and matrix types read it at call time.
class Tolerances {
 public:
  static double construction();
  static void set_construction(double tol);
};

}  // namespace miclust
