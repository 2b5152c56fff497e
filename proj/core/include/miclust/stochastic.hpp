#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "miclust/types.hpp"

namespace miclust {

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;

/// Row-stochastic N x M matrix: a soft assignment of N items to M clusters.
class StochasticMatrix {
 public:
  explicit StochasticMatrix(Matrix w);

  [[nodiscard]] const Matrix& w() const { return w_; }
  [[nodiscard]] Index items() const { return w_.rows(); }
  [[nodiscard]] Index clusters() const { return w_.cols(); }

 private:
  Matrix w_;
};

/// Hard cluster map of N items to M clusters; equivalently the 0/1
/// row-stochastic matrix with a single 1 per row. Labels are 0-based
/// internally and 1-based in serialized form.
class DeterministicAssignment {
 public:
  DeterministicAssignment(std::vector<int> labels, int num_clusters);

  [[nodiscard]] const std::vector<int>& labels() const { return labels_; }
  [[nodiscard]] int num_clusters() const { return num_clusters_; }
  [[nodiscard]] Index items() const { return static_cast<Index>(labels_.size()); }

  [[nodiscard]] Matrix matrix() const;
  [[nodiscard]] StochasticMatrix stochastic() const;

  /// Relabels clusters in order of first occurrence. Two assignments are
  /// the same partition iff their canonical forms are equal.
  [[nodiscard]] DeterministicAssignment canonical() const;

  friend bool operator==(const DeterministicAssignment& a,
                         const DeterministicAssignment& b) {
    return a.num_clusters_ == b.num_clusters_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<int> labels_;
  int num_clusters_;
};

/// Convex combination of deterministic matrices reconstructing a
/// stochastic matrix: at most N(M-1)+1 parts, weights positive and
/// summing to 1, reconstruction within 1e-9 entrywise.
class ConvexDecomposition {
 public:
  ConvexDecomposition(std::vector<double> weights,
                      std::vector<DeterministicAssignment> parts);

  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] const std::vector<DeterministicAssignment>& parts() const {
    return parts_;
  }

 private:
  std::vector<double> weights_;
  std::vector<DeterministicAssignment> parts_;
};

/// Greedy vertex peeling: repeatedly extract the deterministic matrix that
/// picks each row's largest residual entry (ties to the lowest column),
/// weighted by the smallest selected residual. Terminates within
/// N(M-1)+1 parts.
ConvexDecomposition decompose(const StochasticMatrix& w);

/// Weighted sum of the parts.
StochasticMatrix reconstruct(const ConvexDecomposition& d);

struct EnumerationOptions {
  bool surjective_only = false;  // drop assignments missing a cluster
  bool dedupe_labels = false;    // one representative per relabeling orbit
  std::uint64_t budget = kDefaultEnumerationBudget;
};

/// Number of assignments the options admit (saturating at 2^63).
std::uint64_t count_assignments(Index n, Index m, const EnumerationOptions& opts);

/// Visits assignments in lexicographic order by label vector. Throws
/// BudgetError when the count exceeds the budget.
void for_each_assignment(Index n, Index m, const EnumerationOptions& opts,
                         const std::function<void(const DeterministicAssignment&)>& fn);

/// Materialized variant of for_each_assignment.
std::vector<DeterministicAssignment> enumerate_deterministic(
    Index n, Index m, const EnumerationOptions& opts = {});

/// Rows sampled uniformly from the simplex; identical per seed.
StochasticMatrix random_stochastic(Index n, Index m, std::uint64_t seed);

/// True iff every row's largest entry is >= 1 - tol.
bool is_deterministic(const StochasticMatrix& w, double tol);

/// Nearest hard assignment (row argmax, ties to the lowest column).
DeterministicAssignment hard_assignment_of(const StochasticMatrix& w);

}  // namespace miclust
