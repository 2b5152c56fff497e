#pragma once

#include <cstdint>

#include "miclust/types.hpp"

namespace miclust {

class StochasticMatrix;

/// Joint probability matrix of two finite random variables: non-negative
/// N1 x N2 entries summing to 1, with both marginals cached at construction.
class JointDistribution {
 public:
  /// Validates non-negativity and total mass (within the construction
  /// tolerance); does not rescale.
  explicit JointDistribution(Matrix p);

  [[nodiscard]] const Matrix& p() const { return p_; }
  [[nodiscard]] const Vector& mu1() const { return mu1_; }
  [[nodiscard]] const Vector& mu2() const { return mu2_; }
  [[nodiscard]] Index rows() const { return p_.rows(); }
  [[nodiscard]] Index cols() const { return p_.cols(); }
  [[nodiscard]] bool is_square() const { return p_.rows() == p_.cols(); }

 private:
  Matrix p_;
  Vector mu1_;  // row sums
  Vector mu2_;  // column sums
};

/// Symmetric non-negative matrix of pairwise distances.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(Matrix d);

  [[nodiscard]] const Matrix& d() const { return d_; }
  [[nodiscard]] Index size() const { return d_.rows(); }

 private:
  Matrix d_;
};

/// Non-negative co-occurrence counts with positive total.
class CountMatrix {
 public:
  explicit CountMatrix(Matrix c);

  [[nodiscard]] const Matrix& c() const { return c_; }

 private:
  Matrix c_;
};

/// P = C / total count.
JointDistribution from_counts(const CountMatrix& c);

/// Boltzmann matrix P_ij = exp(-sigma d_ij) / Z. Exactly symmetric.
JointDistribution from_distances(const DistanceMatrix& d, double sigma);

/// P = diag(mu) for a probability vector mu.
JointDistribution from_diagonal(const Vector& mu);

/// Strictly positive random joint, entries uniform on (0.1, 1) before
/// normalization; identical output for identical seeds.
JointDistribution random_joint(Index n1, Index n2, std::uint64_t seed);

enum class Conditional {
  kColumnsGivenRows,  // W(2|1) = diag(mu1)^-1 P, shape N1 x N2
  kRowsGivenColumns,  // W(1|2) = diag(mu2)^-1 P', shape N2 x N1
};

/// Conditional distribution along one axis. Errors if any conditioning
/// marginal entry is zero (the offending 1-based index is named).
StochasticMatrix conditional(const JointDistribution& p, Conditional direction);

/// Euclidean pairwise distances of row-vector points (one point per row).
DistanceMatrix distances_from_points(const Matrix& points);

}  // namespace miclust
