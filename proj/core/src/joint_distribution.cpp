#include "miclust/joint_distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "miclust/rng.hpp"
#include "miclust/stochastic.hpp"

namespace miclust {

namespace {

double tol() { return Tolerances::construction(); }

}  // namespace

JointDistribution::JointDistribution(Matrix p) : p_(std::move(p)) {
  if (p_.rows() < 1 || p_.cols() < 1) {
    throw std::invalid_argument("JointDistribution: empty matrix");
  }
  if ((p_.array() < 0.0).any()) {
    throw std::invalid_argument("JointDistribution: negative entry");
  }
  const double total = p_.sum();
  if (std::abs(total - 1.0) > tol()) {
    throw std::invalid_argument("JointDistribution: total mass " +
                                std::to_string(total) + " is not 1");
  }
  mu1_ = p_.rowwise().sum();
  mu2_ = p_.colwise().sum().transpose();
}

DistanceMatrix::DistanceMatrix(Matrix d) : d_(std::move(d)) {
  if (d_.rows() != d_.cols() || d_.rows() < 1) {
    throw std::invalid_argument("DistanceMatrix: matrix must be square");
  }
  if ((d_.array() < 0.0).any()) {
    throw std::invalid_argument("DistanceMatrix: negative distance");
  }
  if ((d_ - d_.transpose()).cwiseAbs().maxCoeff() > tol()) {
    throw std::invalid_argument("DistanceMatrix: matrix is not symmetric");
  }
}

CountMatrix::CountMatrix(Matrix c) : c_(std::move(c)) {
  if (c_.rows() < 1 || c_.cols() < 1) {
    throw std::invalid_argument("CountMatrix: empty matrix");
  }
  if ((c_.array() < 0.0).any()) {
    throw std::invalid_argument("CountMatrix: negative count");
  }
  if (c_.sum() <= 0.0) {
    throw std::invalid_argument("CountMatrix: total count must be positive");
  }
}

JointDistribution from_counts(const CountMatrix& c) {
  return JointDistribution(c.c() / c.c().sum());
}

JointDistribution from_distances(const DistanceMatrix& d, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("from_distances: sigma must be positive");
  }
  const Index n = d.size();
  Matrix p(n, n);
  // Fill the upper triangle and mirror so P is exactly symmetric even when
  // d carries sub-tolerance asymmetry.
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double v = std::exp(-sigma * d.d()(i, j));
      p(i, j) = v;
      p(j, i) = v;
    }
  }
  return JointDistribution(p / p.sum());
}

JointDistribution from_diagonal(const Vector& mu) {
  if (mu.size() < 1 || (mu.array() < 0.0).any()) {
    throw std::invalid_argument("from_diagonal: invalid probability vector");
  }
  if (std::abs(mu.sum() - 1.0) > tol()) {
    throw std::invalid_argument("from_diagonal: probabilities do not sum to 1");
  }
  Matrix p = Matrix::Zero(mu.size(), mu.size());
  p.diagonal() = mu;
  return JointDistribution(std::move(p));
}

JointDistribution random_joint(Index n1, Index n2, std::uint64_t seed) {
  if (n1 < 1 || n2 < 1) {
    throw std::invalid_argument("random_joint: sizes must be >= 1");
  }
  rng::Engine gen(seed);
  Matrix p(n1, n2);
  for (Index i = 0; i < n1; ++i) {
    for (Index j = 0; j < n2; ++j) {
      p(i, j) = gen.uniform(0.1, 1.0);
    }
  }
  return JointDistribution(p / p.sum());
}

StochasticMatrix conditional(const JointDistribution& p, Conditional direction) {
  const bool by_rows = direction == Conditional::kColumnsGivenRows;
  const Vector& mass = by_rows ? p.mu1() : p.mu2();
  for (Index k = 0; k < mass.size(); ++k) {
    if (mass(k) <= 0.0) {
      throw std::invalid_argument(
          std::string("conditional: zero-mass ") + (by_rows ? "row " : "column ") +
          std::to_string(k + 1) + " cannot be conditioned on");
    }
  }
  Matrix w = by_rows ? p.p() : Matrix(p.p().transpose());
  for (Index k = 0; k < w.rows(); ++k) {
    w.row(k) /= mass(k);
  }
  return StochasticMatrix(std::move(w));
}

DistanceMatrix distances_from_points(const Matrix& points) {
  const Index n = points.rows();
  if (n < 1) {
    throw std::invalid_argument("distances_from_points: no points");
  }
  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double v = (points.row(i) - points.row(j)).norm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return DistanceMatrix(std::move(d));
}

}  // namespace miclust
