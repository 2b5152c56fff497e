#include "miclust/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace miclust {

namespace {

double tol() { return Tolerances::construction(); }

Vector cluster_sums(const Vector& nu, const DeterministicAssignment& v) {
  Vector sums = Vector::Zero(v.num_clusters());
  for (Index j = 0; j < v.items(); ++j) {
    sums(v.labels()[static_cast<std::size_t>(j)]) += nu(j);
  }
  return sums;
}

}  // namespace

LiftedModel lift(const JointDistribution& q, const DeterministicAssignment& v,
                 const Vector& nu) {
  const Index m = q.rows();
  const Index n = v.items();
  if (!q.is_square()) {
    throw std::invalid_argument("lift: latent joint must be square");
  }
  if (v.num_clusters() != static_cast<int>(m)) {
    throw std::invalid_argument("lift: assignment range does not match Q");
  }
  if (nu.size() != n || (nu.array() <= 0.0).any()) {
    throw std::invalid_argument("lift: nu must be strictly positive, length N");
  }

  const Vector sums = cluster_sums(nu, v);
  for (Index i = 0; i < m; ++i) {
    if (sums(i) <= 0.0) {
      throw std::invalid_argument(
          "lift: latent state " + std::to_string(i + 1) +
          " has no lifted states; the channel row would be undefined");
    }
  }

  // U_ij = nu_j V_ji / sum_k nu_k V_ki
  Matrix u = Matrix::Zero(m, n);
  for (Index j = 0; j < n; ++j) {
    const int i = v.labels()[static_cast<std::size_t>(j)];
    u(i, j) = nu(j) / sums(i);
  }

  StochasticMatrix channel(u);
  JointDistribution lifted(u.transpose() * q.p() * u);

  if ((u * v.matrix() - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > tol()) {
    throw std::logic_error("lift: UV differs from the identity");
  }
  return LiftedModel{q, v, nu, std::move(channel), std::move(lifted)};
}

LumpedChain derive_lumped_chain(const LiftedModel& model) {
  const Index m = model.q.rows();
  const Index n = model.v.items();

  Vector gamma = model.q.mu1();
  for (Index i = 0; i < m; ++i) {
    if (gamma(i) <= 0.0) {
      throw std::invalid_argument("derive_lumped_chain: latent state " +
                                  std::to_string(i + 1) +
                                  " has zero mass (absorbing)");
    }
  }

  // Rescale nu per cluster so that nu' V = gamma'. U and P are invariant
  // under this rescaling, so any positive nu is accepted.
  const Vector sums = cluster_sums(model.nu, model.v);
  Vector nu = model.nu;
  for (Index j = 0; j < n; ++j) {
    const int c = model.v.labels()[static_cast<std::size_t>(j)];
    nu(j) *= gamma(c) / sums(c);
  }

  Matrix q_tilde = model.q.p();
  for (Index i = 0; i < m; ++i) q_tilde.row(i) /= gamma(i);

  Matrix p_tilde = model.p.p();
  for (Index j = 0; j < n; ++j) p_tilde.row(j) /= nu(j);

  return LumpedChain{std::move(gamma), StochasticMatrix(std::move(q_tilde)),
                     StochasticMatrix(std::move(p_tilde))};
}

GramianModel from_features(const Matrix& a) {
  const Index n = a.rows();
  const Index l = a.cols();
  if (n < 1 || l < 1) {
    throw std::invalid_argument("from_features: empty feature matrix");
  }
  if ((a.array() <= 0.0).any()) {
    throw std::invalid_argument(
        "from_features: features must be strictly positive for P to be a "
        "probability matrix");
  }

  const Vector colsum = a.colwise().sum().transpose();
  const double gram_total = colsum.squaredNorm();  // 1' A A' 1
  Vector lambda = colsum.array().square() / gram_total;

  Matrix u(l, n);
  for (Index k = 0; k < l; ++k) {
    u.row(k) = a.col(k).transpose() / colsum(k);
  }

  JointDistribution p(u.transpose() * lambda.asDiagonal() * u);

  const Matrix gram_normalized = (a * a.transpose()) / (a * a.transpose()).sum();
  if ((p.p() - gram_normalized).cwiseAbs().maxCoeff() > tol()) {
    throw std::logic_error("from_features: P differs from the normalized Gram");
  }
  return GramianModel{a, std::move(lambda), StochasticMatrix(std::move(u)),
                      std::move(p)};
}

}  // namespace miclust
