#include "miclust/info_measures.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace miclust {

namespace {

void check_probability_vector(const Vector& mu, const char* who) {
  if (mu.size() < 1) {
    throw std::invalid_argument(std::string(who) + ": empty vector");
  }
  if ((mu.array() < 0.0).any()) {
    throw std::invalid_argument(std::string(who) + ": negative probability");
  }
  if (std::abs(mu.sum() - 1.0) > Tolerances::construction()) {
    throw std::invalid_argument(std::string(who) + ": probabilities sum to " +
                                std::to_string(mu.sum()));
  }
}

}  // namespace

Bits entropy(const Vector& mu) {
  check_probability_vector(mu, "entropy");
  double h = 0.0;
  for (Index k = 0; k < mu.size(); ++k) {
    const double p = mu(k);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return Bits::measure(h);
}

Bits kl_divergence(const Vector& mu, const Vector& mu_prime) {
  if (mu.size() != mu_prime.size()) {
    throw std::invalid_argument("kl_divergence: shape mismatch");
  }
  if ((mu.array() < 0.0).any() || (mu_prime.array() < 0.0).any()) {
    throw std::invalid_argument("kl_divergence: negative entry");
  }
  double d = 0.0;
  for (Index k = 0; k < mu.size(); ++k) {
    const double p = mu(k);
    if (p <= 0.0) continue;  // zero-mass terms contribute 0
    const double q = mu_prime(k);
    if (q <= 0.0) return Bits::infinity();
    d += p * std::log2(p / q);
  }
  return Bits::measure(d);
}

Bits kl_divergence(const Matrix& mu, const Matrix& mu_prime) {
  if (mu.rows() != mu_prime.rows() || mu.cols() != mu_prime.cols()) {
    throw std::invalid_argument("kl_divergence: shape mismatch");
  }
  return kl_divergence(Vector(mu.reshaped()), Vector(mu_prime.reshaped()));
}

Bits mutual_information(const JointDistribution& p) {
  const Matrix& joint = p.p();
  const Vector& mu1 = p.mu1();
  const Vector& mu2 = p.mu2();
  double mi = 0.0;
  for (Index k = 0; k < joint.rows(); ++k) {
    for (Index l = 0; l < joint.cols(); ++l) {
      const double v = joint(k, l);
      if (v <= 0.0) continue;
      const double prod = mu1(k) * mu2(l);
      if (prod <= 0.0) {
        throw std::logic_error(
            "mutual_information: positive mass at a zero-marginal cell");
      }
      mi += v * std::log2(v / prod);
    }
  }
  return Bits::measure(mi);
}

JointDistribution cluster_joint(const JointDistribution& p,
                                const StochasticMatrix& w1,
                                const StochasticMatrix& w2) {
  if (w1.items() != p.rows() || w2.items() != p.cols()) {
    throw std::invalid_argument("cluster_joint: shape mismatch");
  }
  return JointDistribution(w1.w().transpose() * p.p() * w2.w());
}

}  // namespace miclust
