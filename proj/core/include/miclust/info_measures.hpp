#pragma once

#include "miclust/bits.hpp"
#include "miclust/joint_distribution.hpp"
#include "miclust/stochastic.hpp"
#include "miclust/types.hpp"

namespace miclust {

/// Shannon entropy -sum mu_k log2 mu_k, with 0 log 0 = 0.
Bits entropy(const Vector& mu);

/// Kullback-Leibler divergence sum mu_k log2(mu_k / mu_prime_k).
/// Zero-mass terms contribute 0; a support violation (mu_k > 0 where
/// mu_prime_k = 0) yields Bits::infinity().
Bits kl_divergence(const Vector& mu, const Vector& mu_prime);

/// Matrix overload; operands are compared entrywise (flattened).
Bits kl_divergence(const Matrix& mu, const Matrix& mu_prime);

/// I(P) = D(P || mu1 mu2') in bits.
Bits mutual_information(const JointDistribution& p);

/// Joint distribution of the clustered pair: Q = W1' P W2.
JointDistribution cluster_joint(const JointDistribution& p,
                                const StochasticMatrix& w1,
                                const StochasticMatrix& w2);

}  // namespace miclust
