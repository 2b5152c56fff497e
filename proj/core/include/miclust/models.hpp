#pragma once

#include "miclust/joint_distribution.hpp"
#include "miclust/stochastic.hpp"
#include "miclust/types.hpp"

namespace miclust {

/// Low-rank joint built from a latent M x M joint Q, a hard map V of N
/// states onto the M latent states, and positive state weights nu. The
/// lifting channel U is information-preserving: each lifted state belongs
/// to exactly one latent state, so I(P) = I(Q) and UV = I.
struct LiftedModel {
  JointDistribution q;        // latent joint, M x M
  DeterministicAssignment v;  // N -> M, surjective
  Vector nu;                  // length N, positive
  StochasticMatrix u;         // M x N channel
  JointDistribution p;        // lifted joint, N x N
};

/// Builds U_ij = nu_j V_ji / sum_k nu_k V_ki and P = U' Q U.
/// Errors if v misses a latent state (U would have an undefined row).
LiftedModel lift(const JointDistribution& q, const DeterministicAssignment& v,
                 const Vector& nu);

struct LumpedChain {
  Vector gamma;              // latent stationary-style marginal, Q 1
  StochasticMatrix q_tilde;  // diag(gamma)^-1 Q, M x M
  StochasticMatrix p_tilde;  // diag(nu)^-1 P, N x N, equal rows per cluster
};

/// Transition-matrix view of a lifted model. Accepts any positive nu and
/// rescales it per cluster so that nu' V = gamma (U and P are invariant
/// under per-cluster rescaling). Errors if gamma has a zero entry.
LumpedChain derive_lumped_chain(const LiftedModel& m);

/// Cosine-similarity joint: P proportional to the Gram matrix A A' of
/// strictly positive feature rows, factored as U' diag(lambda) U through
/// an L-valued latent variable.
struct GramianModel {
  Matrix a;            // N x L features, strictly positive
  Vector lambda;       // length-L probability vector
  StochasticMatrix u;  // L x N channel
  JointDistribution p; // N x N joint
};

/// Builds U = diag(1'A)^-1 A' and lambda_l = (1'A)_l^2 / sum of the Gram
/// matrix; P = U' diag(lambda) U equals the normalized Gram matrix.
GramianModel from_features(const Matrix& a);

}  // namespace miclust
