#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "miclust/joint_distribution.hpp"
#include "miclust/models.hpp"
#include "miclust/solvers.hpp"
#include "miclust/types.hpp"

namespace miclust {

/// Outcome of one empirical check. `violations` counts events against the
/// claim under test; for the counterexample search the recorded events are
/// the sought witnesses and `pass` means at least one was found. Every
/// witness is self-contained and replayable through replay_witness.
struct Report {
  std::string claim;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double worst_margin_bits = 0.0;
  std::vector<nlohmann::json> witnesses;
  bool pass = false;
  nlohmann::json metadata;
};

struct TrialSizes {
  int n1_max = 5;
  int n2_max = 5;
  std::vector<int> m_values{2, 3};
  int l_max = 4;  // feature dimension (Gramian sampling)
};

/// Random soft assignments must not beat the exhaustive hard optimum by
/// more than 1e-9 bits (kinds: cocluster, cluster, deterministic-ib).
Report check_hard_dominance(ProblemKind kind, int trials, const TrialSizes& sizes,
                            std::uint64_t seed, int soft_trials = 50,
                            double beta = 1.0, int threads = 1);

/// For P = diag(mu): pairwise and co-cluster optima coincide, no
/// deterministic pair beats the best single assignment, and the optimum
/// equals the best clustered-marginal entropy.
Report check_diagonal_equivalence(const Vector& mu, int m);

/// Aggregate of check_diagonal_equivalence over random mu.
Report run_diagonal_suite(int trials, int n_max, const std::vector<int>& m_values,
                          std::uint64_t seed, int threads = 1);

/// The pairwise optimum of a lifted joint attains I(Q) at the lifting map
/// (up to relabeling); UV = I and the lumped chain has equal rows within
/// clusters.
Report check_lifted_recovery(const JointDistribution& q,
                             const DeterministicAssignment& v, const Vector& nu,
                             int m);

/// Aggregate of check_lifted_recovery over random models.
Report run_lifted_suite(int trials, int n_max, int m_max, std::uint64_t seed,
                        int threads = 1);

/// Soft ascent vs hard pairwise optimum on a Gramian joint, plus the
/// exact three-variable identity I(Y1;Y2) = I(Z;Y1) + I(Z;Y2) - I(Z;Y1,Y2)
/// evaluated on the explicit joint of (Z, Y1, Y2) at the hard optimum.
Report check_gramian_pairwise(const Matrix& a, int m, int restarts,
                              std::uint64_t seed);

/// Aggregate of check_gramian_pairwise over random feature matrices.
Report run_gramian_suite(int trials, int n_max, int l_max, int m,
                         std::uint64_t seed, int threads = 1);

/// Soft ascent vs hard pairwise optimum on a Boltzmann joint; also solves
/// the co-clustering relaxation exactly and records whether some optimal
/// pair uses the same assignment twice.
Report check_boltzmann_pairwise(const DistanceMatrix& d, double sigma, int m,
                                int restarts, std::uint64_t seed);

/// Aggregate over random planar point sets and a small sigma ladder.
Report run_boltzmann_suite(int trials, int n_max, int m, std::uint64_t seed,
                           int threads = 1);

/// Randomized search for instances where two distinct lifted hard
/// assignments beat both same-assignment values, refuting the sufficient
/// condition for Gramian hard optimality. Passes iff a witness is found.
Report search_sufficient_condition_counterexample(int trials,
                                                  const TrialSizes& sizes,
                                                  std::uint64_t seed,
                                                  int threads = 1);

/// The worked 3 x 3 pairwise example: hard values {0.0281, 0.0288,
/// 0.0222, 0}, grid optimum 0.0316 at (1, 0.65, 0) up to relabeling.
/// When surface_csv_path is set, writes the fixed-r=1 sweep surface.
Report reproduce_example3(const std::optional<std::string>& surface_csv_path = {});

/// The embedded 3 x 3 fixture joint behind reproduce_example3.
JointDistribution example3_joint();

/// Re-evaluates a recorded witness through the public API; passes iff the
/// violation reproduces with the recorded margin (within 1e-12).
Report replay_witness(const nlohmann::json& witness);

}  // namespace miclust
