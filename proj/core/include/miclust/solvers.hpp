#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "miclust/bits.hpp"
#include "miclust/info_measures.hpp"
#include "miclust/joint_distribution.hpp"
#include "miclust/stochastic.hpp"
#include "miclust/types.hpp"

namespace miclust {

enum class ProblemKind { kCoCluster, kCluster, kPairwise, kDeterministicIb };

std::string to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& name);

/// One of the three clustering problems, or the deterministic-IB variant.
/// m1 is the cluster count of the (first) assignment; m2 applies to the
/// second side of co-clustering only; beta to deterministic-IB only.
struct ProblemSpec {
  ProblemKind kind;
  JointDistribution p;
  int m1 = 0;
  int m2 = 0;
  double beta = 0.0;

  ProblemSpec(ProblemKind kind, JointDistribution p, int m1, int m2 = 0,
              double beta = 0.0);
};

// Objective evaluations, each a composition through cluster_joint /
// mutual_information so that reported values are reproducible from the
// returned assignments.
double cocluster_objective_bits(const JointDistribution& p,
                                const StochasticMatrix& w1,
                                const StochasticMatrix& w2);
double cluster_objective_bits(const JointDistribution& p, const StochasticMatrix& w);
double dib_objective_bits(const JointDistribution& p, const StochasticMatrix& w,
                          double beta);
double pairwise_objective_bits(const JointDistribution& p, const StochasticMatrix& w);

/// Pairwise value of a hard assignment. The assignment is canonicalized
/// before evaluation, so every member of a relabeling orbit yields the
/// bit-identical value.
double pairwise_assignment_value_bits(const JointDistribution& p,
                                      const DeterministicAssignment& v);

/// A hard optimum candidate: one assignment (cluster/pairwise kinds) or a
/// pair (co-clustering).
struct AssignmentPair {
  DeterministicAssignment first;
  std::optional<DeterministicAssignment> second;
};

/// One recorded (assignment, objective) evaluation of a hard solver.
struct Evaluation {
  AssignmentPair assignment;
  double value_bits;
};

struct SolveResult {
  ProblemKind kind;

  // Hard solvers fill the assignment pair; soft solvers fill the matrices.
  std::optional<DeterministicAssignment> hard1;
  std::optional<DeterministicAssignment> hard2;
  std::optional<StochasticMatrix> soft1;
  std::optional<StochasticMatrix> soft2;

  Bits objective{0.0};

  /// All tied optima in enumeration order (hard solvers only; ties are
  /// exact floating-point equality over canonical representatives).
  std::vector<AssignmentPair> argmax_set;

  /// Full evaluation table when HardSolveOptions::record_evaluations.
  std::vector<Evaluation> evaluations;

  struct Diagnostics {
    std::uint64_t evaluations = 0;  // vertices or objective evaluations
    std::uint64_t iterations = 0;   // accepted steps / fixed-point sweeps
    int restarts = 0;
    bool converged = true;
    double wall_ms = 0.0;                 // volatile; excluded from files
    std::vector<double> objective_trace;  // IB Lagrangian per iteration
    double relevance_bits = 0.0;          // IB: I(PW)
    double compression_bits = 0.0;        // IB: I(diag(mu2) W)
  } diagnostics;
};

struct HardSolveOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  bool surjective_only = false;
  bool dedupe_labels = true;
  bool record_evaluations = false;
};

/// Exhaustive maximizer of I(W1' P W2) over deterministic pairs.
SolveResult solve_cocluster_hard(const JointDistribution& p, int m1, int m2,
                                 const HardSolveOptions& opts = {});

/// Exhaustive maximizer of I(PV), or of I(PV) - beta H(mu2' V) when beta
/// is given (the deterministic information bottleneck).
SolveResult solve_cluster_hard(const JointDistribution& p, int m2,
                               std::optional<double> beta = std::nullopt,
                               const HardSolveOptions& opts = {});

/// Exhaustive maximizer of I(V' P V) over single assignments (square P).
SolveResult solve_pairwise_hard(const JointDistribution& p, int m,
                                const HardSolveOptions& opts = {});

/// One grid sample of the pairwise sweep.
struct SweepPoint {
  std::vector<double> params;
  double value_bits;
};

struct SweepResult {
  double grid_step = 0.0;
  std::vector<std::string> param_names;
  std::vector<double> best_point;
  Bits best_value{0.0};
  std::optional<std::vector<SweepPoint>> surface;
};

struct SweepOptions {
  bool emit_surface = false;
  /// Pinned parameters by name (e.g. {"r", 1.0}); pins are excluded from
  /// the grid.
  std::vector<std::pair<std::string, double>> fixed;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

/// Full-grid evaluation of I(W' P W) over the row-simplex parametrization
/// (for m = 2, one parameter per row named p, q, r, ...). Endpoints 0 and
/// 1 are always on the grid; the first maximizer in scan order wins.
/// Deterministic grid points are evaluated through
/// pairwise_assignment_value_bits so corner values match the hard solver
/// exactly.
SweepResult sweep_pairwise(const JointDistribution& p, int m, double step,
                           const SweepOptions& opts = {});

/// Parameter names used by sweep_pairwise for an N x m problem.
std::vector<std::string> sweep_param_names(Index n, int m);

struct SoftAscentOptions {
  int restarts = 10;
  std::uint64_t seed = 0;
  double initial_step = 0.5;  // backtracking halves from here
  std::uint64_t max_iter = 100000;
  double tol = 1e-10;
};

/// Projected gradient ascent over the product of row simplices with a
/// monotone backtracking line search; returns the best restart.
SolveResult solve_soft_ascent(const ProblemSpec& spec,
                              const SoftAscentOptions& opts = {});

struct IbOptions {
  std::uint64_t max_iter = 100000;
  double tol = 1e-10;
};

/// Self-consistent information-bottleneck update: recompute the cluster
/// marginal and centroids, reweight rows by nu_j exp(-beta D_bits), then
/// row-normalize, until the largest entrywise change drops below tol.
/// Dead clusters keep their zero columns. The per-iteration Lagrangian
/// I(PW) - beta I(diag(mu2) W) is recorded in the diagnostics.
SolveResult ib_iterate(const JointDistribution& p, double beta, int m,
                       const StochasticMatrix& init, const IbOptions& opts = {});

/// Random-initialization overload (rows uniform on the simplex).
SolveResult ib_iterate(const JointDistribution& p, double beta, int m,
                       std::uint64_t seed, const IbOptions& opts = {});

namespace detail {

// Ascent internals on raw matrices (no stochasticity validation). The
// gradient carries the full per-entry derivatives, so it matches central
// finite differences of objective_value off the simplex; uniform per-row
// shifts are irrelevant after simplex projection.
double objective_value(const ProblemSpec& spec, const std::vector<Matrix>& mats);
std::vector<Matrix> objective_gradient(const ProblemSpec& spec,
                                       const std::vector<Matrix>& mats);

}  // namespace detail

}  // namespace miclust
