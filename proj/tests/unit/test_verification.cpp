#include <cmath>

#include "doctest.h"
#include "miclust/io.hpp"
#include "miclust/rng.hpp"
#include "miclust/verification.hpp"

using namespace miclust;

TEST_SUITE_BEGIN("verification");

TEST_CASE("reproduce_example3 certifies the printed values") {
  const auto report = reproduce_example3();
  CHECK(report.pass);
  CHECK(report.violations == 0);
  const auto values = report.metadata.at("hard_values_bits");
  CHECK(std::abs(values.at(1).get<double>() - 0.0281) <= 5e-5);
  CHECK(std::abs(values.at(2).get<double>() - 0.0288) <= 5e-5);
  CHECK(std::abs(values.at(3).get<double>() - 0.0222) <= 5e-5);
  CHECK(std::abs(report.metadata.at("sweep_best_bits").get<double>() - 0.0316) <=
        5e-5);
}

TEST_CASE("hard dominance holds on random instances") {
  TrialSizes sizes;
  sizes.n1_max = 4;
  sizes.n2_max = 4;
  CHECK(check_hard_dominance(ProblemKind::kCoCluster, 20, sizes, 1, 10).pass);
  CHECK(check_hard_dominance(ProblemKind::kCluster, 20, sizes, 2, 10).pass);
  CHECK(check_hard_dominance(ProblemKind::kDeterministicIb, 20, sizes, 3, 10, 1.0)
            .pass);
  CHECK_THROWS_AS(check_hard_dominance(ProblemKind::kPairwise, 1, sizes, 1),
                  std::invalid_argument);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  TrialSizes sizes;
  sizes.n1_max = 4;
  sizes.n2_max = 4;
  const auto a = check_hard_dominance(ProblemKind::kCluster, 10, sizes, 42, 5);
  const auto b = check_hard_dominance(ProblemKind::kCluster, 10, sizes, 42, 5);
  CHECK(to_json(a).dump() == to_json(b).dump());

  // parallel aggregation must match the serial run exactly
  const auto parallel =
      check_hard_dominance(ProblemKind::kCluster, 10, sizes, 42, 5, 1.0, 4);
  CHECK(to_json(parallel).dump() == to_json(a).dump());
}

TEST_CASE("diagonal equivalence") {
  CHECK(check_diagonal_equivalence(Vector::Constant(4, 0.25), 2).pass);

  const auto degenerate = check_diagonal_equivalence(Vector{{1.0, 0.0, 0.0}}, 2);
  CHECK(degenerate.pass);
  CHECK(degenerate.metadata.at("n") == 3);

  // the balanced split carries exactly one bit
  const auto uniform = check_diagonal_equivalence(Vector::Constant(4, 0.25), 2);
  CHECK(uniform.pass);

  const auto suite = run_diagonal_suite(25, 5, {2, 3}, 7);
  CHECK(suite.pass);
  CHECK(suite.trials == 25);
}

TEST_CASE("lifted recovery") {
  const auto q = from_diagonal(Vector{{0.5, 0.5}});
  const auto diag = check_lifted_recovery(
      q, DeterministicAssignment({0, 1, 1, 0}, 2), Vector::Ones(4), 2);
  CHECK(diag.pass);
  CHECK(diag.metadata.at("target_bits").get<double>() == doctest::Approx(1.0));

  const auto identity = check_lifted_recovery(
      random_joint(3, 3, 5), DeterministicAssignment({0, 1, 2}, 3),
      Vector::Ones(3), 3);
  CHECK(identity.pass);

  // stochastic-block-model instances: symmetric Q, unit weights
  rng::Engine gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = gen.uniform_int(2, 3);
    const Index n = gen.uniform_int(m, 6);
    Matrix sym(m, m);
    for (Index i = 0; i < m; ++i) {
      for (Index j = i; j < m; ++j) {
        sym(i, j) = gen.uniform(0.1, 1.0);
        sym(j, i) = sym(i, j);
      }
    }
    const JointDistribution q_sym(sym / sym.sum());
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      labels[static_cast<std::size_t>(i)] =
          i < m ? static_cast<int>(i) : gen.uniform_int(0, m - 1);
    }
    const auto report = check_lifted_recovery(
        q_sym, DeterministicAssignment(labels, m), Vector::Ones(n), m);
    CHECK(report.pass);
  }

  const auto suite = run_lifted_suite(20, 7, 3, 13);
  CHECK(suite.pass);
}

TEST_CASE("gramian pairwise reports") {
  Matrix column(3, 1);
  column << 0.4, 1.0, 0.6;
  const auto rank1 = check_gramian_pairwise(column, 2, 4, 1);
  CHECK(rank1.pass);
  CHECK(rank1.metadata.at("hard_bits").get<double>() <= 1e-12);
  CHECK(rank1.metadata.at("soft_bits").get<double>() <= 1e-9);

  const auto flat = check_gramian_pairwise(Matrix::Ones(3, 2), 2, 4, 2);
  CHECK(flat.pass);
  CHECK(flat.metadata.at("hard_bits").get<double>() <= 1e-12);

  const auto suite = run_gramian_suite(20, 6, 4, 2, 5);
  CHECK(suite.trials == 20);
  CHECK(suite.pass);  // conjecture evidence on the shipped seed
}

TEST_CASE("boltzmann pairwise reports") {
  const auto uniform =
      check_boltzmann_pairwise(DistanceMatrix(Matrix::Zero(3, 3)), 1.0, 2, 4, 3);
  CHECK(uniform.pass);
  CHECK(uniform.metadata.at("hard_bits").get<double>() <= 1e-12);
  CHECK(uniform.metadata.at("symmetric_pair_optimal").get<bool>());

  // two well-separated clusters on a line: the optimum splits them
  Matrix pts(4, 1);
  pts << 0.0, 0.1, 10.0, 10.1;
  const auto split =
      check_boltzmann_pairwise(distances_from_points(pts), 1.0, 2, 4, 4);
  CHECK(split.pass);
  const auto p = from_distances(distances_from_points(pts), 1.0);
  const auto hard = solve_pairwise_hard(p, 2);
  CHECK(hard.hard1->labels() == std::vector<int>{0, 0, 1, 1});

  const auto suite = run_boltzmann_suite(6, 6, 2, 9);
  CHECK(suite.trials == 6);
  CHECK(suite.pass);
}

TEST_CASE("the sufficient condition has counterexamples") {
  TrialSizes sizes;
  sizes.n1_max = 5;
  sizes.l_max = 4;
  sizes.m_values = {2};
  auto report = search_sufficient_condition_counterexample(10000, sizes, 1);
  if (!report.pass) {
    // escalate once, as the acceptance criterion prescribes
    sizes.n1_max = 6;
    sizes.l_max = 5;
    report = search_sufficient_condition_counterexample(10000, sizes, 1);
  }
  REQUIRE(report.pass);
  REQUIRE(report.violations >= 1);

  // every witness replays to the recorded margin
  for (const auto& witness : report.witnesses) {
    const auto replay = replay_witness(witness);
    CHECK(replay.pass);
    CHECK(std::abs(replay.worst_margin_bits -
                   witness.at("margin_bits").get<double>()) <= 1e-12);
  }
}

TEST_CASE("equal assignments are never a counterexample hit") {
  rng::Engine gen(71);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = gen.uniform_int(2, 5);
    const Index l = gen.uniform_int(2, 4);
    Matrix a(n, l);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < l; ++j) a(i, j) = gen.uniform(0.1, 1.0);
    }
    const auto model = from_features(a);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (auto& lab : labels) lab = gen.uniform_int(0, 1);
    const DeterministicAssignment v(labels, 2);
    const StochasticMatrix w(model.u.w() * v.matrix());
    const auto lambda_joint = from_diagonal(model.lambda);
    const double cross = cocluster_objective_bits(lambda_joint, w, w);
    const double self = cocluster_objective_bits(lambda_joint, w, w);
    CHECK(cross <= self + 1e-9);
  }
}

TEST_CASE("replay re-evaluates identity-style witnesses") {
  // synthetic witnesses around true values: the recomputed margin must
  // match what the public API yields, and a sub-threshold margin is
  // reported as a non-violation
  const auto diag = replay_witness({{"claim", "diagonal-equivalence"},
                                    {"check", "pairwise-equals-cocluster"},
                                    {"mu", {0.25, 0.25, 0.25, 0.25}},
                                    {"m", 2},
                                    {"margin_bits", 0.0}});
  CHECK(!diag.pass);  // no violation to reproduce
  CHECK(diag.metadata.at("margin_matches").get<bool>());
  CHECK(diag.worst_margin_bits <= 1e-12);

  const auto q = random_joint(2, 2, 19);
  const auto lifted = replay_witness({{"claim", "lifted-recovery"},
                                      {"check", "uv-identity"},
                                      {"q", {{q.p()(0, 0), q.p()(0, 1)},
                                             {q.p()(1, 0), q.p()(1, 1)}}},
                                      {"v", {{"assign", {1, 2, 1}}, {"clusters", 2}}},
                                      {"nu", {1.0, 1.0, 1.0}},
                                      {"m", 2},
                                      {"margin_bits", 0.0}});
  CHECK(!lifted.pass);
  CHECK(lifted.worst_margin_bits <= 1e-12);

  const auto gram = replay_witness({{"claim", "gramian-identity"},
                                    {"a", {{0.5, 1.0}, {1.0, 0.5}, {0.7, 0.7}}},
                                    {"v", {{"assign", {1, 2, 1}}, {"clusters", 2}}},
                                    {"m", 2},
                                    {"margin_bits", 0.0}});
  CHECK(!gram.pass);
  CHECK(gram.worst_margin_bits <= 1e-12);
}

TEST_CASE("replay rejects unknown claims") {
  CHECK_THROWS_AS(replay_witness({{"claim", "no-such-claim"}}),
                  std::invalid_argument);
}

TEST_SUITE_END();
