#include "miclust/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "miclust/info_measures.hpp"
#include "miclust/io.hpp"
#include "miclust/rng.hpp"

namespace miclust {

namespace {

constexpr double kDominanceTol = 1e-9;
constexpr double kSoftVsHardTol = 1e-6;
constexpr double kIdentityTol = 1e-12;
constexpr double kPrintedValueTol = 5e-5;  // half-ulp of a 4-decimal printed value

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) {
      m(i, k) = j.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k));
    }
  }
  return m;
}

Vector vector_from_json(const nlohmann::json& j) {
  Vector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) v(i) = j.at(static_cast<std::size_t>(i));
  return v;
}

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

/// Runs body(0..count-1) over a small pool. Each index owns its result
/// slot, so parallel and serial runs aggregate identically.
template <typename Body>
void parallel_for(std::uint64_t count, int threads, Body&& body) {
  if (threads <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    while (true) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int width = std::min<int>(threads, static_cast<int>(count));
  pool.reserve(static_cast<std::size_t>(width));
  for (int t = 0; t < width; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

struct TrialOutcome {
  std::uint64_t violations = 0;
  double worst_margin = 0.0;
  std::vector<nlohmann::json> witnesses;
};

Report aggregate(std::string claim, std::vector<TrialOutcome> outcomes,
                 nlohmann::json metadata) {
  Report report;
  report.claim = std::move(claim);
  report.trials = outcomes.size();
  for (auto& o : outcomes) {
    report.violations += o.violations;
    report.worst_margin_bits = std::max(report.worst_margin_bits, o.worst_margin);
    for (auto& w : o.witnesses) report.witnesses.push_back(std::move(w));
  }
  report.pass = report.violations == 0;
  report.metadata = std::move(metadata);
  return report;
}

int pick(const std::vector<int>& values, rng::Engine& gen) {
  return values[static_cast<std::size_t>(
      gen.uniform_int(0, static_cast<int>(values.size()) - 1))];
}

nlohmann::json sizes_to_json(const TrialSizes& sizes) {
  return {{"n1_max", sizes.n1_max},
          {"n2_max", sizes.n2_max},
          {"m_values", sizes.m_values},
          {"l_max", sizes.l_max}};
}

Matrix random_positive(Index n, Index l, rng::Engine& gen) {
  Matrix a(n, l);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < l; ++j) a(i, j) = gen.uniform(0.1, 1.0);
  }
  return a;
}

std::vector<int> random_labels(Index n, int m, rng::Engine& gen) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (auto& l : labels) l = gen.uniform_int(0, m - 1);
  return labels;
}

std::vector<int> random_surjective_labels(Index n, int m, rng::Engine& gen) {
  while (true) {
    auto labels = random_labels(n, m, gen);
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (const int l : labels) seen[static_cast<std::size_t>(l)] = true;
    if (std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) {
      return labels;
    }
  }
}

}  // namespace

Report check_hard_dominance(ProblemKind kind, int trials, const TrialSizes& sizes,
                            std::uint64_t seed, int soft_trials, double beta,
                            int threads) {
  if (kind == ProblemKind::kPairwise) {
    throw std::invalid_argument(
        "check_hard_dominance: pairwise clustering has no hard-dominance "
        "guarantee to certify");
  }
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::uint64_t>(trials), threads, [&](std::uint64_t t) {
    const std::uint64_t trial_seed = rng::split(seed, t);
    rng::Engine gen(trial_seed);
    const Index n1 = gen.uniform_int(2, sizes.n1_max);
    const Index n2 = gen.uniform_int(2, sizes.n2_max);
    const int m1 = pick(sizes.m_values, gen);
    const int m2 = pick(sizes.m_values, gen);
    const JointDistribution p = random_joint(n1, n2, rng::split(trial_seed, 1));

    double hard = 0.0;
    switch (kind) {
      case ProblemKind::kCoCluster:
        hard = solve_cocluster_hard(p, m1, m2).objective.value();
        break;
      case ProblemKind::kCluster:
        hard = solve_cluster_hard(p, m2).objective.value();
        break;
      case ProblemKind::kDeterministicIb:
        hard = solve_cluster_hard(p, m2, beta).objective.value();
        break;
      default:
        break;
    }

    auto& out = outcomes[static_cast<std::size_t>(t)];
    for (int s = 0; s < soft_trials; ++s) {
      double soft = 0.0;
      nlohmann::json witness{{"claim", "hard-dominance"},
                             {"kind", to_string(kind)},
                             {"p", matrix_to_json(p.p())}};
      if (kind == ProblemKind::kCoCluster) {
        const auto w1 = random_stochastic(n1, m1, rng::split(trial_seed, 100 + 2 * s));
        const auto w2 =
            random_stochastic(n2, m2, rng::split(trial_seed, 101 + 2 * s));
        soft = cocluster_objective_bits(p, w1, w2);
        witness["m1"] = m1;
        witness["m2"] = m2;
        witness["w1"] = matrix_to_json(w1.w());
        witness["w2"] = matrix_to_json(w2.w());
      } else {
        const auto w = random_stochastic(n2, m2, rng::split(trial_seed, 100 + s));
        soft = kind == ProblemKind::kDeterministicIb
                   ? dib_objective_bits(p, w, beta)
                   : cluster_objective_bits(p, w);
        witness["m2"] = m2;
        witness["w"] = matrix_to_json(w.w());
        if (kind == ProblemKind::kDeterministicIb) witness["beta"] = beta;
      }
      const double margin = soft - hard;
      if (margin > kDominanceTol) {
        witness["soft_bits"] = soft;
        witness["hard_bits"] = hard;
        witness["margin_bits"] = margin;
        ++out.violations;
        out.worst_margin = std::max(out.worst_margin, margin);
        out.witnesses.push_back(std::move(witness));
      }
    }
  });

  nlohmann::json metadata{{"seed", seed},
                          {"soft_trials", soft_trials},
                          {"sizes", sizes_to_json(sizes)},
                          {"tolerance_bits", kDominanceTol},
                          {"sampling", "entries uniform on (0.1, 1), normalized"}};
  if (kind == ProblemKind::kDeterministicIb) metadata["beta"] = beta;
  return aggregate("hard-dominance/" + to_string(kind), std::move(outcomes),
                   std::move(metadata));
}

Report check_diagonal_equivalence(const Vector& mu, int m) {
  const JointDistribution p = from_diagonal(mu);
  const auto pairwise = solve_pairwise_hard(p, m);
  const auto cocluster = solve_cocluster_hard(p, m, m);

  // Best clustered-marginal entropy over single assignments.
  double best_entropy = -std::numeric_limits<double>::infinity();
  for_each_assignment(mu.size(), m, EnumerationOptions{false, true},
                      [&](const DeterministicAssignment& v) {
                        const Vector nu = v.matrix().transpose() * mu;
                        best_entropy = std::max(best_entropy, entropy(nu).value());
                      });

  TrialOutcome out;
  const double pw = pairwise.objective.value();
  const double co = cocluster.objective.value();
  auto flag = [&](const char* what, double margin) {
    if (margin > kIdentityTol) {
      ++out.violations;
      out.worst_margin = std::max(out.worst_margin, margin);
      out.witnesses.push_back({{"claim", "diagonal-equivalence"},
                               {"check", what},
                               {"mu", vector_to_json(mu)},
                               {"m", m},
                               {"pairwise_bits", pw},
                               {"cocluster_bits", co},
                               {"best_entropy_bits", best_entropy},
                               {"margin_bits", margin}});
    }
  };
  flag("pairwise-equals-cocluster", std::abs(co - pw));
  flag("pair-dominated-by-single", co - pw);  // every pair <= best single
  flag("pairwise-equals-entropy", std::abs(pw - best_entropy));

  std::vector<TrialOutcome> outcomes{std::move(out)};
  return aggregate("diagonal-equivalence", std::move(outcomes),
                   {{"m", m}, {"n", mu.size()}});
}

Report run_diagonal_suite(int trials, int n_max, const std::vector<int>& m_values,
                          std::uint64_t seed, int threads) {
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::uint64_t>(trials), threads, [&](std::uint64_t t) {
    const std::uint64_t trial_seed = rng::split(seed, t);
    rng::Engine gen(trial_seed);
    const Index n = gen.uniform_int(2, n_max);
    const int m = pick(m_values, gen);
    Vector mu(n);
    double sum = 0.0;
    for (Index i = 0; i < n; ++i) {
      mu(i) = gen.exponential();
      sum += mu(i);
    }
    mu /= sum;
    const Report single = check_diagonal_equivalence(mu, m);
    auto& out = outcomes[static_cast<std::size_t>(t)];
    out.violations = single.violations;
    out.worst_margin = single.worst_margin_bits;
    out.witnesses = single.witnesses;
  });
  return aggregate("diagonal-equivalence", std::move(outcomes),
                   {{"seed", seed},
                    {"n_max", n_max},
                    {"m_values", m_values},
                    {"tolerance_bits", kIdentityTol}});
}

Report check_lifted_recovery(const JointDistribution& q,
                             const DeterministicAssignment& v, const Vector& nu,
                             int m) {
  const LiftedModel model = lift(q, v, nu);
  const double target = mutual_information(q).value();
  const auto pairwise = solve_pairwise_hard(model.p, m);

  TrialOutcome out;
  auto flag = [&](const char* what, double margin, nlohmann::json extra) {
    if (margin > (std::string(what) == "objective" ? kDominanceTol : kIdentityTol)) {
      ++out.violations;
      out.worst_margin = std::max(out.worst_margin, margin);
      nlohmann::json witness{{"claim", "lifted-recovery"},
                             {"check", what},
                             {"q", matrix_to_json(q.p())},
                             {"v", to_json(v)},
                             {"nu", vector_to_json(nu)},
                             {"m", m},
                             {"margin_bits", margin}};
      witness.update(extra);
      out.witnesses.push_back(std::move(witness));
    }
  };

  flag("objective", std::abs(pairwise.objective.value() - target),
       {{"attained_bits", pairwise.objective.value()}, {"target_bits", target}});

  const auto canonical_v = v.canonical();
  const bool in_argmax =
      std::any_of(pairwise.argmax_set.begin(), pairwise.argmax_set.end(),
                  [&](const AssignmentPair& a) {
                    return a.first.canonical() == canonical_v;
                  });
  if (!in_argmax) {
    ++out.violations;
    out.witnesses.push_back({{"claim", "lifted-recovery"},
                             {"check", "argmax-contains-v"},
                             {"q", matrix_to_json(q.p())},
                             {"v", to_json(v)},
                             {"nu", vector_to_json(nu)},
                             {"m", m},
                             {"margin_bits", 0.0}});
  }

  const Matrix uv = model.u.w() * v.matrix();
  flag("uv-identity",
       (uv - Matrix::Identity(uv.rows(), uv.cols())).cwiseAbs().maxCoeff(), {});

  const LumpedChain chain = derive_lumped_chain(model);
  double spread = 0.0;
  for (int c = 0; c < v.num_clusters(); ++c) {
    Index first = -1;
    for (Index i = 0; i < v.items(); ++i) {
      if (v.labels()[static_cast<std::size_t>(i)] != c) continue;
      if (first < 0) {
        first = i;
      } else {
        spread = std::max(spread, (chain.p_tilde.w().row(i) -
                                   chain.p_tilde.w().row(first))
                                      .cwiseAbs()
                                      .maxCoeff());
      }
    }
  }
  flag("lumpability-row-equality", spread, {});

  std::vector<TrialOutcome> outcomes{std::move(out)};
  return aggregate("lifted-recovery", std::move(outcomes),
                   {{"m", m}, {"n", v.items()}, {"target_bits", target}});
}

Report run_lifted_suite(int trials, int n_max, int m_max, std::uint64_t seed,
                        int threads) {
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::uint64_t>(trials), threads, [&](std::uint64_t t) {
    const std::uint64_t trial_seed = rng::split(seed, t);
    rng::Engine gen(trial_seed);
    const int m = gen.uniform_int(2, m_max);
    const Index n = gen.uniform_int(m, n_max);
    const JointDistribution q = random_joint(m, m, rng::split(trial_seed, 1));
    const DeterministicAssignment v(random_surjective_labels(n, m, gen), m);
    Vector nu(n);
    for (Index i = 0; i < n; ++i) nu(i) = gen.uniform(0.1, 1.0);

    const Report single = check_lifted_recovery(q, v, nu, m);
    auto& out = outcomes[static_cast<std::size_t>(t)];
    out.violations = single.violations;
    out.worst_margin = single.worst_margin_bits;
    out.witnesses = single.witnesses;
  });
  return aggregate("lifted-recovery", std::move(outcomes),
                   {{"seed", seed},
                    {"n_max", n_max},
                    {"m_max", m_max},
                    {"objective_tolerance_bits", kDominanceTol},
                    {"identity_tolerance_bits", kIdentityTol}});
}

namespace {

/// I(Y1;Y2) vs I(Z;Y1) + I(Z;Y2) - I(Z;Y1,Y2) on the explicit joint of
/// (Z, Y1, Y2) where Y1, Y2 are conditionally independent given Z.
double three_term_identity_margin(const Vector& lambda, const Matrix& channel) {
  const Index l = channel.rows();
  const Index m = channel.cols();

  Matrix joint_zy(l, m);           // Pr(Z = z, Y = y)
  Matrix joint_z_y1y2(l, m * m);   // Pr(Z = z, Y1 = y1, Y2 = y2)
  Matrix joint_yy = Matrix::Zero(m, m);
  for (Index z = 0; z < l; ++z) {
    for (Index y1 = 0; y1 < m; ++y1) {
      joint_zy(z, y1) = lambda(z) * channel(z, y1);
      for (Index y2 = 0; y2 < m; ++y2) {
        const double v = lambda(z) * channel(z, y1) * channel(z, y2);
        joint_z_y1y2(z, y1 * m + y2) = v;
        joint_yy(y1, y2) += v;
      }
    }
  }
  const double i_y1y2 = mutual_information(JointDistribution(joint_yy)).value();
  const double i_zy = mutual_information(JointDistribution(joint_zy)).value();
  const double i_z_both =
      mutual_information(JointDistribution(joint_z_y1y2)).value();
  return std::abs(i_y1y2 - (2 * i_zy - i_z_both));
}

}  // namespace

Report check_gramian_pairwise(const Matrix& a, int m, int restarts,
                              std::uint64_t seed) {
  const GramianModel model = from_features(a);
  const auto hard = solve_pairwise_hard(model.p, m);
  const ProblemSpec spec(ProblemKind::kPairwise, model.p, m);
  SoftAscentOptions opts;
  opts.restarts = restarts;
  opts.seed = seed;
  const auto soft = solve_soft_ascent(spec, opts);

  TrialOutcome out;
  const double margin = soft.objective.value() - hard.objective.value();
  if (margin > kSoftVsHardTol) {
    ++out.violations;
    out.worst_margin = std::max(out.worst_margin, margin);
    out.witnesses.push_back({{"claim", "soft-exceeds-hard"},
                             {"model", "gramian"},
                             {"a", matrix_to_json(a)},
                             {"m", m},
                             {"w", matrix_to_json(soft.soft1->w())},
                             {"soft_bits", soft.objective.value()},
                             {"hard_bits", hard.objective.value()},
                             {"margin_bits", margin}});
  }

  const Matrix channel = model.u.w() * hard.hard1->canonical().matrix();
  const double identity_margin = three_term_identity_margin(model.lambda, channel);
  if (identity_margin > kIdentityTol) {
    ++out.violations;
    out.worst_margin = std::max(out.worst_margin, identity_margin);
    out.witnesses.push_back({{"claim", "gramian-identity"},
                             {"a", matrix_to_json(a)},
                             {"m", m},
                             {"v", to_json(*hard.hard1)},
                             {"margin_bits", identity_margin}});
  }

  std::vector<TrialOutcome> outcomes{std::move(out)};
  return aggregate("gramian-pairwise", std::move(outcomes),
                   {{"m", m},
                    {"restarts", restarts},
                    {"seed", seed},
                    {"hard_bits", hard.objective.value()},
                    {"soft_bits", soft.objective.value()},
                    {"identity_margin_bits", identity_margin},
                    {"soft_vs_hard_tolerance_bits", kSoftVsHardTol}});
}

Report run_gramian_suite(int trials, int n_max, int l_max, int m,
                         std::uint64_t seed, int threads) {
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::uint64_t>(trials), threads, [&](std::uint64_t t) {
    const std::uint64_t trial_seed = rng::split(seed, t);
    rng::Engine gen(trial_seed);
    const Index n = gen.uniform_int(2, n_max);
    const Index l = gen.uniform_int(1, l_max);
    const Matrix a = random_positive(n, l, gen);

    const Report single =
        check_gramian_pairwise(a, m, /*restarts=*/8, rng::split(trial_seed, 2));
    auto& out = outcomes[static_cast<std::size_t>(t)];
    out.violations = single.violations;
    out.worst_margin = single.worst_margin_bits;
    out.witnesses = single.witnesses;
  });
  return aggregate("gramian-pairwise", std::move(outcomes),
                   {{"seed", seed},
                    {"n_max", n_max},
                    {"l_max", l_max},
                    {"m", m},
                    {"sampling", "entries uniform on (0.1, 1)"}});
}

Report check_boltzmann_pairwise(const DistanceMatrix& d, double sigma, int m,
                                int restarts, std::uint64_t seed) {
  const JointDistribution p = from_distances(d, sigma);
  const auto hard = solve_pairwise_hard(p, m);
  const ProblemSpec spec(ProblemKind::kPairwise, p, m);
  SoftAscentOptions opts;
  opts.restarts = restarts;
  opts.seed = seed;
  const auto soft = solve_soft_ascent(spec, opts);

  TrialOutcome out;
  const double margin = soft.objective.value() - hard.objective.value();
  if (margin > kSoftVsHardTol) {
    ++out.violations;
    out.worst_margin = std::max(out.worst_margin, margin);
    out.witnesses.push_back({{"claim", "soft-exceeds-hard"},
                             {"model", "boltzmann"},
                             {"d", matrix_to_json(d.d())},
                             {"sigma", sigma},
                             {"m", m},
                             {"w", matrix_to_json(soft.soft1->w())},
                             {"soft_bits", soft.objective.value()},
                             {"hard_bits", hard.objective.value()},
                             {"margin_bits", margin}});
  }

  // Co-clustering relaxation: is some optimal pair symmetric (V1 = V2)?
  const auto cocluster = solve_cocluster_hard(p, m, m);
  const bool symmetric_pair = std::any_of(
      cocluster.argmax_set.begin(), cocluster.argmax_set.end(),
      [](const AssignmentPair& pair) {
        return pair.second && pair.first.canonical() == pair.second->canonical();
      });

  std::vector<TrialOutcome> outcomes{std::move(out)};
  return aggregate("boltzmann-pairwise", std::move(outcomes),
                   {{"sigma", sigma},
                    {"m", m},
                    {"restarts", restarts},
                    {"seed", seed},
                    {"hard_bits", hard.objective.value()},
                    {"soft_bits", soft.objective.value()},
                    {"cocluster_bits", cocluster.objective.value()},
                    {"symmetric_pair_optimal", symmetric_pair},
                    {"soft_vs_hard_tolerance_bits", kSoftVsHardTol}});
}

Report run_boltzmann_suite(int trials, int n_max, int m, std::uint64_t seed,
                           int threads) {
  const std::vector<double> sigmas{0.5, 1.0, 2.0};
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  std::vector<nlohmann::json> trial_meta(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::uint64_t>(trials), threads, [&](std::uint64_t t) {
    const std::uint64_t trial_seed = rng::split(seed, t);
    rng::Engine gen(trial_seed);
    const Index n = gen.uniform_int(3, n_max);
    Matrix points(n, 2);
    for (Index i = 0; i < n; ++i) {
      points(i, 0) = gen.uniform(0.0, 1.0);
      points(i, 1) = gen.uniform(0.0, 1.0);
    }
    const double sigma = sigmas[t % sigmas.size()];
    const Report single = check_boltzmann_pairwise(
        distances_from_points(points), sigma, m, /*restarts=*/8,
        rng::split(trial_seed, 2));
    auto& out = outcomes[static_cast<std::size_t>(t)];
    out.violations = single.violations;
    out.worst_margin = single.worst_margin_bits;
    out.witnesses = single.witnesses;
    trial_meta[static_cast<std::size_t>(t)] = {
        {"sigma", sigma},
        {"n", n},
        {"symmetric_pair_optimal", single.metadata.at("symmetric_pair_optimal")}};
  });
  return aggregate("boltzmann-pairwise", std::move(outcomes),
                   {{"seed", seed},
                    {"n_max", n_max},
                    {"m", m},
                    {"sigmas", sigmas},
                    {"trials_detail", trial_meta}});
}

Report search_sufficient_condition_counterexample(int trials,
                                                  const TrialSizes& sizes,
                                                  std::uint64_t seed, int threads) {
  for (const int m : sizes.m_values) {
    if (m < 2) {
      throw std::invalid_argument(
          "search_sufficient_condition_counterexample: needs m >= 2 so that "
          "two distinct assignments exist");
    }
  }
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::uint64_t>(trials), threads, [&](std::uint64_t t) {
    const std::uint64_t trial_seed = rng::split(seed, t);
    rng::Engine gen(trial_seed);
    const Index n = gen.uniform_int(2, sizes.n1_max);
    const Index l = gen.uniform_int(2, sizes.l_max);
    const int m = pick(sizes.m_values, gen);
    const Matrix a = random_positive(n, l, gen);
    const GramianModel model = from_features(a);

    const std::vector<int> labels1 = random_labels(n, m, gen);
    std::vector<int> labels2 = random_labels(n, m, gen);
    while (labels2 == labels1) labels2 = random_labels(n, m, gen);
    const DeterministicAssignment v1(labels1, m);
    const DeterministicAssignment v2(labels2, m);

    const JointDistribution lambda_joint = from_diagonal(model.lambda);
    const StochasticMatrix w1(model.u.w() * v1.matrix());
    const StochasticMatrix w2(model.u.w() * v2.matrix());
    const double cross = cocluster_objective_bits(lambda_joint, w1, w2);
    const double self1 = cocluster_objective_bits(lambda_joint, w1, w1);
    const double self2 = cocluster_objective_bits(lambda_joint, w2, w2);

    const double margin = cross - std::max(self1, self2);
    if (margin > kDominanceTol) {
      auto& out = outcomes[static_cast<std::size_t>(t)];
      ++out.violations;
      out.worst_margin = margin;
      out.witnesses.push_back({{"claim", "sufficient-condition"},
                               {"a", matrix_to_json(a)},
                               {"m", m},
                               {"v1", to_json(v1)},
                               {"v2", to_json(v2)},
                               {"cross_bits", cross},
                               {"self1_bits", self1},
                               {"self2_bits", self2},
                               {"margin_bits", margin}});
    }
  });
  Report report = aggregate("sufficient-condition-counterexample",
                            std::move(outcomes),
                            {{"seed", seed},
                             {"sizes", sizes_to_json(sizes)},
                             {"tolerance_bits", kDominanceTol},
                             {"sampling", "entries uniform on (0.1, 1)"}});
  // Here a recorded event is the sought counterexample: the run passes
  // iff at least one witness was found.
  report.pass = report.violations > 0;
  return report;
}

JointDistribution example3_joint() {
  Matrix p(3, 3);
  p << 0.1, 0.1, 0.175,  //
      0.1, 0.15, 0.075,  //
      0.175, 0.075, 0.05;
  return JointDistribution(p);
}

Report reproduce_example3(const std::optional<std::string>& surface_csv_path) {
  const JointDistribution p = example3_joint();

  HardSolveOptions hard_opts;
  hard_opts.record_evaluations = true;
  const auto hard = solve_pairwise_hard(p, 2, hard_opts);

  TrialOutcome out;
  auto expect = [&](const char* what, double got, double want, double tol) {
    const double margin = std::abs(got - want);
    if (margin > tol) {
      ++out.violations;
      out.worst_margin = std::max(out.worst_margin, margin);
      out.witnesses.push_back({{"claim", "example3"},
                               {"check", what},
                               {"got_bits", got},
                               {"want_bits", want},
                               {"margin_bits", margin}});
    }
  };

  // The four canonical clusterings of three items into at most two
  // clusters, with the values printed in the worked example.
  const std::vector<std::pair<std::vector<int>, double>> expected{
      {{0, 0, 0}, 0.0},     // merged
      {{0, 0, 1}, 0.0281},  // {1,2}{3}
      {{0, 1, 0}, 0.0288},  // {1,3}{2}
      {{0, 1, 1}, 0.0222},  // {1}{2,3}
  };
  if (hard.evaluations.size() != expected.size()) {
    ++out.violations;
    out.witnesses.push_back({{"claim", "example3"},
                             {"check", "evaluation-count"},
                             {"got", hard.evaluations.size()},
                             {"want", expected.size()},
                             {"margin_bits", 0.0}});
  } else {
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (hard.evaluations[i].assignment.first.labels() != expected[i].first) {
        ++out.violations;
        out.witnesses.push_back({{"claim", "example3"},
                                 {"check", "evaluation-order"},
                                 {"margin_bits", 0.0}});
        continue;
      }
      expect("hard-value", hard.evaluations[i].value_bits, expected[i].second,
             kPrintedValueTol);
    }
  }
  expect("hard-optimum", hard.objective.value(), 0.0288, kPrintedValueTol);
  if (hard.hard1->labels() != std::vector<int>{0, 1, 0}) {
    ++out.violations;
    out.witnesses.push_back(
        {{"claim", "example3"}, {"check", "hard-argmax"}, {"margin_bits", 0.0}});
  }

  // Full sweep in steps of 0.025; the printed optimum is (1, 0.65, 0) up
  // to swapping the two cluster labels.
  const auto sweep = sweep_pairwise(p, 2, 0.025);
  expect("sweep-optimum", sweep.best_value.value(), 0.0316, kPrintedValueTol);
  const auto near = [](const std::vector<double>& got,
                       const std::vector<double>& want) {
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (std::abs(got[i] - want[i]) > 1e-9) return false;
    }
    return true;
  };
  if (!near(sweep.best_point, {1.0, 0.65, 0.0}) &&
      !near(sweep.best_point, {0.0, 0.35, 1.0})) {
    ++out.violations;
    out.witnesses.push_back({{"claim", "example3"},
                             {"check", "sweep-argmax"},
                             {"got", sweep.best_point},
                             {"margin_bits", 0.0}});
  }

  // Fixed r = 1 surface; its interior maximum must beat every corner.
  SweepOptions surf_opts;
  surf_opts.emit_surface = true;
  surf_opts.fixed = {{"r", 1.0}};
  const auto surface = sweep_pairwise(p, 2, 0.025, surf_opts);
  double corner_best = -std::numeric_limits<double>::infinity();
  for (const auto& point : *surface.surface) {
    const bool corner =
        (point.params[0] == 0.0 || point.params[0] == 1.0) &&
        (point.params[1] == 0.0 || point.params[1] == 1.0);
    if (corner) corner_best = std::max(corner_best, point.value_bits);
  }
  if (!(surface.best_value.value() > corner_best)) {
    ++out.violations;
    out.witnesses.push_back({{"claim", "example3"},
                             {"check", "surface-above-corners"},
                             {"surface_best_bits", surface.best_value.value()},
                             {"corner_best_bits", corner_best},
                             {"margin_bits", corner_best - surface.best_value.value()}});
  }
  if (surface_csv_path) {
    write_sweep_surface_csv_file(*surface_csv_path, surface);
  }

  std::vector<TrialOutcome> outcomes{std::move(out)};
  nlohmann::json metadata{
      {"hard_values_bits",
       {hard.evaluations.size() > 0 ? hard.evaluations[0].value_bits : 0.0,
        hard.evaluations.size() > 1 ? hard.evaluations[1].value_bits : 0.0,
        hard.evaluations.size() > 2 ? hard.evaluations[2].value_bits : 0.0,
        hard.evaluations.size() > 3 ? hard.evaluations[3].value_bits : 0.0}},
      {"sweep_best_bits", sweep.best_value.value()},
      {"sweep_best_point", sweep.best_point},
      {"value_tolerance_bits", kPrintedValueTol}};
  if (surface_csv_path) metadata["surface_csv"] = *surface_csv_path;
  return aggregate("example3", std::move(outcomes), std::move(metadata));
}

Report replay_witness(const nlohmann::json& witness) {
  const std::string claim = witness.at("claim");
  Report report;
  report.claim = "replay/" + claim;
  report.trials = 1;

  double recomputed = 0.0;
  double recorded = 0.0;
  bool is_violation = false;

  if (claim == "hard-dominance") {
    const JointDistribution p(matrix_from_json(witness.at("p")));
    const ProblemKind kind = problem_kind_from_string(witness.at("kind"));
    double soft = 0.0;
    double hard = 0.0;
    if (kind == ProblemKind::kCoCluster) {
      const StochasticMatrix w1(matrix_from_json(witness.at("w1")));
      const StochasticMatrix w2(matrix_from_json(witness.at("w2")));
      soft = cocluster_objective_bits(p, w1, w2);
      hard = solve_cocluster_hard(p, witness.at("m1"), witness.at("m2"))
                 .objective.value();
    } else {
      const StochasticMatrix w(matrix_from_json(witness.at("w")));
      const int m2 = witness.at("m2");
      if (kind == ProblemKind::kDeterministicIb) {
        const double beta = witness.at("beta");
        soft = dib_objective_bits(p, w, beta);
        hard = solve_cluster_hard(p, m2, beta).objective.value();
      } else {
        soft = cluster_objective_bits(p, w);
        hard = solve_cluster_hard(p, m2).objective.value();
      }
    }
    recomputed = soft - hard;
    recorded = witness.at("margin_bits");
    is_violation = recomputed > kDominanceTol;
  } else if (claim == "sufficient-condition") {
    const Matrix a = matrix_from_json(witness.at("a"));
    const GramianModel model = from_features(a);
    const auto v1 = assignment_from_json(witness.at("v1"));
    const auto v2 = assignment_from_json(witness.at("v2"));
    const JointDistribution lambda_joint = from_diagonal(model.lambda);
    const StochasticMatrix w1(model.u.w() * v1.matrix());
    const StochasticMatrix w2(model.u.w() * v2.matrix());
    const double cross = cocluster_objective_bits(lambda_joint, w1, w2);
    const double self1 = cocluster_objective_bits(lambda_joint, w1, w1);
    const double self2 = cocluster_objective_bits(lambda_joint, w2, w2);
    recomputed = cross - std::max(self1, self2);
    recorded = witness.at("margin_bits");
    is_violation = recomputed > kDominanceTol;
  } else if (claim == "soft-exceeds-hard") {
    const std::string model_name = witness.at("model");
    const int m = witness.at("m");
    const StochasticMatrix w(matrix_from_json(witness.at("w")));
    JointDistribution p =
        model_name == "gramian"
            ? from_features(matrix_from_json(witness.at("a"))).p
            : from_distances(DistanceMatrix(matrix_from_json(witness.at("d"))),
                             witness.at("sigma"));
    const double soft = pairwise_objective_bits(p, w);
    const double hard = solve_pairwise_hard(p, m).objective.value();
    recomputed = soft - hard;
    recorded = witness.at("margin_bits");
    is_violation = recomputed > kSoftVsHardTol;
  } else if (claim == "diagonal-equivalence") {
    const Vector mu = vector_from_json(witness.at("mu"));
    const int m = witness.at("m");
    const std::string check = witness.at("check");
    const JointDistribution p = from_diagonal(mu);
    const double pw = solve_pairwise_hard(p, m).objective.value();
    const double co = solve_cocluster_hard(p, m, m).objective.value();
    if (check == "pairwise-equals-cocluster") {
      recomputed = std::abs(co - pw);
    } else if (check == "pair-dominated-by-single") {
      recomputed = co - pw;
    } else {
      double best_entropy = -std::numeric_limits<double>::infinity();
      for_each_assignment(mu.size(), m, EnumerationOptions{false, true},
                          [&](const DeterministicAssignment& v) {
                            const Vector nu = v.matrix().transpose() * mu;
                            best_entropy =
                                std::max(best_entropy, entropy(nu).value());
                          });
      recomputed = std::abs(pw - best_entropy);
    }
    recorded = witness.at("margin_bits");
    is_violation = recomputed > kIdentityTol;
  } else if (claim == "lifted-recovery") {
    const JointDistribution q(matrix_from_json(witness.at("q")));
    const auto v = assignment_from_json(witness.at("v"));
    const Vector nu = vector_from_json(witness.at("nu"));
    const int m = witness.at("m");
    const std::string check = witness.at("check");
    const LiftedModel model = lift(q, v, nu);
    double threshold = kIdentityTol;
    if (check == "objective") {
      recomputed = std::abs(solve_pairwise_hard(model.p, m).objective.value() -
                            mutual_information(q).value());
      threshold = kDominanceTol;
    } else if (check == "argmax-contains-v") {
      const auto pairwise = solve_pairwise_hard(model.p, m);
      const auto canonical_v = v.canonical();
      const bool in_argmax =
          std::any_of(pairwise.argmax_set.begin(), pairwise.argmax_set.end(),
                      [&](const AssignmentPair& a) {
                        return a.first.canonical() == canonical_v;
                      });
      recomputed = in_argmax ? 0.0 : 1.0;
      threshold = 0.5;
    } else if (check == "uv-identity") {
      const Matrix uv = model.u.w() * v.matrix();
      recomputed =
          (uv - Matrix::Identity(uv.rows(), uv.cols())).cwiseAbs().maxCoeff();
    } else {
      const LumpedChain chain = derive_lumped_chain(model);
      recomputed = 0.0;
      for (int c = 0; c < v.num_clusters(); ++c) {
        Index first = -1;
        for (Index i = 0; i < v.items(); ++i) {
          if (v.labels()[static_cast<std::size_t>(i)] != c) continue;
          if (first < 0) {
            first = i;
          } else {
            recomputed = std::max(
                recomputed, (chain.p_tilde.w().row(i) - chain.p_tilde.w().row(first))
                                .cwiseAbs()
                                .maxCoeff());
          }
        }
      }
    }
    recorded = witness.at("margin_bits");
    is_violation = recomputed > threshold;
  } else if (claim == "gramian-identity") {
    const GramianModel model = from_features(matrix_from_json(witness.at("a")));
    const auto v = assignment_from_json(witness.at("v"));
    const Matrix channel = model.u.w() * v.canonical().matrix();
    recomputed = three_term_identity_margin(model.lambda, channel);
    recorded = witness.at("margin_bits");
    is_violation = recomputed > kIdentityTol;
  } else {
    throw std::invalid_argument("replay_witness: unsupported claim '" + claim +
                                "'");
  }

  const bool margin_matches = std::abs(recomputed - recorded) <= kIdentityTol;
  report.violations = is_violation ? 1 : 0;
  report.worst_margin_bits = recomputed;
  report.pass = is_violation && margin_matches;
  report.metadata = {{"recorded_margin_bits", recorded},
                     {"recomputed_margin_bits", recomputed},
                     {"margin_matches", margin_matches}};
  return report;
}

}  // namespace miclust
