// miclust: information-theoretic clustering driver.
//
// Subcommands: build (data -> joint distribution), solve (hard / soft /
// IB optimizers), sweep (pairwise parameter grid), verify (empirical
// certification suites and witness replay).
//
// Exit codes: 0 success/pass, 1 verification failure, 2 usage or input
// error, 3 enumeration budget exceeded.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "miclust/info_measures.hpp"
#include "miclust/io.hpp"
#include "miclust/models.hpp"
#include "miclust/solvers.hpp"
#include "miclust/verification.hpp"

namespace {

using namespace miclust;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

int default_threads() {
  if (const char* env = std::getenv("MICLUST_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
  return 1;
}

Matrix read_matrix_any(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    const auto j = read_json_file(path);
    std::vector<std::vector<double>> rows =
        (j.is_object() ? j.at(j.contains("p")   ? "p"
                              : j.contains("w") ? "w"
                                                : "d")
                       : j)
            .get<std::vector<std::vector<double>>>();
    Matrix m(static_cast<Index>(rows.size()),
             static_cast<Index>(rows.front().size()));
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index k = 0; k < m.cols(); ++k) {
        m(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      }
    }
    return m;
  }
  return read_csv_matrix_file(path);
}

void emit_json(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(out_path, j);
  }
}

struct BuildArgs {
  std::string counts, distances, features, diagonal, joint;
  double sigma = 0.0;
  std::string out, model_out;
};

int run_build(const BuildArgs& args) {
  const int sources = !args.counts.empty() + !args.distances.empty() +
                      !args.features.empty() + !args.diagonal.empty() +
                      !args.joint.empty();
  if (sources != 1) {
    std::cerr << "build: choose exactly one of --counts/--distances/--features/"
                 "--diagonal/--joint\n";
    return kExitUsage;
  }
  if (!args.distances.empty() && !(args.sigma > 0.0)) {
    std::cerr << "build: --distances requires --sigma > 0\n";
    return kExitUsage;
  }
  if (args.distances.empty() && args.sigma != 0.0) {
    std::cerr << "build: --sigma applies to --distances only\n";
    return kExitUsage;
  }

  std::optional<JointDistribution> p;
  std::optional<GramianModel> model;
  if (!args.counts.empty()) {
    p = from_counts(CountMatrix(read_matrix_any(args.counts)));
  } else if (!args.distances.empty()) {
    p = from_distances(DistanceMatrix(read_matrix_any(args.distances)), args.sigma);
  } else if (!args.features.empty()) {
    model = from_features(read_matrix_any(args.features));
    p = model->p;
  } else if (!args.diagonal.empty()) {
    const Matrix m = read_matrix_any(args.diagonal);
    Vector mu = m.rows() == 1 ? Vector(m.row(0).transpose()) : Vector(m.col(0));
    p = from_diagonal(mu);
  } else {
    p = read_joint_file(args.joint);
  }

  emit_json(to_json(*p), args.out);
  if (model) {
    std::string model_path = args.model_out;
    if (model_path.empty() && !args.out.empty()) {
      model_path = args.out + ".model.json";
    }
    if (!model_path.empty()) {
      nlohmann::json sidecar{{"lambda", nlohmann::json::array()},
                             {"u", to_json(model->u)}};
      for (Index i = 0; i < model->lambda.size(); ++i) {
        sidecar["lambda"].push_back(model->lambda(i));
      }
      write_json_file(model_path, sidecar);
    } else {
      std::cerr << "build: note: no --out/--model-out, Gramian sidecar not "
                   "written\n";
    }
  }
  std::cout << "I(P) = " << format_double(mutual_information(*p).value())
            << " bits\n";
  return kExitPass;
}

struct SolveArgs {
  std::string input;
  std::string kind = "pairwise";
  int m = 0, m1 = 0, m2 = 0;
  double beta = -1.0;
  bool soft = false;
  int restarts = 10;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::uint64_t max_iter = 100000;
  double tol = 1e-10;
  std::string out;
};

int run_solve(const SolveArgs& args) {
  const auto p = read_joint_file(args.input);

  if (args.kind == "ib") {
    if (args.beta < 0.0) {
      std::cerr << "solve: --kind ib requires --beta >= 0\n";
      return kExitUsage;
    }
    const int m = args.m > 0 ? args.m : args.m1;
    if (m < 1) {
      std::cerr << "solve: --kind ib requires --m\n";
      return kExitUsage;
    }
    IbOptions opts;
    opts.max_iter = args.max_iter;
    opts.tol = args.tol;
    const auto result = ib_iterate(p, args.beta, m, args.seed, opts);
    std::cout << "IB Lagrangian = " << format_double(result.objective.value())
              << " bits (relevance "
              << format_double(result.diagnostics.relevance_bits)
              << ", compression "
              << format_double(result.diagnostics.compression_bits) << ")\n";
    emit_json(to_json(result), args.out);
    return kExitPass;
  }

  const ProblemKind kind = problem_kind_from_string(args.kind);
  if (args.beta >= 0.0 && kind != ProblemKind::kDeterministicIb) {
    std::cerr << "solve: --beta applies to --kind deterministic-ib or ib only\n";
    return kExitUsage;
  }
  const double beta = args.beta >= 0.0 ? args.beta : 0.0;
  const int m1 = args.m1 > 0 ? args.m1 : args.m;
  if (m1 < 1) {
    std::cerr << "solve: missing --m (or --m1)\n";
    return kExitUsage;
  }
  if (kind == ProblemKind::kCoCluster && args.m2 < 1) {
    std::cerr << "solve: co-clustering requires --m2\n";
    return kExitUsage;
  }

  HardSolveOptions hard_opts;
  hard_opts.budget = args.budget;

  std::optional<SolveResult> hard;
  auto solve_hard = [&]() -> SolveResult {
    switch (kind) {
      case ProblemKind::kCoCluster:
        return solve_cocluster_hard(p, m1, args.m2, hard_opts);
      case ProblemKind::kCluster:
        return solve_cluster_hard(p, m1, std::nullopt, hard_opts);
      case ProblemKind::kDeterministicIb:
        return solve_cluster_hard(p, m1, beta, hard_opts);
      case ProblemKind::kPairwise:
        return solve_pairwise_hard(p, m1, hard_opts);
    }
    throw std::logic_error("unreachable");
  };

  if (!args.soft) {
    hard = solve_hard();
    std::cout << "hard optimum = " << format_double(hard->objective.value())
              << " bits\n";
    emit_json(to_json(*hard), args.out);
    return kExitPass;
  }

  ProblemSpec spec(kind, p, m1, kind == ProblemKind::kCoCluster ? args.m2 : 0,
                   kind == ProblemKind::kDeterministicIb ? beta : 0.0);
  SoftAscentOptions soft_opts;
  soft_opts.restarts = args.restarts;
  soft_opts.seed = args.seed;
  soft_opts.max_iter = args.max_iter;
  soft_opts.tol = args.tol;
  const auto soft = solve_soft_ascent(spec, soft_opts);
  std::cout << "soft ascent = " << format_double(soft.objective.value())
            << " bits (" << args.restarts << " restarts)\n";
  try {
    hard = solve_hard();
    std::cout << "hard optimum = " << format_double(hard->objective.value())
              << " bits\n";
  } catch (const BudgetError&) {
    std::cerr << "solve: hard reference skipped (enumeration budget)\n";
  }
  nlohmann::json out = to_json(soft);
  if (hard) out["hard_reference"] = to_json(*hard);
  emit_json(out, args.out);
  return kExitPass;
}

struct SweepArgs {
  std::string input;
  int m = 2;
  double step = 0.025;
  std::vector<std::string> fixed;
  std::string surface;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::string out;
};

int run_sweep(const SweepArgs& args) {
  const auto p = read_joint_file(args.input);
  SweepOptions opts;
  opts.budget = args.budget;
  opts.emit_surface = !args.surface.empty();
  for (const auto& pin : args.fixed) {
    const auto eq = pin.find('=');
    if (eq == std::string::npos) {
      std::cerr << "sweep: --fix expects name=value, got '" << pin << "'\n";
      return kExitUsage;
    }
    opts.fixed.emplace_back(pin.substr(0, eq), std::stod(pin.substr(eq + 1)));
  }
  const auto result = sweep_pairwise(p, args.m, args.step, opts);
  std::cout << "sweep best = " << format_double(result.best_value.value())
            << " bits at (";
  for (std::size_t i = 0; i < result.best_point.size(); ++i) {
    if (i > 0) std::cout << ", ";
    std::cout << result.param_names[i] << "=" << format_double(result.best_point[i]);
  }
  std::cout << ")\n";
  if (!args.surface.empty()) {
    write_sweep_surface_csv_file(args.surface, result);
  }
  emit_json(to_json(result), args.out);
  return kExitPass;
}

struct VerifyArgs {
  std::string suite;
  std::string replay;
  std::string kind = "all";
  int trials = -1;
  std::uint64_t seed = 1;
  int soft_trials = 50;
  double beta = 1.0;
  int n_max = -1;
  int l_max = -1;
  int m_max = 3;
  int m = 2;
  std::string surface;
  int threads = default_threads();
  std::string out;
};

int run_verify(const VerifyArgs& args) {
  std::vector<Report> reports;

  if (!args.replay.empty()) {
    const auto witness = read_json_file(args.replay);
    if (witness.is_array()) {
      for (const auto& w : witness) reports.push_back(replay_witness(w));
    } else if (witness.contains("witnesses") && witness.at("witnesses").is_array()) {
      for (const auto& w : witness.at("witnesses")) {
        reports.push_back(replay_witness(w));
      }
    } else {
      reports.push_back(replay_witness(witness));
    }
  } else if (args.suite == "example3") {
    reports.push_back(reproduce_example3(
        args.surface.empty() ? std::nullopt
                             : std::make_optional(args.surface)));
  } else if (args.suite == "hard-dominance") {
    const int trials = args.trials > 0 ? args.trials : 100;
    TrialSizes sizes;
    if (args.n_max > 0) sizes.n1_max = sizes.n2_max = args.n_max;
    std::vector<ProblemKind> kinds;
    if (args.kind == "all") {
      kinds = {ProblemKind::kCoCluster, ProblemKind::kCluster,
               ProblemKind::kDeterministicIb};
    } else {
      kinds = {problem_kind_from_string(args.kind)};
    }
    for (const auto kind : kinds) {
      reports.push_back(check_hard_dominance(kind, trials, sizes, args.seed,
                                             args.soft_trials, args.beta,
                                             args.threads));
    }
  } else if (args.suite == "diagonal") {
    reports.push_back(run_diagonal_suite(args.trials > 0 ? args.trials : 50,
                                         args.n_max > 0 ? args.n_max : 6, {2, 3},
                                         args.seed, args.threads));
  } else if (args.suite == "lifted") {
    reports.push_back(run_lifted_suite(args.trials > 0 ? args.trials : 20,
                                       args.n_max > 0 ? args.n_max : 7,
                                       args.m_max, args.seed, args.threads));
  } else if (args.suite == "gramian") {
    reports.push_back(run_gramian_suite(args.trials > 0 ? args.trials : 20,
                                        args.n_max > 0 ? args.n_max : 6,
                                        args.l_max > 0 ? args.l_max : 4, args.m,
                                        args.seed, args.threads));
  } else if (args.suite == "boltzmann") {
    reports.push_back(run_boltzmann_suite(args.trials > 0 ? args.trials : 20,
                                          args.n_max > 0 ? args.n_max : 6,
                                          args.m, args.seed, args.threads));
  } else if (args.suite == "counterexample") {
    TrialSizes sizes;
    sizes.n1_max = args.n_max > 0 ? args.n_max : 5;
    sizes.l_max = args.l_max > 0 ? args.l_max : 4;
    sizes.m_values = {args.m};
    reports.push_back(search_sufficient_condition_counterexample(
        args.trials > 0 ? args.trials : 10000, sizes, args.seed, args.threads));
  } else {
    std::cerr << "verify: unknown suite '" << args.suite
              << "' (example3, hard-dominance, diagonal, lifted, gramian, "
                 "boltzmann, counterexample)\n";
    return kExitUsage;
  }

  bool all_pass = true;
  for (const auto& report : reports) {
    all_pass = all_pass && report.pass;
    std::cout << (report.pass ? "[PASS] " : "[FAIL] ") << report.claim << " ("
              << report.trials << " trials, " << report.violations
              << " recorded events)\n";
  }
  nlohmann::json payload;
  if (reports.size() == 1) {
    payload = to_json(reports.front());
  } else {
    payload = {{"pass", all_pass}, {"reports", nlohmann::json::array()}};
    for (const auto& report : reports) payload["reports"].push_back(to_json(report));
  }
  emit_json(payload, args.out);
  return all_pass ? kExitPass : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-theoretic clustering: builders, solvers, and an "
               "empirical verification harness. Values are in bits."};
  app.require_subcommand(1);

  double construction_tol = 0.0;
  app.add_option("--construction-tol", construction_tol,
                 "override the construction-identity tolerance (default 1e-12)");

  BuildArgs build_args;
  auto* build = app.add_subcommand(
      "build", "Construct a joint distribution from data and print I(P)");
  build->add_option("--counts", build_args.counts,
                    "co-occurrence count matrix (csv/json)");
  build->add_option("--distances", build_args.distances,
                    "symmetric distance matrix (csv/json)");
  build->add_option("--features", build_args.features,
                    "positive feature matrix, one row per item (csv/json)");
  build->add_option("--diagonal", build_args.diagonal,
                    "probability vector for a diagonal joint (csv/json)");
  build->add_option("--joint", build_args.joint,
                    "raw joint probability matrix (csv/json)");
  build->add_option("--sigma", build_args.sigma,
                    "Boltzmann scale for --distances (> 0)");
  build->add_option("--out", build_args.out, "output JSON path (default stdout)");
  build->add_option("--model-out", build_args.model_out,
                    "Gramian sidecar path (lambda, U)");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Optimize a clustering problem");
  solve->add_option("input", solve_args.input, "joint distribution (json/csv)")
      ->required();
  solve->add_option("--kind", solve_args.kind,
                    "cocluster | cluster | pairwise | deterministic-ib | ib");
  solve->add_option("--m", solve_args.m, "cluster count");
  solve->add_option("--m1", solve_args.m1, "clusters for the first alphabet");
  solve->add_option("--m2", solve_args.m2, "clusters for the second alphabet");
  solve->add_option("--beta", solve_args.beta, "trade-off (deterministic-ib, ib)");
  solve->add_flag("--soft", solve_args.soft,
                  "projected gradient ascent instead of exhaustive search");
  solve->add_option("--restarts", solve_args.restarts, "ascent restarts");
  solve->add_option("--seed", solve_args.seed, "random seed");
  solve->add_option("--budget", solve_args.budget, "enumeration budget");
  solve->add_option("--max-iter", solve_args.max_iter, "iteration cap");
  solve->add_option("--tol", solve_args.tol, "convergence tolerance");
  solve->add_option("--out", solve_args.out, "output JSON path (default stdout)");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand(
      "sweep", "Grid-evaluate the pairwise objective over the simplex");
  sweep->add_option("input", sweep_args.input, "square joint distribution")
      ->required();
  sweep->add_option("--m", sweep_args.m, "cluster count (default 2)");
  sweep->add_option("--step", sweep_args.step, "grid step (default 0.025)");
  sweep->add_option("--fix", sweep_args.fixed,
                    "pin a parameter, e.g. --fix r=1 (repeatable)");
  sweep->add_option("--surface", sweep_args.surface, "surface CSV output path");
  sweep->add_option("--budget", sweep_args.budget, "grid-point budget");
  sweep->add_option("--out", sweep_args.out, "summary JSON path (default stdout)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand(
      "verify", "Run a certification suite or replay a witness");
  verify->add_option("suite", verify_args.suite,
                     "example3 | hard-dominance | diagonal | lifted | gramian | "
                     "boltzmann | counterexample");
  verify->add_option("--replay", verify_args.replay,
                     "witness JSON (single, array, or report) to re-evaluate");
  verify->add_option("--kind", verify_args.kind,
                     "hard-dominance: cocluster | cluster | deterministic-ib | all");
  verify->add_option("--trials", verify_args.trials, "trial count");
  verify->add_option("--seed", verify_args.seed, "master seed");
  verify->add_option("--soft-trials", verify_args.soft_trials,
                     "soft assignments per trial");
  verify->add_option("--beta", verify_args.beta, "deterministic-ib trade-off");
  verify->add_option("--n-max", verify_args.n_max, "alphabet size cap");
  verify->add_option("--l-max", verify_args.l_max, "feature dimension cap");
  verify->add_option("--m-max", verify_args.m_max, "latent alphabet cap (lifted)");
  verify->add_option("--m", verify_args.m, "cluster count (default 2)");
  verify->add_option("--surface", verify_args.surface,
                     "example3: write the fixed-r surface CSV here");
  verify->add_option("--threads,-j", verify_args.threads,
                     "worker threads (default: MICLUST_THREADS or 1)");
  verify->add_option("--out", verify_args.out, "report JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (construction_tol > 0.0) Tolerances::set_construction(construction_tol);
    if (build->parsed()) return run_build(build_args);
    if (solve->parsed()) return run_solve(solve_args);
    if (sweep->parsed()) return run_sweep(sweep_args);
    if (verify->parsed()) {
      if (verify_args.suite.empty() && verify_args.replay.empty()) {
        std::cerr << "verify: provide a suite name or --replay\n";
        return kExitUsage;
      }
      return run_verify(verify_args);
    }
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
