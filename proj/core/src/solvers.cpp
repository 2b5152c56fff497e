#include "miclust/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "miclust/rng.hpp"

namespace miclust {

namespace {

constexpr double kLogFloor = 1e-300;  // guards logs of dead mass
constexpr double kMinLineSearchStep = 1e-14;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double safe_log(double x) { return std::log(std::max(x, kLogFloor)); }

/// d I(Q) / d Q in bits, including the per-row/column constants so the
/// result matches finite differences of the unconstrained objective.
Matrix mi_gradient_wrt_joint(const Matrix& q) {
  const Vector a = q.rowwise().sum();
  const Vector b = q.colwise().sum().transpose();
  Matrix g(q.rows(), q.cols());
  for (Index k = 0; k < q.rows(); ++k) {
    for (Index l = 0; l < q.cols(); ++l) {
      g(k, l) = (safe_log(q(k, l)) - safe_log(a(k)) - safe_log(b(l)) - 1.0) /
                std::numbers::ln2;
    }
  }
  return g;
}

Vector project_to_simplex(const Vector& v) {
  const Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0;
  double theta = 0.0;
  for (Index j = 0; j < n; ++j) {
    css += u[static_cast<std::size_t>(j)];
    const double t = (css - 1.0) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0);
}

Matrix project_rows(const Matrix& w) {
  Matrix out(w.rows(), w.cols());
  for (Index i = 0; i < w.rows(); ++i) {
    out.row(i) = project_to_simplex(w.row(i).transpose()).transpose();
  }
  return out;
}

}  // namespace

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kCoCluster: return "cocluster";
    case ProblemKind::kCluster: return "cluster";
    case ProblemKind::kPairwise: return "pairwise";
    case ProblemKind::kDeterministicIb: return "deterministic-ib";
  }
  throw std::logic_error("to_string: unknown problem kind");
}

ProblemKind problem_kind_from_string(const std::string& name) {
  if (name == "cocluster") return ProblemKind::kCoCluster;
  if (name == "cluster") return ProblemKind::kCluster;
  if (name == "pairwise") return ProblemKind::kPairwise;
  if (name == "deterministic-ib" || name == "dib") {
    return ProblemKind::kDeterministicIb;
  }
  throw std::invalid_argument("unknown problem kind: " + name);
}

ProblemSpec::ProblemSpec(ProblemKind kind_, JointDistribution p_, int m1_, int m2_,
                         double beta_)
    : kind(kind_), p(std::move(p_)), m1(m1_), m2(m2_), beta(beta_) {
  if (m1 < 1) throw std::invalid_argument("ProblemSpec: m1 must be >= 1");
  if (kind == ProblemKind::kCoCluster) {
    if (m2 < 1) throw std::invalid_argument("ProblemSpec: co-clustering needs m2");
  } else if (m2 != 0) {
    throw std::invalid_argument("ProblemSpec: m2 applies to co-clustering only");
  }
  if (beta < 0.0) throw std::invalid_argument("ProblemSpec: beta must be >= 0");
  if (beta != 0.0 && kind != ProblemKind::kDeterministicIb) {
    throw std::invalid_argument(
        "ProblemSpec: beta applies to deterministic-ib only");
  }
  if (kind == ProblemKind::kPairwise && !p.is_square()) {
    throw std::invalid_argument("ProblemSpec: pairwise clustering needs square P");
  }
}

double cocluster_objective_bits(const JointDistribution& p,
                                const StochasticMatrix& w1,
                                const StochasticMatrix& w2) {
  return mutual_information(cluster_joint(p, w1, w2)).value();
}

double cluster_objective_bits(const JointDistribution& p, const StochasticMatrix& w) {
  if (w.items() != p.cols()) {
    throw std::invalid_argument("cluster_objective: W must have N2 rows");
  }
  return mutual_information(JointDistribution(p.p() * w.w())).value();
}

double dib_objective_bits(const JointDistribution& p, const StochasticMatrix& w,
                          double beta) {
  const Vector nu = w.w().transpose() * p.mu2();
  return cluster_objective_bits(p, w) - beta * entropy(nu).value();
}

double pairwise_objective_bits(const JointDistribution& p, const StochasticMatrix& w) {
  if (!p.is_square()) {
    throw std::invalid_argument("pairwise_objective: P must be square");
  }
  return mutual_information(cluster_joint(p, w, w)).value();
}

double pairwise_assignment_value_bits(const JointDistribution& p,
                                      const DeterministicAssignment& v) {
  const StochasticMatrix w = v.canonical().stochastic();
  return mutual_information(cluster_joint(p, w, w)).value();
}

namespace {

/// Shared scaffolding of the exhaustive solvers: track the maximum with
/// exact-tie collection; enumeration order supplies the lexicographic
/// tie-break.
struct HardSearch {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<AssignmentPair> argmax;
  std::vector<Evaluation> evaluations;
  std::uint64_t visited = 0;
  bool record = false;

  void offer(double value, AssignmentPair candidate) {
    ++visited;
    if (record) evaluations.push_back({candidate, value});
    if (value > best) {
      best = value;
      argmax.clear();
      argmax.push_back(std::move(candidate));
    } else if (value == best) {
      argmax.push_back(std::move(candidate));
    }
  }
};

EnumerationOptions enumeration_options(const HardSolveOptions& opts) {
  return EnumerationOptions{opts.surjective_only, opts.dedupe_labels, opts.budget};
}

SolveResult finish_hard(ProblemKind kind, HardSearch&& search,
                        Clock::time_point start) {
  if (search.argmax.empty()) {
    throw std::invalid_argument(
        "hard solver: no assignment satisfies the enumeration flags");
  }
  SolveResult result;
  result.kind = kind;
  result.objective = Bits(search.best);
  result.hard1 = search.argmax.front().first;
  result.hard2 = search.argmax.front().second;
  result.argmax_set = std::move(search.argmax);
  result.evaluations = std::move(search.evaluations);
  result.diagnostics.evaluations = search.visited;
  result.diagnostics.wall_ms = elapsed_ms(start);
  return result;
}

}  // namespace

SolveResult solve_cocluster_hard(const JointDistribution& p, int m1, int m2,
                                 const HardSolveOptions& opts) {
  if (m1 < 1 || m2 < 1) {
    throw std::invalid_argument("solve_cocluster_hard: cluster counts must be >= 1");
  }
  const auto start = Clock::now();
  const auto eopts = enumeration_options(opts);
  const std::uint64_t count1 = count_assignments(p.rows(), m1, eopts);
  const std::uint64_t count2 = count_assignments(p.cols(), m2, eopts);
  if (count1 > opts.budget / std::max<std::uint64_t>(count2, 1)) {
    throw BudgetError("co-clustering search of " + std::to_string(count1) + " x " +
                      std::to_string(count2) +
                      " assignment pairs exceeds the budget; use the soft solver");
  }

  const auto side2 = enumerate_deterministic(p.cols(), m2, eopts);
  std::vector<StochasticMatrix> side2_w;
  side2_w.reserve(side2.size());
  for (const auto& v : side2) side2_w.push_back(v.stochastic());

  HardSearch search;
  search.record = opts.record_evaluations;
  for_each_assignment(p.rows(), m1, eopts, [&](const DeterministicAssignment& v1) {
    const StochasticMatrix w1 = v1.stochastic();
    for (std::size_t k = 0; k < side2.size(); ++k) {
      const double value = cocluster_objective_bits(p, w1, side2_w[k]);
      search.offer(value, AssignmentPair{v1, side2[k]});
    }
  });
  return finish_hard(ProblemKind::kCoCluster, std::move(search), start);
}

SolveResult solve_cluster_hard(const JointDistribution& p, int m2,
                               std::optional<double> beta,
                               const HardSolveOptions& opts) {
  if (m2 < 1) {
    throw std::invalid_argument("solve_cluster_hard: cluster count must be >= 1");
  }
  if (beta && *beta < 0.0) {
    throw std::invalid_argument("solve_cluster_hard: beta must be >= 0");
  }
  const auto start = Clock::now();
  HardSearch search;
  search.record = opts.record_evaluations;
  for_each_assignment(
      p.cols(), m2, enumeration_options(opts), [&](const DeterministicAssignment& v) {
        const StochasticMatrix w = v.stochastic();
        const double value = beta ? dib_objective_bits(p, w, *beta)
                                  : cluster_objective_bits(p, w);
        search.offer(value, AssignmentPair{v, std::nullopt});
      });
  return finish_hard(beta ? ProblemKind::kDeterministicIb : ProblemKind::kCluster,
                     std::move(search), start);
}

SolveResult solve_pairwise_hard(const JointDistribution& p, int m,
                                const HardSolveOptions& opts) {
  if (!p.is_square()) {
    throw std::invalid_argument("solve_pairwise_hard: P must be square");
  }
  if (m < 1) {
    throw std::invalid_argument("solve_pairwise_hard: cluster count must be >= 1");
  }
  const auto start = Clock::now();
  HardSearch search;
  search.record = opts.record_evaluations;
  for_each_assignment(
      p.rows(), m, enumeration_options(opts), [&](const DeterministicAssignment& v) {
        search.offer(pairwise_assignment_value_bits(p, v),
                     AssignmentPair{v, std::nullopt});
      });
  return finish_hard(ProblemKind::kPairwise, std::move(search), start);
}

std::vector<std::string> sweep_param_names(Index n, int m) {
  std::vector<std::string> names;
  for (Index i = 0; i < n; ++i) {
    std::string row_name;
    if (n <= 11) {
      row_name = std::string(1, static_cast<char>('p' + i));
    } else {
      row_name = "w" + std::to_string(i + 1);
    }
    if (m == 2) {
      names.push_back(row_name);
    } else {
      for (int j = 1; j < m; ++j) {
        names.push_back(row_name + std::to_string(j));
      }
    }
  }
  return names;
}

namespace {

std::vector<double> grid_axis(double step) {
  std::vector<double> values;
  for (int k = 0;; ++k) {
    const double v = k * step;
    if (v >= 1.0 - 1e-12) break;
    values.push_back(v);
  }
  values.push_back(1.0);
  return values;
}

}  // namespace

SweepResult sweep_pairwise(const JointDistribution& p, int m, double step,
                           const SweepOptions& opts) {
  if (!p.is_square()) {
    throw std::invalid_argument("sweep_pairwise: P must be square");
  }
  if (m < 1) throw std::invalid_argument("sweep_pairwise: m must be >= 1");
  if (!(step > 0.0)) throw std::invalid_argument("sweep_pairwise: step must be > 0");
  if (1.0 / step + 2.0 > static_cast<double>(opts.budget)) {
    throw BudgetError("sweep step " + std::to_string(step) +
                      " yields more grid values per axis than the budget");
  }

  const Index n = p.rows();
  const int per_row = m - 1;
  const auto names = sweep_param_names(n, m);
  const auto num_params = names.size();

  // Resolve pins.
  std::vector<double> pin_value(num_params, -1.0);
  for (const auto& [name, value] : opts.fixed) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      throw std::invalid_argument("sweep_pairwise: unknown parameter '" + name + "'");
    }
    if (value < 0.0 || value > 1.0) {
      throw std::invalid_argument("sweep_pairwise: pinned value out of [0, 1]");
    }
    const auto idx = static_cast<std::size_t>(it - names.begin());
    if (pin_value[idx] >= 0.0) {
      throw std::invalid_argument("sweep_pairwise: parameter '" + name +
                                  "' pinned twice");
    }
    pin_value[idx] = value;
  }

  const auto axis = grid_axis(step);
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < num_params; ++i) {
    if (pin_value[i] < 0.0) free_idx.push_back(i);
  }
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < free_idx.size(); ++i) {
    if (points > opts.budget / axis.size()) {
      throw BudgetError("sweep grid of " + std::to_string(axis.size()) + "^" +
                        std::to_string(free_idx.size()) +
                        " points exceeds the budget");
    }
    points *= axis.size();
  }

  SweepResult result;
  result.grid_step = step;
  result.param_names = names;
  if (opts.emit_surface) result.surface.emplace();

  std::vector<double> params(num_params, 0.0);
  for (std::size_t i = 0; i < num_params; ++i) {
    if (pin_value[i] >= 0.0) params[i] = pin_value[i];
  }

  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> odo(free_idx.size(), 0);
  Matrix w(n, m);
  std::vector<int> corner_labels(static_cast<std::size_t>(n));

  for (std::uint64_t visit = 0; visit < points; ++visit) {
    for (std::size_t d = 0; d < free_idx.size(); ++d) {
      params[free_idx[d]] = axis[odo[d]];
    }

    // Build W row by row; skip infeasible simplex coordinates (m > 2).
    bool feasible = true;
    bool corner = true;
    for (Index i = 0; i < n && feasible; ++i) {
      double row_sum = 0.0;
      int one_at = -1;
      for (int j = 0; j < per_row; ++j) {
        const double x = params[static_cast<std::size_t>(i) * per_row +
                                static_cast<std::size_t>(j)];
        w(i, j) = x;
        row_sum += x;
        if (x == 1.0 && one_at < 0) one_at = j;
        if (x != 0.0 && x != 1.0) corner = false;
      }
      const double rest = 1.0 - row_sum;
      if (rest < -1e-12) {
        feasible = false;
        break;
      }
      w(i, m - 1) = std::max(rest, 0.0);
      if (corner) {
        corner_labels[static_cast<std::size_t>(i)] = one_at >= 0 ? one_at : m - 1;
        if (one_at >= 0 && row_sum != 1.0) corner = false;  // two ones in a row
      }
    }
    // Advance the odometer (last free axis fastest = lexicographic scan).
    for (std::size_t d = free_idx.size(); d-- > 0;) {
      if (++odo[d] < axis.size()) break;
      odo[d] = 0;
    }
    if (!feasible) continue;

    double value;
    if (corner) {
      // Deterministic points share the hard solver's canonical evaluation
      // path, so corner values and hard values are bit-identical.
      value = pairwise_assignment_value_bits(
          p, DeterministicAssignment(corner_labels, m));
    } else {
      value = pairwise_objective_bits(p, StochasticMatrix(w));
    }

    if (result.surface) result.surface->push_back({params, value});
    if (value > best) {
      best = value;
      result.best_point = params;
    }
  }

  if (result.best_point.empty()) {
    throw std::logic_error("sweep_pairwise: empty grid");
  }
  result.best_value = Bits(best);
  return result;
}

namespace detail {

namespace {

/// MI of a non-negative matrix against the product of its own marginals;
/// agrees bitwise with mutual_information on valid joints and extends it
/// off the simplex (where the ascent line search may evaluate).
double raw_mi_bits(const Matrix& q) {
  const Vector a = q.rowwise().sum();
  const Vector b = q.colwise().sum().transpose();
  double mi = 0.0;
  for (Index k = 0; k < q.rows(); ++k) {
    for (Index l = 0; l < q.cols(); ++l) {
      const double v = q(k, l);
      if (v <= 0.0) continue;
      mi += v * std::log2(v / (a(k) * b(l)));
    }
  }
  return mi;
}

double raw_entropy_bits(const Vector& v) {
  double h = 0.0;
  for (Index k = 0; k < v.size(); ++k) {
    if (v(k) > 0.0) h -= v(k) * std::log2(v(k));
  }
  return h;
}

}  // namespace

double objective_value(const ProblemSpec& spec, const std::vector<Matrix>& mats) {
  const Matrix& p = spec.p.p();
  switch (spec.kind) {
    case ProblemKind::kCoCluster:
      return raw_mi_bits(mats[0].transpose() * p * mats[1]);
    case ProblemKind::kCluster:
      return raw_mi_bits(p * mats[0]);
    case ProblemKind::kPairwise:
      return raw_mi_bits(mats[0].transpose() * p * mats[0]);
    case ProblemKind::kDeterministicIb:
      return raw_mi_bits(p * mats[0]) -
             spec.beta * raw_entropy_bits(mats[0].transpose() * spec.p.mu2());
  }
  throw std::logic_error("objective_value: unknown kind");
}

std::vector<Matrix> objective_gradient(const ProblemSpec& spec,
                                       const std::vector<Matrix>& mats) {
  const Matrix& p = spec.p.p();
  switch (spec.kind) {
    case ProblemKind::kCoCluster: {
      const Matrix q = mats[0].transpose() * p * mats[1];
      const Matrix g = mi_gradient_wrt_joint(q);
      return {(p * mats[1]) * g.transpose(), p.transpose() * mats[0] * g};
    }
    case ProblemKind::kCluster: {
      const Matrix g = mi_gradient_wrt_joint(p * mats[0]);
      return {p.transpose() * g};
    }
    case ProblemKind::kPairwise: {
      const Matrix q = mats[0].transpose() * p * mats[0];
      const Matrix g = mi_gradient_wrt_joint(q);
      return {p * mats[0] * g.transpose() + p.transpose() * mats[0] * g};
    }
    case ProblemKind::kDeterministicIb: {
      const Matrix g = mi_gradient_wrt_joint(p * mats[0]);
      Matrix grad = p.transpose() * g;
      const Vector nu = mats[0].transpose() * spec.p.mu2();
      for (Index j = 0; j < grad.rows(); ++j) {
        for (Index l = 0; l < grad.cols(); ++l) {
          grad(j, l) += spec.beta * spec.p.mu2()(j) * (safe_log(nu(l)) + 1.0) /
                        std::numbers::ln2;
        }
      }
      return {grad};
    }
  }
  throw std::logic_error("objective_gradient: unknown kind");
}

}  // namespace detail

namespace {

struct AscentState {
  std::vector<Matrix> mats;  // one or two row-stochastic iterates
};

double ascent_objective(const ProblemSpec& spec, const AscentState& s) {
  return detail::objective_value(spec, s.mats);
}

std::vector<Matrix> ascent_gradient(const ProblemSpec& spec, const AscentState& s) {
  return detail::objective_gradient(spec, s.mats);
}

}  // namespace

SolveResult solve_soft_ascent(const ProblemSpec& spec, const SoftAscentOptions& opts) {
  if (opts.restarts < 1) {
    throw std::invalid_argument("solve_soft_ascent: restarts must be >= 1");
  }
  const auto start = Clock::now();

  SolveResult result;
  result.kind = spec.kind;
  result.diagnostics.restarts = opts.restarts;

  double best = -std::numeric_limits<double>::infinity();
  AscentState best_state;
  bool all_converged = true;

  for (int restart = 0; restart < opts.restarts; ++restart) {
    AscentState state;
    if (spec.kind == ProblemKind::kCoCluster) {
      state.mats = {
          random_stochastic(spec.p.rows(), spec.m1,
                            rng::split(opts.seed, 2 * static_cast<std::uint64_t>(restart)))
              .w(),
          random_stochastic(spec.p.cols(), spec.m2,
                            rng::split(opts.seed,
                                       2 * static_cast<std::uint64_t>(restart) + 1))
              .w()};
    } else {
      state.mats = {random_stochastic(
                        spec.p.cols(), spec.m1,
                        rng::split(opts.seed, 2 * static_cast<std::uint64_t>(restart)))
                        .w()};
    }

    double f = ascent_objective(spec, state);
    ++result.diagnostics.evaluations;
    bool converged = false;

    for (std::uint64_t iter = 0; iter < opts.max_iter; ++iter) {
      const auto grads = ascent_gradient(spec, state);
      double step = opts.initial_step;
      bool accepted = false;
      while (step >= kMinLineSearchStep) {
        AscentState next;
        next.mats.reserve(state.mats.size());
        for (std::size_t k = 0; k < state.mats.size(); ++k) {
          next.mats.push_back(project_rows(state.mats[k] + step * grads[k]));
        }
        const double f_next = ascent_objective(spec, next);
        ++result.diagnostics.evaluations;
        if (f_next >= f) {
          double delta = 0.0;
          for (std::size_t k = 0; k < state.mats.size(); ++k) {
            delta = std::max(delta,
                             (next.mats[k] - state.mats[k]).cwiseAbs().maxCoeff());
          }
          state = std::move(next);
          f = f_next;
          accepted = true;
          ++result.diagnostics.iterations;
          if (delta < opts.tol) converged = true;
          break;
        }
        step /= 2;
      }
      if (!accepted || converged) {
        converged = true;  // no ascent direction left counts as converged
        break;
      }
    }

    all_converged = all_converged && converged;
    if (f > best) {
      best = f;
      best_state = state;
    }
  }

  result.objective = Bits(best);
  result.soft1 = StochasticMatrix(best_state.mats[0]);
  if (best_state.mats.size() > 1) {
    result.soft2 = StochasticMatrix(best_state.mats[1]);
  }
  result.diagnostics.converged = all_converged;
  result.diagnostics.wall_ms = elapsed_ms(start);
  return result;
}

SolveResult ib_iterate(const JointDistribution& p, double beta, int m,
                       const StochasticMatrix& init, const IbOptions& opts) {
  if (beta < 0.0) throw std::invalid_argument("ib_iterate: beta must be >= 0");
  if (m < 1) throw std::invalid_argument("ib_iterate: m must be >= 1");
  if (init.items() != p.cols() || init.clusters() != m) {
    throw std::invalid_argument("ib_iterate: init must be N2 x m");
  }
  if ((p.mu2().array() <= 0.0).any()) {
    throw std::invalid_argument("ib_iterate: every column marginal must be positive");
  }
  const auto start = Clock::now();

  // Rows of W(1|2): the conditional distribution of X1 given X2 = i.
  const Matrix cond = conditional(p, Conditional::kRowsGivenColumns).w();
  const Index n2 = p.cols();

  Matrix w = init.w();
  SolveResult result;
  result.kind = ProblemKind::kCluster;
  result.diagnostics.converged = false;

  auto lagrangian = [&](const Matrix& cur, double* relevance, double* compression) {
    const double rel = mutual_information(JointDistribution(p.p() * cur)).value();
    const double comp =
        mutual_information(JointDistribution(p.mu2().asDiagonal() * cur)).value();
    if (relevance) *relevance = rel;
    if (compression) *compression = comp;
    return rel - beta * comp;
  };

  for (std::uint64_t iter = 0; iter < opts.max_iter; ++iter) {
    const Vector nu = w.transpose() * p.mu2();
    const Matrix pw = p.p() * w;

    Matrix logits = Matrix::Constant(n2, m, -std::numeric_limits<double>::infinity());
    for (Index j = 0; j < m; ++j) {
      if (nu(j) <= 0.0) continue;  // dead cluster: column stays zero
      const Vector centroid = pw.col(j) / nu(j);
      for (Index i = 0; i < n2; ++i) {
        const Bits d = kl_divergence(Vector(cond.row(i).transpose()), centroid);
        if (beta > 0.0 && d.is_infinite()) continue;
        logits(i, j) = std::log(nu(j)) - (beta > 0.0 ? beta * d.value() : 0.0);
      }
    }

    Matrix next(n2, m);
    for (Index i = 0; i < n2; ++i) {
      const double top = logits.row(i).maxCoeff();
      if (top == -std::numeric_limits<double>::infinity()) {
        next.row(i) = w.row(i);  // no admissible cluster; hold the row
        continue;
      }
      double sum = 0.0;
      for (Index j = 0; j < m; ++j) {
        const double e = std::exp(logits(i, j) - top);
        next(i, j) = e;
        sum += e;
      }
      next.row(i) /= sum;
    }

    const double delta = (next - w).cwiseAbs().maxCoeff();
    w = std::move(next);
    ++result.diagnostics.iterations;
    result.diagnostics.objective_trace.push_back(lagrangian(w, nullptr, nullptr));
    if (delta < opts.tol) {
      result.diagnostics.converged = true;
      break;
    }
  }

  double relevance = 0.0;
  double compression = 0.0;
  result.objective = Bits(lagrangian(w, &relevance, &compression));
  result.diagnostics.relevance_bits = relevance;
  result.diagnostics.compression_bits = compression;
  result.soft1 = StochasticMatrix(std::move(w));
  result.diagnostics.wall_ms = elapsed_ms(start);
  return result;
}

SolveResult ib_iterate(const JointDistribution& p, double beta, int m,
                       std::uint64_t seed, const IbOptions& opts) {
  return ib_iterate(p, beta, m, random_stochastic(p.cols(), m, seed), opts);
}

}  // namespace miclust
