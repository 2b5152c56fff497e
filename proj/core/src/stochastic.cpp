#include "miclust/stochastic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "miclust/rng.hpp"

namespace miclust {

namespace {

// Stricter than the 1e-12 decomposition contract: the dropped residual can
// spread over M columns per row, so peel down to 1e-15 to keep the weight
// sum within 1e-12 of 1 even for wide matrices.
constexpr double kPeelResidualTol = 1e-15;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  constexpr auto kCap = std::uint64_t{1} << 63;
  if (a != 0 && b > kCap / a) return kCap;
  return a * b;
}

/// Stirling numbers of the second kind, saturating; S(n, k) counts the
/// canonical (deduped) assignments that use exactly k clusters.
std::uint64_t stirling2(Index n, Index k) {
  if (k < 0 || k > n) return 0;
  if (k == 0) return n == 0 ? 1 : 0;
  constexpr auto kCap = std::uint64_t{1} << 63;
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (Index i = 1; i <= n; ++i) {
    for (Index j = std::min<Index>(i, k); j >= 1; --j) {
      const std::uint64_t a = saturating_mul(static_cast<std::uint64_t>(j),
                                             row[static_cast<std::size_t>(j)]);
      const std::uint64_t b = row[static_cast<std::size_t>(j) - 1];
      row[static_cast<std::size_t>(j)] = (a > kCap - b) ? kCap : a + b;
    }
    row[0] = 0;
  }
  return row[static_cast<std::size_t>(k)];
}

std::uint64_t saturating_pow(std::uint64_t base, Index exp) {
  std::uint64_t out = 1;
  for (Index i = 0; i < exp; ++i) out = saturating_mul(out, base);
  return out;
}

/// Surjections onto exactly m clusters, labeled: m! S(n, m) via inclusion-
/// exclusion would overflow earlier, so build from S and factorial.
std::uint64_t labeled_surjections(Index n, Index m) {
  std::uint64_t fact = 1;
  for (Index i = 2; i <= m; ++i) fact = saturating_mul(fact, static_cast<std::uint64_t>(i));
  return saturating_mul(fact, stirling2(n, m));
}

}  // namespace

StochasticMatrix::StochasticMatrix(Matrix w) : w_(std::move(w)) {
  if (w_.rows() < 1 || w_.cols() < 1) {
    throw std::invalid_argument("StochasticMatrix: empty matrix");
  }
  if ((w_.array() < 0.0).any()) {
    throw std::invalid_argument("StochasticMatrix: negative entry");
  }
  const double tol = Tolerances::construction();
  for (Index i = 0; i < w_.rows(); ++i) {
    const double s = w_.row(i).sum();
    if (std::abs(s - 1.0) > tol) {
      throw std::invalid_argument("StochasticMatrix: row " + std::to_string(i + 1) +
                                  " sums to " + std::to_string(s));
    }
  }
}

DeterministicAssignment::DeterministicAssignment(std::vector<int> labels,
                                                 int num_clusters)
    : labels_(std::move(labels)), num_clusters_(num_clusters) {
  if (labels_.empty() || num_clusters_ < 1) {
    throw std::invalid_argument("DeterministicAssignment: empty assignment");
  }
  for (const int l : labels_) {
    if (l < 0 || l >= num_clusters_) {
      throw std::invalid_argument("DeterministicAssignment: label out of range");
    }
  }
}

Matrix DeterministicAssignment::matrix() const {
  Matrix v = Matrix::Zero(items(), num_clusters_);
  for (Index i = 0; i < items(); ++i) {
    v(i, labels_[static_cast<std::size_t>(i)]) = 1.0;
  }
  return v;
}

StochasticMatrix DeterministicAssignment::stochastic() const {
  return StochasticMatrix(matrix());
}

DeterministicAssignment DeterministicAssignment::canonical() const {
  std::vector<int> remap(static_cast<std::size_t>(num_clusters_), -1);
  std::vector<int> out(labels_.size());
  int next = 0;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    int& slot = remap[static_cast<std::size_t>(labels_[i])];
    if (slot < 0) slot = next++;
    out[i] = slot;
  }
  return DeterministicAssignment(std::move(out), num_clusters_);
}

ConvexDecomposition::ConvexDecomposition(std::vector<double> weights,
                                         std::vector<DeterministicAssignment> parts)
    : weights_(std::move(weights)), parts_(std::move(parts)) {
  if (weights_.empty() || weights_.size() != parts_.size()) {
    throw std::invalid_argument("ConvexDecomposition: weights/parts mismatch");
  }
  double sum = 0.0;
  for (const double w : weights_) {
    if (w <= 0.0) {
      throw std::invalid_argument("ConvexDecomposition: non-positive weight");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > Tolerances::construction()) {
    throw std::invalid_argument("ConvexDecomposition: weights sum to " +
                                std::to_string(sum));
  }
  const Index n = parts_.front().items();
  const int m = parts_.front().num_clusters();
  const auto bound = static_cast<std::size_t>(n) * static_cast<std::size_t>(m - 1) + 1;
  if (parts_.size() > bound) {
    throw std::invalid_argument("ConvexDecomposition: more than N(M-1)+1 parts");
  }
  for (const auto& part : parts_) {
    if (part.items() != n || part.num_clusters() != m) {
      throw std::invalid_argument("ConvexDecomposition: part shape mismatch");
    }
  }
}

ConvexDecomposition decompose(const StochasticMatrix& w) {
  const Index n = w.items();
  const Index m = w.clusters();
  Matrix residual = w.w();

  std::vector<double> weights;
  std::vector<DeterministicAssignment> parts;
  const std::size_t max_parts =
      static_cast<std::size_t>(n) * static_cast<std::size_t>(m - 1) + 1;

  while (residual.maxCoeff() > kPeelResidualTol && parts.size() < max_parts) {
    std::vector<int> pick(static_cast<std::size_t>(n));
    double lambda = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      Index best = 0;
      for (Index j = 1; j < m; ++j) {
        if (residual(i, j) > residual(i, best)) best = j;  // ties keep lowest j
      }
      pick[static_cast<std::size_t>(i)] = static_cast<int>(best);
      lambda = std::min(lambda, residual(i, best));
    }
    if (!(lambda > 0.0)) break;
    for (Index i = 0; i < n; ++i) {
      residual(i, pick[static_cast<std::size_t>(i)]) -= lambda;
    }
    weights.push_back(lambda);
    parts.emplace_back(std::move(pick), static_cast<int>(m));
  }
  return ConvexDecomposition(std::move(weights), std::move(parts));
}

StochasticMatrix reconstruct(const ConvexDecomposition& d) {
  const auto& parts = d.parts();
  Matrix sum = Matrix::Zero(parts.front().items(), parts.front().num_clusters());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    sum += d.weights()[i] * parts[i].matrix();
  }
  return StochasticMatrix(std::move(sum));
}

std::uint64_t count_assignments(Index n, Index m, const EnumerationOptions& opts) {
  if (opts.dedupe_labels) {
    if (opts.surjective_only) return stirling2(n, m);
    std::uint64_t total = 0;
    constexpr auto kCap = std::uint64_t{1} << 63;
    for (Index k = 1; k <= std::min(n, m); ++k) {
      const std::uint64_t s = stirling2(n, k);
      total = (total > kCap - s) ? kCap : total + s;
    }
    return total;
  }
  if (opts.surjective_only) return labeled_surjections(n, m);
  return saturating_pow(static_cast<std::uint64_t>(m), n);
}

void for_each_assignment(Index n, Index m, const EnumerationOptions& opts,
                         const std::function<void(const DeterministicAssignment&)>& fn) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("for_each_assignment: sizes must be >= 1");
  }
  if (count_assignments(n, m, opts) > opts.budget) {
    throw BudgetError("enumeration of " + std::to_string(m) + "^" +
                      std::to_string(n) +
                      " assignments exceeds the budget; use the soft solver "
                      "or raise the budget");
  }

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  if (opts.dedupe_labels) {
    // Restricted growth strings: each label is an already-used one or the
    // next fresh one. Exactly one representative per relabeling orbit, in
    // lexicographic order.
    auto visit = [&](auto&& self, Index pos, int used) -> void {
      if (pos == n) {
        if (!opts.surjective_only || used == m) {
          fn(DeterministicAssignment(labels, static_cast<int>(m)));
        }
        return;
      }
      if (opts.surjective_only &&
          used + static_cast<int>(n - pos) < static_cast<int>(m)) {
        return;
      }
      const int limit = std::min(used, static_cast<int>(m) - 1);
      for (int l = 0; l <= limit; ++l) {
        labels[static_cast<std::size_t>(pos)] = l;
        self(self, pos + 1, std::max(used, l + 1));
      }
    };
    visit(visit, 0, 0);
    return;
  }

  // Plain odometer over {0..m-1}^n, last position fastest.
  while (true) {
    bool ok = true;
    if (opts.surjective_only) {
      std::vector<bool> seen(static_cast<std::size_t>(m), false);
      for (const int l : labels) seen[static_cast<std::size_t>(l)] = true;
      for (const bool s : seen) ok = ok && s;
    }
    if (ok) fn(DeterministicAssignment(labels, static_cast<int>(m)));
    Index pos = n - 1;
    while (pos >= 0 && labels[static_cast<std::size_t>(pos)] == m - 1) {
      labels[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
    ++labels[static_cast<std::size_t>(pos)];
  }
}

std::vector<DeterministicAssignment> enumerate_deterministic(
    Index n, Index m, const EnumerationOptions& opts) {
  std::vector<DeterministicAssignment> out;
  for_each_assignment(n, m, opts,
                      [&out](const DeterministicAssignment& a) { out.push_back(a); });
  return out;
}

StochasticMatrix random_stochastic(Index n, Index m, std::uint64_t seed) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("random_stochastic: sizes must be >= 1");
  }
  rng::Engine gen(seed);
  Matrix w(n, m);
  for (Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Index j = 0; j < m; ++j) {
      w(i, j) = gen.exponential();
      sum += w(i, j);
    }
    w.row(i) /= sum;
  }
  return StochasticMatrix(std::move(w));
}

bool is_deterministic(const StochasticMatrix& w, double tol) {
  for (Index i = 0; i < w.items(); ++i) {
    if (w.w().row(i).maxCoeff() < 1.0 - tol) return false;
  }
  return true;
}

DeterministicAssignment hard_assignment_of(const StochasticMatrix& w) {
  std::vector<int> labels(static_cast<std::size_t>(w.items()));
  for (Index i = 0; i < w.items(); ++i) {
    Index best = 0;
    for (Index j = 1; j < w.clusters(); ++j) {
      if (w.w()(i, j) > w.w()(i, best)) best = j;
    }
    labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return DeterministicAssignment(std::move(labels),
                                 static_cast<int>(w.clusters()));
}

}  // namespace miclust
