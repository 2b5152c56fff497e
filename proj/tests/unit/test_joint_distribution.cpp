#include <cmath>

#include "doctest.h"
#include "miclust/info_measures.hpp"
#include "miclust/joint_distribution.hpp"
#include "miclust/rng.hpp"
#include "miclust/stochastic.hpp"

using namespace miclust;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Index>(rows.size()),
           static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("joint_distribution");

TEST_CASE("construction validates mass and sign") {
  CHECK_THROWS_AS(JointDistribution(mat({{0.5, 0.6}})), std::invalid_argument);
  CHECK_THROWS_AS(JointDistribution(mat({{1.5, -0.5}})), std::invalid_argument);
  const JointDistribution p(mat({{0.25, 0.25}, {0.25, 0.25}}));
  CHECK(p.mu1()(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p.mu2()(1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("marginals are recomputable within 1e-14") {
  const auto p = random_joint(5, 4, 11);
  const Vector mu1 = p.p().rowwise().sum();
  const Vector mu2 = p.p().colwise().sum().transpose();
  CHECK((p.mu1() - mu1).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((p.mu2() - mu2).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("from_counts") {
  const auto uniform = from_counts(CountMatrix(mat({{1, 1}, {1, 1}})));
  CHECK(uniform.p()(0, 0) == doctest::Approx(0.25).epsilon(1e-14));

  const auto diag = from_counts(CountMatrix(mat({{2, 0}, {0, 2}})));
  CHECK(diag.p()(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(diag.p()(0, 1) == 0.0);

  const auto single = from_counts(CountMatrix(mat({{3, 1}, {0, 0}})));
  CHECK(single.p()(0, 0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(single.p()(0, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(single.mu1()(1) == 0.0);

  CHECK_THROWS_AS(CountMatrix(mat({{0, 0}, {0, 0}})), std::invalid_argument);
}

TEST_CASE("from_distances") {
  const auto uniform = from_distances(DistanceMatrix(Matrix::Zero(3, 3)), 2.0);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      CHECK(uniform.p()(i, j) == doctest::Approx(1.0 / 9).epsilon(1e-14));
    }
  }

  // sigma -> 0 collapses any finite distances to the uniform matrix
  const Matrix d = mat({{0, 2, 5}, {2, 0, 1}, {5, 1, 0}});
  const auto collapsed = from_distances(DistanceMatrix(d), 1e-15);
  CHECK((collapsed.p().array() - 1.0 / 9).abs().maxCoeff() <= 1e-12);

  const double t = 1.7;
  const auto two = from_distances(DistanceMatrix(mat({{0, t}, {t, 0}})), 1.0);
  const double z = 2.0 + 2.0 * std::exp(-t);
  CHECK(two.p()(0, 0) == doctest::Approx(1.0 / z).epsilon(1e-14));
  CHECK(two.p()(0, 1) == doctest::Approx(std::exp(-t) / z).epsilon(1e-14));

  CHECK_THROWS_AS(from_distances(DistanceMatrix(mat({{0, 1}, {2, 0}})), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_distances(DistanceMatrix(Matrix::Zero(2, 2)), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_distances(DistanceMatrix(Matrix::Zero(2, 2)), -1.0),
                  std::invalid_argument);
}

TEST_CASE("from_distances output is symmetric and strictly positive") {
  rng::Engine gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = gen.uniform_int(2, 6);
    Matrix pts(n, 2);
    for (Index i = 0; i < n; ++i) {
      pts(i, 0) = gen.uniform(0.0, 3.0);
      pts(i, 1) = gen.uniform(0.0, 3.0);
    }
    const auto p = from_distances(distances_from_points(pts), gen.uniform(0.2, 2.0));
    CHECK((p.p() - p.p().transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.p().minCoeff() > 0.0);
  }
}

TEST_CASE("from_diagonal") {
  const auto half = from_diagonal(Vector{{0.5, 0.5}});
  CHECK(half.p()(0, 0) == 0.5);
  CHECK(half.p()(0, 1) == 0.0);

  const auto point = from_diagonal(Vector{{1.0, 0.0}});
  CHECK(point.p()(0, 0) == 1.0);
  CHECK(point.p()(1, 1) == 0.0);

  const auto three = from_diagonal(Vector{{0.375, 0.325, 0.3}});
  CHECK(three.p()(2, 2) == doctest::Approx(0.3).epsilon(1e-14));

  CHECK_THROWS_AS(from_diagonal(Vector{{0.7, 0.7}}), std::invalid_argument);
  CHECK_THROWS_AS(from_diagonal(Vector{{1.5, -0.5}}), std::invalid_argument);
}

TEST_CASE("conditional") {
  const auto identity = conditional(from_diagonal(Vector{{0.5, 0.5}}),
                                    Conditional::kColumnsGivenRows);
  CHECK(identity.w()(0, 0) == 1.0);
  CHECK(identity.w()(1, 0) == 0.0);

  const JointDistribution uniform23(Matrix::Constant(2, 3, 1.0 / 6));
  const auto rows = conditional(uniform23, Conditional::kColumnsGivenRows);
  CHECK(rows.w().rows() == 2);
  CHECK(rows.w()(0, 0) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  const auto cols = conditional(uniform23, Conditional::kRowsGivenColumns);
  CHECK(cols.w().rows() == 3);
  CHECK(cols.w()(0, 0) == doctest::Approx(0.5).epsilon(1e-14));

  const JointDistribution p3(mat({{0.1, 0.1, 0.175},
                                  {0.1, 0.15, 0.075},
                                  {0.175, 0.075, 0.05}}));
  const auto w21 = conditional(p3, Conditional::kColumnsGivenRows);
  CHECK(w21.w()(0, 0) == doctest::Approx(0.1 / 0.375).epsilon(1e-14));
  CHECK(w21.w()(0, 2) == doctest::Approx(0.175 / 0.375).epsilon(1e-14));

  // reconstruction diag(mu) W = P
  const Matrix back = p3.mu1().asDiagonal() * w21.w();
  CHECK((back - p3.p()).cwiseAbs().maxCoeff() <= 1e-12);

  const JointDistribution dead_row(mat({{0.75, 0.25}, {0.0, 0.0}}));
  CHECK_THROWS_WITH_AS(conditional(dead_row, Conditional::kColumnsGivenRows),
                       doctest::Contains("row 2"), std::invalid_argument);
}

TEST_CASE("random_joint") {
  const auto one = random_joint(1, 1, 42);
  CHECK(one.p()(0, 0) == 1.0);

  const auto a = random_joint(3, 3, 7);
  const auto b = random_joint(3, 3, 7);
  CHECK((a.p() - b.p()).cwiseAbs().maxCoeff() == 0.0);

  CHECK(a.p().minCoeff() > 0.0);
  CHECK(std::abs(a.p().sum() - 1.0) <= 1e-12);
}

TEST_SUITE_END();
