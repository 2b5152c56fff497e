#include <cmath>

#include "doctest.h"
#include "miclust/info_measures.hpp"
#include "miclust/rng.hpp"
#include "miclust/verification.hpp"

using namespace miclust;

TEST_SUITE_BEGIN("info_measures");

TEST_CASE("entropy") {
  CHECK(entropy(Vector{{0.5, 0.5}}).value() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(entropy(Vector{{1.0, 0.0, 0.0}}).value() == 0.0);
  // independent high-precision summation oracle
  CHECK(entropy(Vector{{0.375, 0.325, 0.3}}).value() ==
        doctest::Approx(1.578712462922).epsilon(1e-11));
  CHECK_THROWS_AS(entropy(Vector{{1.5, -0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(entropy(Vector{{0.5, 0.4}}), std::invalid_argument);
}

TEST_CASE("kl_divergence") {
  const Vector half{{0.5, 0.5}};
  CHECK(kl_divergence(half, half).value() == 0.0);
  CHECK(kl_divergence(Vector{{1.0, 0.0}}, half).value() ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(kl_divergence(half, Vector{{0.25, 0.75}}).value() ==
        doctest::Approx(0.207518749639).epsilon(1e-11));
  CHECK(kl_divergence(half, Vector{{1.0, 0.0}}).is_infinite());
  CHECK(kl_divergence(Vector{{0.0, 1.0}}, Vector{{0.0, 1.0}}).value() == 0.0);
  CHECK_THROWS_AS(kl_divergence(half, Vector{{1.0, 0.0, 0.0}}),
                  std::invalid_argument);
}

TEST_CASE("mutual_information") {
  CHECK(mutual_information(from_diagonal(Vector{{0.5, 0.5}})).value() ==
        doctest::Approx(1.0).epsilon(1e-14));

  // any rank-1 product distribution carries zero information
  const Vector mu{{0.2, 0.3, 0.5}};
  const Vector nu{{0.6, 0.4}};
  const JointDistribution product(mu * nu.transpose());
  CHECK(mutual_information(product).value() <= 1e-15);

  CHECK(mutual_information(example3_joint()).value() ==
        doctest::Approx(0.093559803893).epsilon(1e-11));
}

TEST_CASE("cluster_joint") {
  const auto p = random_joint(3, 4, 3);
  const StochasticMatrix id3(Matrix::Identity(3, 3));
  const StochasticMatrix id4(Matrix::Identity(4, 4));
  const auto same = cluster_joint(p, id3, id4);
  CHECK((same.p() - p.p()).cwiseAbs().maxCoeff() == 0.0);

  const StochasticMatrix merge3(Matrix::Ones(3, 1));
  const StochasticMatrix merge4(Matrix::Ones(4, 1));
  const auto total = cluster_joint(p, merge3, merge4);
  CHECK(total.p().rows() == 1);
  CHECK(total.p()(0, 0) == doctest::Approx(1.0).epsilon(1e-14));

  // hard {1,2}{3} on both sides of the worked 3x3 example
  const DeterministicAssignment v({0, 0, 1}, 2);
  const auto q = cluster_joint(example3_joint(), v.stochastic(), v.stochastic());
  CHECK(q.p()(0, 0) == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(q.p()(0, 1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(q.p()(1, 1) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(mutual_information(q).value() == doctest::Approx(0.0281).epsilon(2e-3));

  CHECK_THROWS_AS(cluster_joint(p, id4, id4), std::invalid_argument);
}

TEST_CASE("data processing at the cluster level") {
  rng::Engine gen(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n1 = gen.uniform_int(2, 6);
    const Index n2 = gen.uniform_int(2, 6);
    const auto p = random_joint(n1, n2, gen.next());
    const auto w1 = random_stochastic(n1, gen.uniform_int(1, 4), gen.next());
    const auto w2 = random_stochastic(n2, gen.uniform_int(1, 4), gen.next());
    const double clustered = mutual_information(cluster_joint(p, w1, w2)).value();
    CHECK(clustered <= mutual_information(p).value() + 1e-12);
  }
}

TEST_CASE("I(PW) is convex in W") {
  rng::Engine gen(19);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n1 = gen.uniform_int(2, 5);
    const Index n2 = gen.uniform_int(2, 5);
    const Index m = gen.uniform_int(1, 4);
    const auto p = random_joint(n1, n2, gen.next());
    const Matrix wa = random_stochastic(n2, m, gen.next()).w();
    const Matrix wb = random_stochastic(n2, m, gen.next()).w();
    const double lam = gen.uniform01();
    const Matrix mix = lam * wa + (1.0 - lam) * wb;
    const double lhs =
        mutual_information(JointDistribution(p.p() * mix)).value();
    const double rhs =
        lam * mutual_information(JointDistribution(p.p() * wa)).value() +
        (1.0 - lam) * mutual_information(JointDistribution(p.p() * wb)).value();
    CHECK(lhs <= rhs + 1e-12);
  }
}

TEST_CASE("H(muW) is concave in W") {
  rng::Engine gen(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = gen.uniform_int(2, 6);
    const Index m = gen.uniform_int(1, 4);
    Vector mu(n);
    double sum = 0.0;
    for (Index i = 0; i < n; ++i) {
      mu(i) = gen.exponential();
      sum += mu(i);
    }
    mu /= sum;
    const Matrix wa = random_stochastic(n, m, gen.next()).w();
    const Matrix wb = random_stochastic(n, m, gen.next()).w();
    const double lam = gen.uniform01();
    const Matrix mix = lam * wa + (1.0 - lam) * wb;
    const double lhs = entropy(mix.transpose() * mu).value();
    const double rhs = lam * entropy(wa.transpose() * mu).value() +
                       (1.0 - lam) * entropy(wb.transpose() * mu).value();
    CHECK(lhs >= rhs - 1e-12);
  }
}

TEST_CASE("KL divergence is jointly convex") {
  rng::Engine gen(29);
  auto simplex = [&gen](Index n) {
    Vector v(n);
    double sum = 0.0;
    for (Index i = 0; i < n; ++i) {
      v(i) = gen.exponential();
      sum += v(i);
    }
    return Vector(v / sum);
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = gen.uniform_int(2, 6);
    const Vector mu_a = simplex(n);
    const Vector mu_b = simplex(n);
    const Vector nu_a = simplex(n);
    const Vector nu_b = simplex(n);
    const double lam = gen.uniform01();
    const double lhs =
        kl_divergence(Vector(lam * mu_a + (1 - lam) * mu_b),
                      Vector(lam * nu_a + (1 - lam) * nu_b))
            .value();
    const double rhs = lam * kl_divergence(mu_a, nu_a).value() +
                       (1 - lam) * kl_divergence(mu_b, nu_b).value();
    CHECK(lhs <= rhs + 1e-12);
  }
}

TEST_CASE("MI equals the entropy identity") {
  rng::Engine gen(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_joint(gen.uniform_int(2, 6), gen.uniform_int(2, 6),
                                gen.next());
    const Vector flat = p.p().reshaped();
    const double identity = entropy(p.mu1()).value() + entropy(p.mu2()).value() -
                            entropy(flat).value();
    CHECK(mutual_information(p).value() == doctest::Approx(identity).epsilon(1e-12));
  }
}

TEST_CASE("Bits clamps tiny negatives and rejects real ones") {
  CHECK(Bits::measure(-5e-13).value() == 0.0);
  CHECK(Bits::measure(0.25).value() == 0.25);
  CHECK_THROWS_AS(Bits::measure(-1e-9), std::logic_error);
  CHECK(Bits::infinity().is_infinite());
  CHECK(!Bits(1.5).is_infinite());
}

TEST_SUITE_END();
