#include <sstream>

#include "doctest.h"
#include "miclust/io.hpp"
#include "miclust/rng.hpp"

using namespace miclust;

TEST_SUITE_BEGIN("io");

TEST_CASE("csv reading with and without a header") {
  std::istringstream plain("0.5,0.25\n0.1,0.15\n");
  const Matrix a = read_csv_matrix(plain);
  CHECK(a(0, 1) == 0.25);
  CHECK(a(1, 0) == 0.1);

  std::istringstream with_header("x,y\n1, 2\n3,4\n");
  const Matrix b = read_csv_matrix(with_header);
  CHECK(b.rows() == 2);
  CHECK(b(0, 1) == 2.0);

  std::istringstream blank_lines("\n1,2\n\n3,4\n");
  CHECK(read_csv_matrix(blank_lines).rows() == 2);
}

TEST_CASE("csv errors carry line and column") {
  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(read_csv_matrix(ragged), ParseError);

  std::istringstream garbage("1,2\n3,oops\n");
  try {
    read_csv_matrix(garbage);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }

  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv_matrix(empty), ParseError);
}

TEST_CASE("csv round trip preserves doubles exactly") {
  rng::Engine gen(3);
  Matrix m(3, 4);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = gen.uniform(-2.0, 2.0);
  }
  std::stringstream buf;
  write_csv_matrix(buf, m);
  const Matrix back = read_csv_matrix(buf);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("format_double is shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.65) == "0.65");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("joint distribution json round trip") {
  const auto p = random_joint(3, 2, 5);
  const auto j = to_json(p);
  CHECK(j.contains("mu1"));
  CHECK(j.contains("mu2"));
  const auto back = joint_from_json(j);
  CHECK((back.p() - p.p()).cwiseAbs().maxCoeff() == 0.0);

  // bare rows are accepted as raw input
  const auto bare = joint_from_json(j.at("p"));
  CHECK((bare.p() - p.p()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("assignments serialize 1-based") {
  const DeterministicAssignment v({0, 1, 0}, 2);
  const auto j = to_json(v);
  CHECK(j.at("assign") == nlohmann::json({1, 2, 1}));
  const auto back = assignment_from_json(j);
  CHECK(back == v);
}

TEST_CASE("stochastic matrix json round trip") {
  const auto w = random_stochastic(4, 3, 8);
  const auto back = stochastic_from_json(to_json(w));
  CHECK((back.w() - w.w()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("solve result json omits volatile timing") {
  const auto result = solve_pairwise_hard(random_joint(3, 3, 2), 2);
  const auto j = to_json(result);
  CHECK(j.at("kind") == "pairwise");
  CHECK(j.dump().find("wall_ms") == std::string::npos);
  CHECK(j.at("diagnostics").contains("evaluations"));
}

TEST_CASE("sweep surface csv") {
  SweepOptions opts;
  opts.emit_surface = true;
  opts.fixed = {{"r", 1.0}};
  const auto sweep = sweep_pairwise(random_joint(3, 3, 6), 2, 0.5, opts);
  std::stringstream buf;
  write_sweep_surface_csv(buf, sweep);
  std::string header;
  std::getline(buf, header);
  CHECK(header == "p,q,r,value_bits");
  int rows = 0;
  for (std::string line; std::getline(buf, line);) ++rows;
  CHECK(rows == 3 * 3);  // axis {0, .5, 1} squared, r pinned
}

TEST_SUITE_END();
