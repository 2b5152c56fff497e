#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "miclust/joint_distribution.hpp"
#include "miclust/solvers.hpp"
#include "miclust/stochastic.hpp"
#include "miclust/types.hpp"
#include "miclust/verification.hpp"

namespace miclust {

/// CSV parse failure with 1-based location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Reads a row-major numeric CSV; a non-numeric first line is treated as a
/// header and skipped. All rows must have equal width.
Matrix read_csv_matrix(std::istream& in);
Matrix read_csv_matrix_file(const std::string& path);

/// Shortest round-trip formatting, one row per line.
void write_csv_matrix(std::ostream& out, const Matrix& m);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Surface CSV with one row per grid point: parameters..., value_bits.
void write_sweep_surface_csv(std::ostream& out, const SweepResult& sweep);
void write_sweep_surface_csv_file(const std::string& path, const SweepResult& sweep);

// JSON representations. Cluster indices are serialized 1-based.
nlohmann::json to_json(const JointDistribution& p);  // includes marginals
nlohmann::json to_json(const StochasticMatrix& w);
nlohmann::json to_json(const DeterministicAssignment& v);
nlohmann::json to_json(const SolveResult& r);
nlohmann::json to_json(const SweepResult& r);
nlohmann::json to_json(const Report& r);

JointDistribution joint_from_json(const nlohmann::json& j);
StochasticMatrix stochastic_from_json(const nlohmann::json& j);
DeterministicAssignment assignment_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

/// Reads a joint distribution from .json or .csv (raw probabilities).
JointDistribution read_joint_file(const std::string& path);

}  // namespace miclust
