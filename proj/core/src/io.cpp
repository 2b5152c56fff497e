#include "miclust/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace miclust {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                         std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_double(std::string_view token, double* out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc{} && ptr == end;
}

struct CsvRow {
  std::vector<double> values;
  std::vector<int> columns;  // 1-based start column of each field
};

bool parse_csv_row(const std::string& line, int line_no, bool allow_header,
                   CsvRow* row) {
  row->values.clear();
  row->columns.clear();
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    const std::size_t len = (comma == std::string::npos ? line.size() : comma) - pos;
    const std::string_view field = trim(std::string_view(line).substr(pos, len));
    double value = 0.0;
    if (!parse_double(field, &value)) {
      if (allow_header) return false;
      throw ParseError("cannot parse '" + std::string(field) + "' as a number",
                       line_no, static_cast<int>(pos) + 1);
    }
    row->values.push_back(value);
    row->columns.push_back(static_cast<int>(pos) + 1);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return true;
}

}  // namespace

Matrix read_csv_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    CsvRow row;
    const bool parsed = parse_csv_row(line, line_no, first_content_line, &row);
    if (!parsed) {
      // Non-numeric first line: header, skip it.
      first_content_line = false;
      continue;
    }
    first_content_line = false;
    if (!rows.empty() && row.values.size() != rows.front().size()) {
      throw ParseError("row has " + std::to_string(row.values.size()) +
                           " fields, expected " + std::to_string(rows.front().size()),
                       line_no, 1);
    }
    rows.push_back(std::move(row.values));
  }
  if (rows.empty()) {
    throw ParseError("no numeric rows found", std::max(line_no, 1), 1);
  }
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

Matrix read_csv_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_csv_matrix(in);
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::logic_error("format_double: buffer too small");
  return std::string(buf, ptr);
}

void write_csv_matrix(std::ostream& out, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_sweep_surface_csv(std::ostream& out, const SweepResult& sweep) {
  if (!sweep.surface) {
    throw std::invalid_argument("write_sweep_surface_csv: no surface recorded");
  }
  for (std::size_t i = 0; i < sweep.param_names.size(); ++i) {
    out << sweep.param_names[i] << ',';
  }
  out << "value_bits\n";
  for (const auto& point : *sweep.surface) {
    for (const double p : point.params) out << format_double(p) << ',';
    out << format_double(point.value_bits) << '\n';
  }
}

void write_sweep_surface_csv_file(const std::string& path, const SweepResult& sweep) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_sweep_surface_csv(out, sweep);
}

namespace {

nlohmann::json matrix_rows(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix rows_to_matrix(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j.at(0).is_array()) {
    throw std::invalid_argument("expected a non-empty array of rows");
  }
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (static_cast<Index>(row.size()) != cols) {
      throw std::invalid_argument("ragged rows in matrix JSON");
    }
    for (Index k = 0; k < cols; ++k) {
      m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
    }
  }
  return m;
}

nlohmann::json vector_values(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

nlohmann::json to_json(const JointDistribution& p) {
  return {{"shape", {p.rows(), p.cols()}},
          {"p", matrix_rows(p.p())},
          {"mu1", vector_values(p.mu1())},
          {"mu2", vector_values(p.mu2())}};
}

nlohmann::json to_json(const StochasticMatrix& w) {
  return {{"w", matrix_rows(w.w())}};
}

nlohmann::json to_json(const DeterministicAssignment& v) {
  nlohmann::json assign = nlohmann::json::array();
  for (const int l : v.labels()) assign.push_back(l + 1);  // 1-based outside
  return {{"assign", assign}, {"clusters", v.num_clusters()}};
}

JointDistribution joint_from_json(const nlohmann::json& j) {
  return JointDistribution(rows_to_matrix(j.is_object() ? j.at("p") : j));
}

StochasticMatrix stochastic_from_json(const nlohmann::json& j) {
  return StochasticMatrix(rows_to_matrix(j.is_object() ? j.at("w") : j));
}

DeterministicAssignment assignment_from_json(const nlohmann::json& j) {
  std::vector<int> labels;
  for (const auto& label : j.at("assign")) {
    labels.push_back(label.get<int>() - 1);
  }
  return DeterministicAssignment(std::move(labels), j.at("clusters").get<int>());
}

namespace {

nlohmann::json assignment_pair_json(const AssignmentPair& pair) {
  nlohmann::json out{{"first", to_json(pair.first)}};
  if (pair.second) out["second"] = to_json(*pair.second);
  return out;
}

}  // namespace

nlohmann::json to_json(const SolveResult& r) {
  nlohmann::json j{{"kind", to_string(r.kind)},
                   {"objective_bits", r.objective.value()}};
  if (r.hard1) j["assignment"] = to_json(*r.hard1);
  if (r.hard2) j["assignment2"] = to_json(*r.hard2);
  if (r.soft1) j["soft"] = to_json(*r.soft1);
  if (r.soft2) j["soft2"] = to_json(*r.soft2);
  if (!r.argmax_set.empty()) {
    nlohmann::json argmax = nlohmann::json::array();
    for (const auto& pair : r.argmax_set) argmax.push_back(assignment_pair_json(pair));
    j["argmax_set"] = std::move(argmax);
  }
  if (!r.evaluations.empty()) {
    nlohmann::json evals = nlohmann::json::array();
    for (const auto& e : r.evaluations) {
      evals.push_back({{"assignment", assignment_pair_json(e.assignment)},
                       {"value_bits", e.value_bits}});
    }
    j["evaluations"] = std::move(evals);
  }
  // wall_ms is intentionally omitted: files must be byte-identical for
  // identical configuration and seed.
  nlohmann::json diag{{"evaluations", r.diagnostics.evaluations},
                      {"iterations", r.diagnostics.iterations},
                      {"restarts", r.diagnostics.restarts},
                      {"converged", r.diagnostics.converged}};
  if (!r.diagnostics.objective_trace.empty()) {
    diag["objective_trace"] = r.diagnostics.objective_trace;
    diag["relevance_bits"] = r.diagnostics.relevance_bits;
    diag["compression_bits"] = r.diagnostics.compression_bits;
  }
  j["diagnostics"] = std::move(diag);
  return j;
}

nlohmann::json to_json(const SweepResult& r) {
  nlohmann::json j{{"grid_step", r.grid_step},
                   {"param_names", r.param_names},
                   {"best_point", r.best_point},
                   {"best_value_bits", r.best_value.value()}};
  if (r.surface) j["surface_points"] = r.surface->size();
  return j;
}

nlohmann::json to_json(const Report& r) {
  return {{"claim", r.claim},
          {"trials", r.trials},
          {"violations", r.violations},
          {"worst_margin_bits", r.worst_margin_bits},
          {"witnesses", r.witnesses},
          {"pass", r.pass},
          {"metadata", r.metadata}};
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

JointDistribution read_joint_file(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    return joint_from_json(read_json_file(path));
  }
  return JointDistribution(read_csv_matrix_file(path));
}

}  // namespace miclust
