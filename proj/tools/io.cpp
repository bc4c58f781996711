#include "io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "privm/errors.hpp"
#include "report.hpp"

namespace privm::tools {

using nlohmann::json;

namespace {

[[noreturn]] void row_error(int row, const std::string& what) {
  throw input_error("row " + std::to_string(row) + ": " + what);
}

double parse_number(const std::string& field, int row) {
  errno = 0;
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0') || errno == ERANGE) {
    row_error(row, "malformed number '" + field + "'");
  }
  if (std::isnan(v)) {
    row_error(row, "NaN is not a valid value");
  }
  return v;
}

std::vector<std::vector<double>> parse_csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // Skip fully blank lines (e.g. a trailing newline).
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    std::vector<double> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) {
      size_t a = field.find_first_not_of(" \t");
      size_t b = field.find_last_not_of(" \t");
      if (a == std::string::npos) row_error(row, "empty field");
      fields.push_back(parse_number(field.substr(a, b - a + 1), row));
    }
    if (fields.empty()) row_error(row, "empty row");
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::vector<std::vector<double>> parse_json_rows(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("invalid JSON: ") + e.what());
  }
  const json* arr = nullptr;
  if (doc.is_array()) {
    arr = &doc;
  } else if (doc.is_object()) {
    if (doc.contains("coords")) {
      arr = &doc["coords"];
    } else if (doc.contains("matrix")) {
      arr = &doc["matrix"];
    }
  }
  if (!arr || !arr->is_array()) {
    throw input_error("JSON input must be an array of rows "
                      "(or an object with a 'coords' or 'matrix' array)");
  }
  std::vector<std::vector<double>> rows;
  int row = 0;
  for (const json& jr : *arr) {
    ++row;
    if (!jr.is_array() || jr.empty()) row_error(row, "rows must be arrays");
    std::vector<double> fields;
    for (const json& v : jr) {
      if (!v.is_number()) row_error(row, "non-numeric entry");
      const double x = v.get<double>();
      if (std::isnan(x)) row_error(row, "NaN is not a valid value");
      fields.push_back(x);
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

IngestedData build_coordinate_space(
    const std::vector<std::vector<double>>& rows) {
  const int d = static_cast<int>(rows[0].size());
  std::map<std::vector<double>, int> site_of;
  std::vector<double> flat;
  IngestedData out;
  out.dim = d;
  out.rows = static_cast<int>(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != d) {
      row_error(static_cast<int>(r) + 1,
                "expected " + std::to_string(d) + " columns, got " +
                    std::to_string(rows[r].size()));
    }
    for (double v : rows[r]) {
      if (v < 0.0 || v > 1.0) {
        row_error(static_cast<int>(r) + 1, "coordinate " + format_g17(v) +
                                               " outside [0,1]");
      }
    }
    auto it = site_of.find(rows[r]);
    if (it == site_of.end()) {
      it = site_of.emplace(rows[r], static_cast<int>(site_of.size())).first;
      flat.insert(flat.end(), rows[r].begin(), rows[r].end());
    }
    out.points.push_back(it->second);
  }
  const auto kind = d == 1 ? FiniteMetricSpace::Kind::kInterval
                           : FiniteMetricSpace::Kind::kCube;
  out.space = FiniteMetricSpace::from_coords(flat, d, kind);
  return out;
}

IngestedData build_matrix_space(const std::vector<std::vector<double>>& rows) {
  const size_t n = rows.size();
  for (size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      row_error(static_cast<int>(r) + 1,
                "matrix must be square (" + std::to_string(n) + " columns)");
    }
    if (rows[r][r] != 0.0) {
      row_error(static_cast<int>(r) + 1, "diagonal entry must be zero");
    }
    for (size_t c = 0; c < n; ++c) {
      if (rows[r][c] < 0.0) {
        row_error(static_cast<int>(r) + 1, "negative distance");
      }
      if (rows[r][c] != rows[c][r]) {
        row_error(static_cast<int>(r) + 1,
                  "matrix asymmetric at column " + std::to_string(c + 1));
      }
    }
  }
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  IngestedData out;
  out.matrix = true;
  out.dim = 0;
  out.rows = static_cast<int>(n);
  try {
    out.space = FiniteMetricSpace::from_matrix(flat, static_cast<int>(n));
  } catch (const argument_error& e) {
    throw input_error(std::string("invalid distance matrix: ") + e.what());
  }
  out.points.resize(n);
  for (size_t i = 0; i < n; ++i) out.points[i] = static_cast<int>(i);
  return out;
}

}  // namespace

IngestedData ingest(const std::string& path, const std::string& format,
                    bool matrix) {
  const std::string text = read_file(path);
  std::vector<std::vector<double>> rows;
  if (format == "csv") {
    rows = parse_csv_rows(text);
  } else if (format == "json") {
    rows = parse_json_rows(text);
  } else {
    throw input_error("unknown format '" + format + "' (use csv or json)");
  }
  if (rows.empty()) {
    throw input_error("empty input: " + path);
  }
  return matrix ? build_matrix_space(rows) : build_coordinate_space(rows);
}

WeightedMeasure empirical_of(const IngestedData& data) {
  if (!data.space || data.points.empty()) {
    throw argument_error("ingested dataset is empty");
  }
  std::vector<double> w(data.points.size(),
                        1.0 / static_cast<double>(data.points.size()));
  return make_measure(data.space, data.points, w);
}

std::string dataset_csv(const SyntheticDataset& data) {
  std::ostringstream out;
  const bool coords = data.space->has_coords();
  for (int p : data.points) {
    if (coords) {
      for (int k = 0; k < data.space->dim(); ++k) {
        if (k) out << ',';
        out << format_g17(data.space->coord(p, k));
      }
    } else {
      out << p;
    }
    out << '\n';
  }
  return out.str();
}

std::string measure_csv(const WeightedMeasure& mu) {
  std::ostringstream out;
  const bool coords = mu.space->has_coords();
  out << "index";
  if (coords) {
    for (int k = 0; k < mu.space->dim(); ++k) out << ",x" << k;
  }
  out << ",weight\n";
  for (size_t i = 0; i < mu.support.size(); ++i) {
    out << mu.support[i];
    if (coords) {
      for (int k = 0; k < mu.space->dim(); ++k) {
        out << ',' << format_g17(mu.space->coord(mu.support[i], k));
      }
    }
    out << ',' << format_g17(mu.weights[i]) << '\n';
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw input_error("cannot open for writing: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw input_error("write failed: " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw input_error("cannot open: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace privm::tools
