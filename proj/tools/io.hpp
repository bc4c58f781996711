#pragma once

#include <string>
#include <vector>

#include "privm/measure.hpp"
#include "privm/metric_space.hpp"
#include "privm/synth.hpp"

namespace privm::tools {

// A parsed dataset: the built space plus one site index per input row
// (duplicate coordinates collapse onto one site).
struct IngestedData {
  SpacePtr space;
  std::vector<int> points;  // one entry per data row
  int dim = 0;
  int rows = 0;
  bool matrix = false;  // true when the input was a distance matrix
};

// Reads a dataset from a CSV or JSON file.
//
// Coordinate input (matrix = false): each row is a point in [0,1]^d; d is
// taken from the first row and must be constant. dim 1 builds a line space,
// higher dimensions an l-infinity cube space.
//
// Distance-matrix input (matrix = true): a square, symmetric, zero-diagonal
// matrix of distances satisfying the triangle inequality; every row becomes
// one point of a matrix-backed space.
//
// CSV: comma-separated numbers, no header, '.' decimal. JSON: either a
// top-level array of rows, or an object with a "coords" or "matrix" array.
// Malformed rows, NaN, out-of-range coordinates, and asymmetry are rejected
// with an input_error naming the 1-based row.
IngestedData ingest(const std::string& path, const std::string& format,
                    bool matrix);

// Uniform empirical measure of the ingested points (weight 1/rows each).
WeightedMeasure empirical_of(const IngestedData& data);

// Writes synthetic points as CSV: one row per point with the d coordinates
// of its site (or the bare site index for spaces without coordinates).
std::string dataset_csv(const SyntheticDataset& data);

// Writes a measure as CSV: site index, coordinates if any, weight.
std::string measure_csv(const WeightedMeasure& mu);

// Writes a string to a file, throwing input_error on I/O failure (the
// message names the path).
void write_file(const std::string& path, const std::string& content);

// Reads a whole file, throwing input_error on failure.
std::string read_file(const std::string& path);

}  // namespace privm::tools
