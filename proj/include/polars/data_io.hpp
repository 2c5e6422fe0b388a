#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polars/metrics.hpp"

namespace polars {

// The reference plus at most twenty models share one color palette.
inline constexpr std::size_t kMaxModels = 20;

struct Dataset {
  std::string id;
  std::string title;
  std::string reference_name;
  std::vector<SampleVector> vectors;  // column order, reference included
  std::string provenance;

  const SampleVector& reference() const;
  std::vector<SampleVector> models() const;  // column order, reference excluded
  std::size_t model_count() const { return vectors.empty() ? 0 : vectors.size() - 1; }
  std::size_t length() const { return vectors.empty() ? 0 : vectors.front().size(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct DatasetVersion {
  std::string label;
  std::string params;  // "key=value;key=value", may be empty
  Dataset data;

  friend bool operator==(const DatasetVersion&, const DatasetVersion&) = default;
};

struct VersionedDataset {
  std::vector<DatasetVersion> versions;

  friend bool operator==(const VersionedDataset&, const VersionedDataset&) = default;
};

// Rectangular all-numeric table in column-major form.
struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  std::size_t column_index(std::string_view name) const;  // throws kUnknownColumn

  friend bool operator==(const Table&, const Table&) = default;
};

// RFC 4180 subset: comma separator, optional double quotes (with "" escapes),
// LF or CRLF line ends, optional UTF-8 BOM. Blank trailing lines are ignored.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text);

// All cells must be finite numbers; errors carry the 0-based data row.
Table parse_numeric_table(std::string_view text);

struct LoadOptions {
  std::string id;
  std::string title;
  std::string provenance;
  bool enforce_model_cap = true;
};

// One SampleVector per column. Throws ParseError, kMissingReference,
// kDuplicateHeader, kTooManyModels.
Dataset load_csv(std::string_view text, std::string_view reference_column,
                 const LoadOptions& options = {});

// Long format: a text version column (and optional text params column) plus
// numeric columns. Versions are ordered by natural label order ("v2" < "v10")
// and rows inside a version are put in canonical lexicographic order, so the
// result is independent of row order. An all-empty model column inside one
// version means the model is missing there (kInconsistentModels).
VersionedDataset load_versioned_csv(std::string_view text,
                                    std::string_view reference_column,
                                    std::string_view version_column,
                                    std::optional<std::string_view> params_column = {},
                                    const LoadOptions& options = {});

// Natural ordering: digit runs compare numerically.
bool natural_less(std::string_view a, std::string_view b);

struct StratifiedSample {
  Dataset samples;              // reference first, then one vector per sampled row
  SampleVector median_reference;
  std::vector<std::string> notices;
};

// Samples up to per_stratum rows from every stratum (strata in ascending value
// order, SplitMix64 stream i for the i-th stratum, partial Fisher-Yates).
// Each sampled row becomes a vector over the feature columns, named
// "q<stratum>_r<row>". The reference is the per-feature median of the full
// table, named "median".
StratifiedSample stratified_sample(const Table& table,
                                   std::string_view strata_column,
                                   std::size_t per_stratum, std::uint64_t seed);

double median(std::vector<double> values);

// Shortest round-trip decimal form; "-0" is written as "0".
std::string format_number(double v);

// Wide CSV: one column per vector, one row per observation.
std::string write_csv(const Dataset& dataset);

std::string read_file(const std::string& path);  // throws kIoError

}  // namespace polars
