#include "polars/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "polars/error.hpp"
#include "polars/rng.hpp"

namespace polars {

const SampleVector& Dataset::reference() const {
  for (const auto& v : vectors) {
    if (v.name() == reference_name) return v;
  }
  throw Error(ErrorCode::kMissingReference,
              "dataset '" + id + "' has no reference column '" + reference_name + "'");
}

std::vector<SampleVector> Dataset::models() const {
  std::vector<SampleVector> out;
  for (const auto& v : vectors) {
    if (v.name() != reference_name) out.push_back(v);
  }
  return out;
}

std::size_t Table::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < headers.size(); ++i) {
    if (headers[i] == name) return i;
  }
  throw Error(ErrorCode::kUnknownColumn, "no column named '" + std::string(name) + "'");
}

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && record.front().empty();
    if (!blank) records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.empty()) {
          throw ParseError(static_cast<long>(records.size()) - 1,
                           static_cast<long>(record.size()),
                           "stray quote inside unquoted field");
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) {
    throw ParseError(static_cast<long>(records.size()) - 1,
                     static_cast<long>(record.size()), "unterminated quoted field");
  }
  if (field_started || !record.empty()) end_record();
  return records;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, long row, long col) {
  const std::string_view s = trim(cell);
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(row, col, "row " + std::to_string(row) + ", column " +
                                   std::to_string(col) + ": '" + std::string(s) +
                                   "' is not a number");
  }
  if (!std::isfinite(v)) {
    throw ParseError(row, col, "row " + std::to_string(row) + ", column " +
                                   std::to_string(col) + ": non-finite value");
  }
  return v;
}

void check_headers(const std::vector<std::string>& headers) {
  std::set<std::string> seen;
  for (std::size_t c = 0; c < headers.size(); ++c) {
    if (headers[c].empty()) {
      throw ParseError(-1, static_cast<long>(c), "empty column header");
    }
    if (!seen.insert(headers[c]).second) {
      throw Error(ErrorCode::kDuplicateHeader, "duplicate column '" + headers[c] + "'");
    }
  }
}

void check_width(const std::vector<std::string>& record, std::size_t width, long row) {
  if (record.size() != width) {
    throw ParseError(row, static_cast<long>(std::min(record.size(), width)),
                     "row " + std::to_string(row) + " has " +
                         std::to_string(record.size()) + " fields, expected " +
                         std::to_string(width));
  }
}

std::vector<std::string> trimmed_headers(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& h : raw) out.emplace_back(trim(h));
  return out;
}

Dataset build_dataset(const std::vector<std::string>& headers,
                      std::vector<std::vector<double>> columns,
                      std::string_view reference_column, const LoadOptions& options) {
  if (std::find(headers.begin(), headers.end(), reference_column) == headers.end()) {
    throw Error(ErrorCode::kMissingReference,
                "reference column '" + std::string(reference_column) + "' not found");
  }
  if (options.enforce_model_cap && headers.size() - 1 > kMaxModels) {
    throw Error(ErrorCode::kTooManyModels,
                std::to_string(headers.size() - 1) + " models exceed the limit of " +
                    std::to_string(kMaxModels) + " plus the reference");
  }
  Dataset d;
  d.id = options.id;
  d.title = options.title;
  d.provenance = options.provenance;
  d.reference_name = std::string(reference_column);
  for (std::size_t c = 0; c < headers.size(); ++c) {
    d.vectors.emplace_back(headers[c], std::move(columns[c]));
  }
  return d;
}

}  // namespace

Table parse_numeric_table(std::string_view text) {
  const auto records = parse_csv_records(text);
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "CSV has no header row");
  Table t;
  t.headers = trimmed_headers(records.front());
  check_headers(t.headers);
  t.columns.assign(t.headers.size(), {});
  for (std::size_t r = 1; r < records.size(); ++r) {
    const long row = static_cast<long>(r - 1);
    check_width(records[r], t.headers.size(), row);
    for (std::size_t c = 0; c < t.headers.size(); ++c) {
      t.columns[c].push_back(parse_cell(records[r][c], row, static_cast<long>(c)));
    }
  }
  return t;
}

Dataset load_csv(std::string_view text, std::string_view reference_column,
                 const LoadOptions& options) {
  Table t = parse_numeric_table(text);
  return build_dataset(t.headers, std::move(t.columns), reference_column, options);
}

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && is_digit(a[ie])) ++ie;
      while (je < b.size() && is_digit(b[je])) ++je;
      std::string_view da = a.substr(i, ie - i);
      std::string_view db = b.substr(j, je - j);
      while (da.size() > 1 && da.front() == '0') da.remove_prefix(1);
      while (db.size() > 1 && db.front() == '0') db.remove_prefix(1);
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

VersionedDataset load_versioned_csv(std::string_view text,
                                    std::string_view reference_column,
                                    std::string_view version_column,
                                    std::optional<std::string_view> params_column,
                                    const LoadOptions& options) {
  const auto records = parse_csv_records(text);
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "CSV has no header row");
  const auto headers = trimmed_headers(records.front());
  check_headers(headers);

  auto find = [&](std::string_view name) -> std::optional<std::size_t> {
    const auto it = std::find(headers.begin(), headers.end(), name);
    if (it == headers.end()) return std::nullopt;
    return static_cast<std::size_t>(it - headers.begin());
  };
  const auto version_idx = find(version_column);
  if (!version_idx) {
    throw Error(ErrorCode::kUnknownColumn,
                "version column '" + std::string(version_column) + "' not found");
  }
  std::optional<std::size_t> params_idx;
  if (params_column) {
    params_idx = find(*params_column);
    if (!params_idx) {
      throw Error(ErrorCode::kUnknownColumn,
                  "params column '" + std::string(*params_column) + "' not found");
    }
  }
  std::vector<std::size_t> numeric_idx;
  std::vector<std::string> numeric_headers;
  for (std::size_t c = 0; c < headers.size(); ++c) {
    if (c == *version_idx || (params_idx && c == *params_idx)) continue;
    numeric_idx.push_back(c);
    numeric_headers.push_back(headers[c]);
  }

  // Per version: rows of optional cells (nullopt = empty) and the params text.
  struct Group {
    std::vector<std::vector<std::optional<double>>> rows;
    std::string params;
  };
  std::map<std::string, Group> groups;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const long row = static_cast<long>(r - 1);
    check_width(records[r], headers.size(), row);
    const std::string label(trim(records[r][*version_idx]));
    if (label.empty()) {
      throw ParseError(row, static_cast<long>(*version_idx), "empty version label");
    }
    Group& g = groups[label];
    if (params_idx) {
      const std::string params(trim(records[r][*params_idx]));
      if (g.rows.empty()) {
        g.params = params;
      } else if (g.params != params) {
        throw ParseError(row, static_cast<long>(*params_idx),
                         "version '" + label + "' has conflicting params");
      }
    }
    std::vector<std::optional<double>> cells;
    for (const std::size_t c : numeric_idx) {
      const std::string_view cell = trim(records[r][c]);
      if (cell.empty()) {
        cells.emplace_back();
      } else {
        cells.emplace_back(parse_cell(cell, row, static_cast<long>(c)));
      }
    }
    g.rows.push_back(std::move(cells));
  }

  std::vector<std::string> labels;
  for (const auto& [label, g] : groups) labels.push_back(label);
  std::sort(labels.begin(), labels.end(),
            [](const std::string& a, const std::string& b) { return natural_less(a, b); });

  VersionedDataset out;
  std::optional<std::vector<std::string>> expected_models;
  for (const auto& label : labels) {
    Group& g = groups[label];
    std::sort(g.rows.begin(), g.rows.end());

    std::vector<std::string> present;
    std::vector<std::vector<double>> columns;
    for (std::size_t k = 0; k < numeric_idx.size(); ++k) {
      std::size_t empties = 0;
      for (const auto& row : g.rows) empties += row[k].has_value() ? 0 : 1;
      if (empties == g.rows.size()) continue;
      if (empties != 0) {
        throw ParseError(-1, static_cast<long>(numeric_idx[k]),
                         "column '" + numeric_headers[k] + "' is partially empty in version '" +
                             label + "'");
      }
      std::vector<double> values;
      for (const auto& row : g.rows) values.push_back(*row[k]);
      present.push_back(numeric_headers[k]);
      columns.push_back(std::move(values));
    }
    if (expected_models && *expected_models != present) {
      throw Error(ErrorCode::kInconsistentModels,
                  "version '" + label + "' does not carry the same columns as '" +
                      out.versions.front().label + "'");
    }
    expected_models = present;
    LoadOptions opts = options;
    out.versions.push_back(
        {label, g.params, build_dataset(present, std::move(columns), reference_column, opts)});
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return values[n / 2 - 1] + (values[n / 2] - values[n / 2 - 1]) / 2.0;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

StratifiedSample stratified_sample(const Table& table, std::string_view strata_column,
                                   std::size_t per_stratum, std::uint64_t seed) {
  const std::size_t strata_idx = table.column_index(strata_column);
  if (per_stratum == 0) {
    throw Error(ErrorCode::kInvalidConfig, "per_stratum must be positive");
  }
  std::vector<std::size_t> features;
  for (std::size_t c = 0; c < table.headers.size(); ++c) {
    if (c != strata_idx) features.push_back(c);
  }
  if (features.size() < 2) {
    throw Error(ErrorCode::kInvalidSample, "need at least two feature columns");
  }

  std::map<double, std::vector<std::size_t>> strata;
  const auto& strata_values = table.columns[strata_idx];
  for (std::size_t r = 0; r < strata_values.size(); ++r) strata[strata_values[r]].push_back(r);

  StratifiedSample out{{}, SampleVector("median", {0.0, 0.0}), {}};
  std::vector<double> medians;
  for (const std::size_t c : features) medians.push_back(median(table.columns[c]));
  out.median_reference = SampleVector("median", medians);

  Dataset& d = out.samples;
  d.reference_name = "median";
  d.vectors.push_back(out.median_reference);

  const SplitMix64 root(seed);
  std::uint64_t stream = 0;
  for (auto& [stratum, rows] : strata) {
    SplitMix64 rng = root.split(stream++);
    const std::size_t take = std::min(per_stratum, rows.size());
    if (rows.size() < per_stratum) {
      out.notices.push_back("stratum " + format_number(stratum) + " has " +
                            std::to_string(rows.size()) + " rows, taking all");
    }
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(rows.size() - i));
      std::swap(rows[i], rows[j]);
    }
    std::vector<std::size_t> chosen(rows.begin(), rows.begin() + static_cast<long>(take));
    std::sort(chosen.begin(), chosen.end());
    for (const std::size_t r : chosen) {
      std::vector<double> values;
      for (const std::size_t c : features) values.push_back(table.columns[c][r]);
      char name[64];
      std::snprintf(name, sizeof name, "q%s_r%04zu", format_number(stratum).c_str(), r);
      d.vectors.emplace_back(name, std::move(values));
    }
  }
  return out;
}

std::string write_csv(const Dataset& dataset) {
  std::string out;
  auto quoted = [](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (const char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  };
  for (std::size_t c = 0; c < dataset.vectors.size(); ++c) {
    if (c) out += ',';
    out += quoted(dataset.vectors[c].name());
  }
  out += '\n';
  for (std::size_t r = 0; r < dataset.length(); ++r) {
    for (std::size_t c = 0; c < dataset.vectors.size(); ++c) {
      if (c) out += ',';
      out += format_number(dataset.vectors[c].values()[r]);
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace polars
