#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polars/data_io.hpp"
#include "polars/error.hpp"

namespace polars {

// One manifest line. Paths are relative to the manifest's directory.
struct ManifestEntry {
  std::string id;
  std::string title;
  std::string path;
  std::string reference_column;
  std::optional<std::string> version_column;
  std::optional<std::string> params_column;
  std::string provenance;
};

// {"datasets": [{"id", "title", "path", "reference_column",
//                "version_column"?, "params_column"?, "provenance"?}]}
std::vector<ManifestEntry> parse_manifest(std::string_view json_text);

struct CatalogEntry {
  ManifestEntry meta;
  std::variant<std::monostate, Dataset, VersionedDataset> data;
  std::optional<ErrorCode> load_error;
  std::string load_message;

  bool available() const { return !load_error.has_value(); }
  bool versioned() const { return meta.version_column.has_value(); }
  std::size_t model_count() const;
};

// Immutable after construction; safe to share between request threads.
class Catalog {
 public:
  Catalog() = default;

  // A broken entry is kept and flagged; the rest still load.
  static Catalog from_manifest(const std::string& manifest_path);
  // Reads <dir>/manifest.json; a missing manifest yields an empty catalog.
  static Catalog from_directory(const std::string& dir);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry* find(std::string_view id) const;

 private:
  std::vector<CatalogEntry> entries_;
};

}  // namespace polars
