#include "polars/catalog.hpp"

#include <filesystem>

#include <json.hpp>

namespace polars {

namespace fs = std::filesystem;

std::vector<ManifestEntry> parse_manifest(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("manifest is not valid JSON: ") + e.what());
  }
  std::vector<ManifestEntry> out;
  try {
    for (const auto& d : j.at("datasets")) {
      ManifestEntry e;
      e.id = d.at("id");
      e.title = d.value("title", e.id);
      e.path = d.at("path");
      e.reference_column = d.at("reference_column");
      if (d.contains("version_column") && !d["version_column"].is_null()) {
        e.version_column = d["version_column"].get<std::string>();
      }
      if (d.contains("params_column") && !d["params_column"].is_null()) {
        e.params_column = d["params_column"].get<std::string>();
      }
      e.provenance = d.value("provenance", "");
      out.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed manifest entry: ") + e.what());
  }
  return out;
}

std::size_t CatalogEntry::model_count() const {
  if (const auto* d = std::get_if<Dataset>(&data)) return d->model_count();
  if (const auto* v = std::get_if<VersionedDataset>(&data)) {
    return v->versions.empty() ? 0 : v->versions.front().data.model_count();
  }
  return 0;
}

Catalog Catalog::from_manifest(const std::string& manifest_path) {
  Catalog c;
  const fs::path base = fs::path(manifest_path).parent_path();
  for (auto& meta : parse_manifest(read_file(manifest_path))) {
    CatalogEntry entry;
    entry.meta = std::move(meta);
    const LoadOptions opts{entry.meta.id, entry.meta.title, entry.meta.provenance, true};
    try {
      const std::string text = read_file((base / entry.meta.path).string());
      if (entry.meta.version_column) {
        std::optional<std::string_view> params;
        if (entry.meta.params_column) params = *entry.meta.params_column;
        entry.data = load_versioned_csv(text, entry.meta.reference_column,
                                        *entry.meta.version_column, params, opts);
      } else {
        entry.data = load_csv(text, entry.meta.reference_column, opts);
      }
    } catch (const Error& e) {
      entry.load_error = e.code();
      entry.load_message = e.what();
    }
    c.entries_.push_back(std::move(entry));
  }
  return c;
}

Catalog Catalog::from_directory(const std::string& dir) {
  const fs::path manifest = fs::path(dir) / "manifest.json";
  if (!fs::exists(manifest)) return {};
  return from_manifest(manifest.string());
}

const CatalogEntry* Catalog::find(std::string_view id) const {
  for (const auto& e : entries_) {
    if (e.meta.id == id) return &e;
  }
  return nullptr;
}

}  // namespace polars
