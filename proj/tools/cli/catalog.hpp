#pragma once

// Built-in example models, stored as model-file documents so that
// `catalog export` followed by `check` reproduces `catalog run` exactly.

#include <string>
#include <vector>

#include <json.hpp>

namespace stromcheck::cli {

struct CatalogEntry {
  std::string name;
  std::string summary;
};

const std::vector<CatalogEntry>& catalog_entries();
bool in_catalog(const std::string& name);

// Throws ModelError for unknown names. `t` only affects sl2c.
nlohmann::json catalog_document(const std::string& name, double t = 2.0);
// The exact text `catalog export` writes.
std::string catalog_export(const std::string& name, double t = 2.0);

}  // namespace stromcheck::cli
