#pragma once

// Catalog of worked examples: each entry is a pipeline plus the values it must
// reproduce exactly. Comparison is on canonical entry strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "paraidem/pipeline.hpp"

namespace paraidem {

struct CatalogEntry {
  std::string id;
  std::string title;
  nlohmann::json pipeline;
  nlohmann::json expect = nlohmann::json::object();
  nlohmann::json error;  // {"code", "step"} when the pipeline must fail
};

struct Mismatch {
  std::string where;
  std::string expected;
  std::string actual;
};

struct EntryOutcome {
  std::string id;
  bool ok = false;
  std::size_t compared = 0;  // number of expectations checked
  std::vector<Mismatch> mismatches;
  nlohmann::json checks = nlohmann::json::object();

  [[nodiscard]] nlohmann::json to_json() const;
};

/// All entries, sorted by id.
const std::vector<CatalogEntry>& catalog();
/// Throws UnknownBinding for an unknown id.
const CatalogEntry& catalog_entry(const std::string& id);

EntryOutcome run_entry(const CatalogEntry& entry);
/// Runs the given ids (all when empty) concurrently; results are in id order.
std::vector<EntryOutcome> run_catalog(const std::vector<std::string>& ids = {});

}  // namespace paraidem
