#pragma once
// Data plumbing: run manifests, JSONL pools and corpora, declarative
// predicate / feature-system / enumeration / panel specs. File formats are
// documented in docs/formats.md. Reruns under identical manifests are
// byte-identical; manifests carry no timestamps.

#include "naqkit/bounds.hpp"
#include "naqkit/descsel.hpp"
#include "naqkit/naq.hpp"
#include "naqkit/types.hpp"
#include "naqkit/validity.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace naqkit {

using Json = nlohmann::ordered_json;

struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

Json constants_json();

struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  Json caps = Json::object();
  std::optional<uint64_t> seed;

  Json to_json() const;
};

// --- pools ---------------------------------------------------------------------

inline constexpr const char* kPoolSchema = "naqkit-pool-v1";

Json pool_entry_to_json(const PoolEntry& e);
PoolEntry pool_entry_from_json(const Json& j);

void write_pool_jsonl(const std::string& path, const Pool& pool, const RunManifest& manifest);
Pool read_pool_jsonl(const std::string& path);

std::string pool_to_csv(const Pool& pool);

// --- corpora -------------------------------------------------------------------

struct CorpusRecord {
  Instance x;
  Json predicate_spec;  // null when the record defers to the run-level predicate
  Json annotations;
};

std::vector<CorpusRecord> read_corpus_jsonl(const std::string& path);

// --- declarative specs -----------------------------------------------------------

ValidityPredicate predicate_from_json(const Json& spec);
FeatureSystem feature_system_from_json(const Json& spec);
RealizerEnumeration enumeration_from_json(const Json& spec);
std::vector<std::vector<PanelMember>> panels_from_json(const Json& spec);
// Bounded-halting fixtures as data: {"kind":"usc"|"ce","n":N,"budget":B}.
Fixture fixture_from_json(const Json& spec);

// --- small helpers ----------------------------------------------------------------

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace naqkit
