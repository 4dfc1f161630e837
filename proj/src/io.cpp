#include "naqkit/io.hpp"

#include "naqkit/constants.hpp"
#include "naqkit/rng.hpp"

#include <fstream>
#include <sstream>

namespace naqkit {

Json constants_json() {
  const ConstantsRegistry& c = constants();
  Json j;
  j["artifact_version"] = c.artifact_version;
  j["machine_version"] = c.machine_version;
  j["header_registry_version"] = c.header_registry_version;
  j["pairing_overhead_bits"] = c.pairing_overhead_bits;
  j["translation_a"] = c.translation_a;
  j["translation_b"] = c.translation_b;
  j["response_len_cap"] = c.response_len_cap;
  j["default_length_cap"] = c.default_length_cap;
  j["interactive_length_cap"] = c.interactive_length_cap;
  j["default_step_budget"] = c.default_step_budget;
  j["default_burden_max_len"] = c.default_burden_max_len;
  j["c_machine"] = c.c_machine;
  j["c_id"] = c.c_id;
  j["c_vp"] = c.c_vp;
  j["c_dsel"] = c.c_dsel;
  j["c_fa"] = c.c_fa;
  j["c_cond"] = c.c_cond;
  j["c_tight"] = c.c_tight;
  j["c_en"] = c.c_en;
  j["c_cat"] = c.c_cat;
  return j;
}

Json RunManifest::to_json() const {
  Json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["caps"] = caps;
  if (seed)
    j["seed"] = *seed;
  else
    j["seed"] = nullptr;
  j["rng"] = kRngName;
  j["constants"] = constants_json();
  return j;
}

// --- pools ---------------------------------------------------------------------

Json pool_entry_to_json(const PoolEntry& e) {
  Json j;
  j["id"] = e.id;
  j["method"] = e.method;
  switch (e.status) {
    case PoolStatus::kFinite: {
      if (auto bits = e.m.int_bits()) {
        j["m"] = *bits;
      } else {
        j["m"] = e.m.bits_double();
        j["m_antilog_num"] = boost::multiprecision::numerator(e.m.antilog()).str();
        j["m_antilog_den"] = boost::multiprecision::denominator(e.m.antilog()).str();
      }
      break;
    }
    case PoolStatus::kInfinite:
      j["status"] = "infinite";
      break;
    case PoolStatus::kUnknownAtBudget:
      j["status"] = "unknown_at_budget";
      break;
  }
  return j;
}

PoolEntry pool_entry_from_json(const Json& j) {
  PoolEntry e;
  if (!j.contains("id")) throw DataError("pool entry: missing id");
  e.id = j.at("id").get<std::string>();
  e.method = j.value("method", std::string("unknown"));
  if (j.contains("status")) {
    std::string s = j.at("status").get<std::string>();
    if (s == "infinite")
      e.status = PoolStatus::kInfinite;
    else if (s == "unknown_at_budget")
      e.status = PoolStatus::kUnknownAtBudget;
    else
      throw DataError("pool entry '" + e.id + "': unknown status " + s);
    return e;
  }
  if (!j.contains("m")) throw DataError("pool entry '" + e.id + "': missing m");
  e.status = PoolStatus::kFinite;
  if (j.contains("m_antilog_num")) {
    BigInt num(j.at("m_antilog_num").get<std::string>());
    BigInt den(j.at("m_antilog_den").get<std::string>());
    e.m = ExactBits::from_antilog(Rat(num, den));
    return e;
  }
  double v = j.at("m").get<double>();
  uint64_t iv = static_cast<uint64_t>(v);
  if (static_cast<double>(iv) != v)
    throw DataError("pool entry '" + e.id +
                    "': non-integer m without exact antilog fields");
  e.m = ExactBits::from_int_bits(iv);
  return e;
}

void write_pool_jsonl(const std::string& path, const Pool& pool, const RunManifest& manifest) {
  std::ostringstream out;
  Json head;
  head["schema"] = kPoolSchema;
  head["manifest"] = manifest.to_json();
  out << head.dump() << "\n";
  for (const PoolEntry& e : pool.entries) out << pool_entry_to_json(e).dump() << "\n";
  write_text_file(path, out.str());
}

Pool read_pool_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open pool file: " + path);
  Pool pool;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const std::exception& ex) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + ex.what());
    }
    if (j.contains("schema")) continue;  // header record
    try {
      pool.entries.push_back(pool_entry_from_json(j));
    } catch (const DataError& ex) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return pool;
}

std::string pool_to_csv(const Pool& pool) {
  std::ostringstream out;
  out << "id,method,status,m_bits\n";
  for (const PoolEntry& e : pool.entries) {
    out << e.id << "," << e.method << ",";
    switch (e.status) {
      case PoolStatus::kFinite:
        out << "finite," << e.m.bits_double();
        break;
      case PoolStatus::kInfinite:
        out << "infinite,";
        break;
      case PoolStatus::kUnknownAtBudget:
        out << "unknown_at_budget,";
        break;
    }
    out << "\n";
  }
  return out.str();
}

// --- corpora -------------------------------------------------------------------

std::vector<CorpusRecord> read_corpus_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path);
  std::vector<CorpusRecord> records;
  std::string line;
  size_t lineno = 0;
  std::vector<std::string> seen_ids;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const std::exception& ex) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + ex.what());
    }
    if (j.contains("schema")) continue;
    CorpusRecord rec;
    if (!j.contains("id") || !j.contains("x"))
      throw DataError(path + ":" + std::to_string(lineno) + ": record needs id and x");
    rec.x.id = j.at("id").get<std::string>();
    rec.x.text = j.at("x").get<std::string>();
    for (char ch : rec.x.text)
      if (ch != '0' && ch != '1')
        throw DataError(path + ":" + std::to_string(lineno) +
                        ": x must be binary text (wider alphabets enter via the codec)");
    for (const std::string& id : seen_ids)
      if (id == rec.x.id)
        throw DataError(path + ":" + std::to_string(lineno) + ": duplicate id " + rec.x.id);
    seen_ids.push_back(rec.x.id);
    rec.predicate_spec = j.value("predicate", Json());
    rec.annotations = j.value("annotations", Json::object());
    records.push_back(std::move(rec));
  }
  return records;
}

// --- declarative specs -----------------------------------------------------------

ValidityPredicate predicate_from_json(const Json& spec) {
  if (!spec.is_object() || !spec.contains("kind"))
    throw DataError("predicate spec: need an object with 'kind'");
  std::string kind = spec.at("kind").get<std::string>();
  ValidityPredicate V;
  V.id = kind;
  V.mode = ValidityPredicate::Mode::kDecidable;

  if (kind == "always_true") {
    V.decide = [](const Instance&, const Response&) { return true; };
  } else if (kind == "always_false") {
    V.decide = [](const Instance&, const Response&) { return false; };
  } else if (kind == "empty") {
    V.decide = [](const Instance&, const Response& r) { return r.empty(); };
  } else if (kind == "nonempty") {
    V.decide = [](const Instance&, const Response& r) { return !r.empty(); };
  } else if (kind == "equals") {
    Response target = BitString::from_text(spec.at("target").get<std::string>());
    V.id = "equals:" + target.to_text();
    V.decide = [target](const Instance&, const Response& r) { return r == target; };
  } else if (kind == "min_len") {
    uint64_t len = spec.at("len").get<uint64_t>();
    V.decide = [len](const Instance&, const Response& r) { return r.size() >= len; };
  } else if (kind == "length_eq") {
    uint64_t len = spec.at("len").get<uint64_t>();
    V.decide = [len](const Instance&, const Response& r) { return r.size() == len; };
  } else if (kind == "ends_with") {
    Response suffix = BitString::from_text(spec.at("suffix").get<std::string>());
    V.decide = [suffix](const Instance&, const Response& r) {
      if (suffix.size() > r.size()) return false;
      for (size_t i = 0; i < suffix.size(); ++i)
        if (r[r.size() - suffix.size() + i] != suffix[i]) return false;
      return true;
    };
  } else if (kind == "starts_with") {
    Response prefix = BitString::from_text(spec.at("prefix").get<std::string>());
    V.decide = [prefix](const Instance&, const Response& r) { return prefix.is_prefix_of(r); };
  } else if (kind == "parity") {
    bool odd = spec.value("odd", true);
    V.decide = [odd](const Instance&, const Response& r) {
      int ones = 0;
      for (size_t i = 0; i < r.size(); ++i) ones ^= r[i];
      return (ones == 1) == odd;
    };
  } else if (kind == "matches_x") {
    // Response equals the instance text read as bits.
    V.decide = [](const Instance& x, const Response& r) {
      return r == BitString::from_text(x.text);
    };
  } else if (kind == "fixture_ce") {
    uint64_t n = spec.at("n").get<uint64_t>();
    uint64_t budget = spec.at("budget").get<uint64_t>();
    return make_fixture_ce(n, budget).V;
  } else {
    throw DataError("predicate spec: unknown kind " + kind);
  }
  return V;
}

FeatureSystem feature_system_from_json(const Json& spec) {
  if (!spec.is_object() || !spec.contains("phi") || !spec.contains("circuit"))
    throw DataError("feature system spec: need phi and circuit");
  FeatureSystem fs;
  fs.id = spec.value("id", std::string("anonymous"));

  const Json& phi = spec.at("phi");
  std::string pk = phi.at("kind").get<std::string>();
  if (pk == "parity") {
    fs.m = 1;
    fs.phi = [](const Instance&, const Response& r) {
      uint32_t ones = 0;
      for (size_t i = 0; i < r.size(); ++i) ones ^= static_cast<uint32_t>(r[i]);
      return ones;
    };
  } else if (pk == "first_bit") {
    fs.m = 1;
    fs.phi = [](const Instance&, const Response& r) {
      return r.empty() ? 0u : static_cast<uint32_t>(r[0]);
    };
  } else if (pk == "length_mod") {
    unsigned bits = phi.at("bits").get<unsigned>();
    fs.m = bits;
    fs.phi = [bits](const Instance&, const Response& r) {
      return static_cast<uint32_t>(r.size() % (size_t(1) << bits));
    };
  } else if (pk == "indicator") {
    Response target = BitString::from_text(phi.at("target").get<std::string>());
    fs.m = 1;
    fs.phi = [target](const Instance&, const Response& r) { return r == target ? 1u : 0u; };
  } else if (pk == "in_set") {
    std::vector<Response> targets;
    for (const auto& t : phi.at("targets")) targets.push_back(BitString::from_text(t.get<std::string>()));
    fs.m = 1;
    fs.phi = [targets](const Instance&, const Response& r) {
      for (const auto& t : targets)
        if (t == r) return 1u;
      return 0u;
    };
  } else if (pk == "prefix_bits") {
    unsigned bits = phi.at("bits").get<unsigned>();
    fs.m = bits;
    fs.phi = [bits](const Instance&, const Response& r) {
      uint32_t y = 0;
      for (unsigned i = 0; i < bits; ++i) {
        y <<= 1;
        if (i < r.size()) y |= static_cast<uint32_t>(r[i]);
      }
      return y;
    };
  } else if (pk == "matches_x_first") {
    fs.m = 1;
    fs.phi = [](const Instance& x, const Response& r) {
      if (r.empty() || x.text.empty()) return 0u;
      return r[0] == (x.text[0] == '1' ? 1 : 0) ? 1u : 0u;
    };
  } else {
    throw DataError("feature system spec: unknown phi kind " + pk);
  }
  if (spec.contains("m")) fs.m = spec.at("m").get<unsigned>();
  if (fs.m < 1 || fs.m > 12) throw DataError("feature system spec: m in [1,12]");

  const Json& circuit = spec.at("circuit");
  std::string ck = circuit.at("kind").get<std::string>();
  if (ck == "any") {
    fs.circuit = [](uint32_t) { return true; };
  } else if (ck == "equals") {
    uint32_t y0 = circuit.at("y").get<uint32_t>();
    fs.circuit = [y0](uint32_t y) { return y == y0; };
  } else if (ck == "in") {
    std::vector<uint32_t> ys = circuit.at("ys").get<std::vector<uint32_t>>();
    fs.circuit = [ys](uint32_t y) {
      for (uint32_t v : ys)
        if (v == y) return true;
      return false;
    };
  } else if (ck == "nonzero") {
    fs.circuit = [](uint32_t y) { return y != 0; };
  } else {
    throw DataError("feature system spec: unknown circuit kind " + ck);
  }
  return fs;
}

RealizerEnumeration enumeration_from_json(const Json& spec) {
  std::string kind = spec.at("kind").get<std::string>();
  if (kind == "length_lex") return length_lex_enumeration();
  if (kind == "block_reversed") return block_reversed_enumeration();
  if (kind == "adjacent_swap") return adjacent_swap_enumeration();
  if (kind == "planted")
    return planted_enumeration(BitString::from_text(spec.at("target").get<std::string>()),
                               spec.at("index").get<uint64_t>());
  throw DataError("enumeration spec: unknown kind " + kind);
}

Fixture fixture_from_json(const Json& spec) {
  if (!spec.is_object() || !spec.contains("kind"))
    throw DataError("fixture spec: need an object with 'kind'");
  std::string kind = spec.at("kind").get<std::string>();
  uint64_t n = spec.at("n").get<uint64_t>();
  uint64_t budget = spec.at("budget").get<uint64_t>();
  if (kind == "usc") return make_fixture_usc(n, budget);
  if (kind == "ce") return make_fixture_ce(n, budget);
  throw DataError("fixture spec: unknown kind " + kind);
}

std::vector<std::vector<PanelMember>> panels_from_json(const Json& spec) {
  if (!spec.contains("panels")) throw DataError("panel spec: missing 'panels'");
  std::vector<std::vector<PanelMember>> out;
  for (const auto& panel : spec.at("panels")) {
    std::vector<PanelMember> members;
    for (const auto& m : panel.at("members")) {
      PanelMember pm;
      pm.x.id = m.at("id").get<std::string>();
      pm.x.text = m.value("x", std::string());
      for (const auto& r : m.at("feasible"))
        pm.feasible.push_back(BitString::from_text(r.get<std::string>()));
      members.push_back(std::move(pm));
    }
    out.push_back(std::move(members));
  }
  return out;
}

// --- small helpers ----------------------------------------------------------------

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << content;
}

}  // namespace naqkit
