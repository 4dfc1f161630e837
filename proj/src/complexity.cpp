#include "naqkit/complexity.hpp"

#include <csignal>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>

namespace naqkit {

ProgramTable::ProgramTable(SearchCaps caps, const BitString* condition) : caps_(caps) {
  if (caps.length_cap > 40)
    throw std::invalid_argument("ProgramTable: length cap beyond desk scale");
  BoundedMachine machine;
  enumerate_programs(caps.length_cap, [&](uint64_t body, size_t body_len, size_t total) {
    RunOutcome out = machine.run_packed_body(body, body_len, caps.step_budget, condition);
    Entry e;
    e.total_len = static_cast<uint32_t>(total);
    e.body_len = static_cast<uint32_t>(body_len);
    e.body = body;
    e.halted = out.status == RunOutcome::Status::kHalted;
    e.steps = out.steps;
    if (e.halted) e.output = std::move(out.output);
    size_t idx = entries_.size();
    entries_.push_back(std::move(e));
    const Entry& stored = entries_[idx];
    if (stored.halted) {
      auto [it, inserted] = best_.try_emplace(stored.output, idx);
      if (!inserted) {
        const Entry& cur = entries_[it->second];
        // (length, steps, lex) tie order; enumeration is already (length, lex)
        // so a later entry wins only on strictly fewer steps at equal length.
        if (stored.total_len == cur.total_len && stored.steps < cur.steps) it->second = idx;
      }
    }
    return true;
  });
}

std::optional<size_t> ProgramTable::best_for_output(const Response& r) const {
  auto it = best_.find(r);
  if (it == best_.end()) return std::nullopt;
  return it->second;
}

namespace {

struct CapsKey {
  uint64_t length_cap;
  uint64_t step_budget;
  std::string condition;  // empty marker "-" for unconditional

  bool operator<(const CapsKey& o) const {
    return std::tie(length_cap, step_budget, condition) <
           std::tie(o.length_cap, o.step_budget, o.condition);
  }
};

std::map<CapsKey, std::shared_ptr<const ProgramTable>>& table_cache() {
  static std::map<CapsKey, std::shared_ptr<const ProgramTable>> cache;
  return cache;
}

std::mutex& table_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::shared_ptr<const ProgramTable> program_table(SearchCaps caps) {
  CapsKey key{caps.length_cap, caps.step_budget, "-"};
  std::lock_guard<std::mutex> lock(table_mutex());
  auto& cache = table_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const ProgramTable>(caps);
  cache.emplace(key, table);
  return table;
}

std::shared_ptr<const ProgramTable> program_table_conditional(SearchCaps caps,
                                                              const BitString& condition) {
  CapsKey key{caps.length_cap, caps.step_budget, condition.to_text()};
  std::lock_guard<std::mutex> lock(table_mutex());
  auto& cache = table_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const ProgramTable>(caps, &condition);
  cache.emplace(key, table);
  return table;
}

ComplexityEstimate khat_exact(const ProgramTable& table, const Response& r) {
  ComplexityEstimate est;
  est.method = EstimateMethod::kExactBounded;
  est.length_cap = table.caps().length_cap;
  est.step_budget = table.caps().step_budget;
  auto idx = table.best_for_output(r);
  if (!idx) {
    est.status = EstimateStatus::kInfinite;
    return est;
  }
  const ProgramTable::Entry& e = table.entries()[*idx];
  est.status = EstimateStatus::kFinite;
  est.value = e.total_len;
  est.witness = table.program_bits(e);
  est.tau_star = e.steps;
  return est;
}

ComplexityEstimate khat_exact(const Response& r, SearchCaps caps) {
  return khat_exact(*program_table(caps), r);
}

ComplexityEstimate khat_exact_conditional(const Response& r, const BitString& condition,
                                          SearchCaps caps) {
  return khat_exact(*program_table_conditional(caps, condition), r);
}

MExactResult m_exact(const ProgramTable& table, const Instance& x, const ValidityPredicate& V) {
  MExactResult res;
  res.estimate.method = EstimateMethod::kExactBounded;
  res.estimate.length_cap = table.caps().length_cap;
  res.estimate.step_budget = table.caps().step_budget;

  // Predicate answers per distinct output are cached: the table is in
  // (length, lex) order so the first accepted entry has minimal length; the
  // scan continues through that length stratum for the (steps, lex) tie.
  std::unordered_map<BitString, Accept, BitStringHash> verdict;
  bool unknown_seen = false;
  uint64_t unknown_min_len = 0;
  const ProgramTable::Entry* best = nullptr;

  for (const auto& e : table.entries()) {
    if (!e.halted) continue;
    if (best && e.total_len > best->total_len) break;
    auto it = verdict.find(e.output);
    Accept a;
    if (it == verdict.end()) {
      a = V.eval_final(x, e.output);
      verdict.emplace(e.output, a);
    } else {
      a = it->second;
    }
    if (a == Accept::kUnknown && !unknown_seen) {
      unknown_seen = true;
      unknown_min_len = e.total_len;
    }
    if (a != Accept::kYes) continue;
    if (!best || e.steps < best->steps) best = &e;
  }

  if (best) {
    res.estimate.value = best->total_len;
    res.estimate.witness = table.program_bits(*best);
    res.estimate.tau_star = best->steps;
    res.witness_response = best->output;
    res.estimate.status = (unknown_seen && unknown_min_len < best->total_len)
                              ? EstimateStatus::kUnknownAtBudget
                              : EstimateStatus::kFinite;
  } else {
    res.estimate.status =
        unknown_seen ? EstimateStatus::kUnknownAtBudget : EstimateStatus::kInfinite;
  }
  return res;
}

MExactResult m_exact(const Instance& x, const ValidityPredicate& V, SearchCaps caps) {
  return m_exact(*program_table(caps), x, V);
}

// --- Levin search ---------------------------------------------------------------

double LevinObjective::bits_double() const {
  return static_cast<double>(advice_bits) + std::log2(1.0 + static_cast<double>(tau));
}

int LevinObjective::compare(const LevinObjective& a, const LevinObjective& b) {
  BigInt lhs = a.antilog();
  BigInt rhs = b.antilog();
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

LevinResult levin_value(const Instance& x, const Executor& executor,
                        const ValidityPredicate& V_T, uint64_t budget_B) {
  LevinResult res;
  bool have = false;
  executor.for_each_advice(budget_B, [&](const BitString& w) {
    ++res.advice_scanned;
    uint64_t theta = levin_cutoff(budget_B, w.size());
    TimedResult t = executor.timed_eval(w, theta);
    if (!t.halted) return true;  // discard: tau exceeds the cutoff
    if (V_T.eval_final(x, t.output) != Accept::kYes) return true;
    LevinObjective obj{w.size(), t.steps};
    if (!have || LevinObjective::compare(obj, res.objective) < 0) {
      have = true;
      res.objective = obj;
      res.witness = w;
    }
    return true;
  });
  res.status = have ? LevinResult::Status::kFound : LevinResult::Status::kNoWitnessUnderBudget;
  return res;
}

// --- LZ78-style coder ------------------------------------------------------------

uint64_t lz78_code_bits(const BitString& payload) {
  // Token stream: (ceil(log2(t)) index bits, 1 symbol bit) for the t-th token,
  // t starting at 1; a final unextended phrase emits its index alone.
  struct Node {
    int64_t child[2] = {-1, -1};
  };
  std::vector<Node> trie(1);  // node 0 = empty phrase
  uint64_t bits = 0;
  uint64_t tokens = 0;
  int64_t node = 0;
  for (size_t i = 0; i < payload.size(); ++i) {
    int b = payload[i];
    int64_t next = trie[static_cast<size_t>(node)].child[b];
    if (next >= 0) {
      node = next;
      continue;
    }
    ++tokens;
    bits += ceil_log2_u64(tokens) + 1;  // index of `node` among `tokens` known phrases + symbol
    trie[static_cast<size_t>(node)].child[b] = static_cast<int64_t>(trie.size());
    trie.emplace_back();
    node = 0;
  }
  if (node != 0) {
    ++tokens;
    bits += ceil_log2_u64(tokens);  // trailing phrase, no symbol bit
  }
  return bits;
}

namespace {

// External adapter: spawns NAQKIT_COMPRESSOR_PATH, writes the response's
// length-prefixed byte form to its stdin, reads compressed bytes from its
// stdout. Failures surface with captured diagnostics, never a value.
uint64_t external_compressed_bits(const Response& r, const std::string& compressor_id);

}  // namespace

ComplexityEstimate khat_compressor(const Response& r, const std::string& compressor_id) {
  ComplexityEstimate est;
  est.method = EstimateMethod::kCompressor;
  est.compressor_id = compressor_id;
  uint64_t code_bits;
  if (compressor_id == "lz78") {
    code_bits = lz78_code_bits(r);
  } else {
    code_bits = external_compressed_bits(r, compressor_id);
  }
  est.status = EstimateStatus::kFinite;
  est.value = code_bits + encode_nat_length(code_bits + 1);
  return est;
}

namespace {

uint64_t external_compressed_bits(const Response& r, const std::string& compressor_id) {
  const char* path = std::getenv("NAQKIT_COMPRESSOR_PATH");
  if (!path || !*path)
    throw CompressorError("compressor '" + compressor_id +
                          "' is not built in and NAQKIT_COMPRESSOR_PATH is unset");

  int in_pipe[2], out_pipe[2], err_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0 || pipe(err_pipe) != 0)
    throw CompressorError("compressor adapter: pipe() failed");

  pid_t pid = fork();
  if (pid < 0) throw CompressorError("compressor adapter: fork() failed");
  if (pid == 0) {
    dup2(in_pipe[0], 0);
    dup2(out_pipe[1], 1);
    dup2(err_pipe[1], 2);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    execl(path, path, static_cast<char*>(nullptr));
    _exit(127);
  }

  close(in_pipe[0]);
  close(out_pipe[1]);
  close(err_pipe[1]);

  // A child that exits before reading closes the pipe; take EPIPE as a write
  // failure instead of dying on SIGPIPE.
  signal(SIGPIPE, SIG_IGN);
  std::vector<uint8_t> input = r.to_length_prefixed_bytes();
  size_t written = 0;
  while (written < input.size()) {
    ssize_t n = write(in_pipe[1], input.data() + written, input.size() - written);
    if (n <= 0) break;
    written += static_cast<size_t>(n);
  }
  close(in_pipe[1]);

  auto drain = [](int fd) {
    std::vector<uint8_t> data;
    uint8_t buf[4096];
    ssize_t n;
    while ((n = read(fd, buf, sizeof buf)) > 0) data.insert(data.end(), buf, buf + n);
    close(fd);
    return data;
  };
  std::vector<uint8_t> output = drain(out_pipe[0]);
  std::vector<uint8_t> errout = drain(err_pipe[0]);

  int status = 0;
  waitpid(pid, &status, 0);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::string diag(errout.begin(), errout.end());
    throw CompressorError("compressor '" + compressor_id + "' failed (exit " +
                          std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) +
                          "): " + diag);
  }
  return 8 * static_cast<uint64_t>(output.size());
}

}  // namespace

GapReport realizer_identity_audit(
    const std::vector<std::pair<Instance, ValidityPredicate>>& corpus, SearchCaps caps,
    uint64_t burden_max_len) {
  GapReport report;
  report.caps = caps;
  report.burden_max_len = burden_max_len;
  report.a = constants().translation_a;
  report.b = constants().translation_b;

  auto table = program_table(caps);
  UniversalExecutor univ;
  DomainSweep sweep(univ, burden_max_len);

  for (const auto& [x, V] : corpus) {
    GapRow row;
    row.instance_id = x.id;
    BurdenResult burden = sweep.burden(V, x);
    MExactResult m = m_exact(*table, x, V);
    if (burden.status == BurdenResult::Status::kFound &&
        m.estimate.status == EstimateStatus::kFinite) {
      row.resolved = true;
      row.burden = burden.length;
      row.m_value = m.estimate.value;
      row.gap = static_cast<int64_t>(burden.length) - static_cast<int64_t>(m.estimate.value);
      report.max_abs_gap = std::max(report.max_abs_gap, std::abs(row.gap));
    } else {
      row.resolved = false;
      ++report.excluded;
      row.note = "unresolved within caps";
    }
    report.rows.push_back(std::move(row));
  }
  report.pass = report.excluded == 0 &&
                report.max_abs_gap <= static_cast<int64_t>(report.a + report.b);
  return report;
}

}  // namespace naqkit
