#pragma once
// Complexity estimators relative to the bounded machine: exact bounded-search
// K-hat and M-hat, the Levin-style truncated advice+time search, and
// compressor proxies. Exact estimates carry their caps; compressor values
// carry no optimality claim.

#include "naqkit/bitstring.hpp"
#include "naqkit/constants.hpp"
#include "naqkit/executor.hpp"
#include "naqkit/machine.hpp"
#include "naqkit/rational.hpp"
#include "naqkit/types.hpp"
#include "naqkit/validity.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace naqkit {

struct SearchCaps {
  uint64_t length_cap = 20;     // total framed program length, bits
  uint64_t step_budget = kDefaultStepBudget;

  bool operator==(const SearchCaps&) const = default;
};

enum class EstimateMethod { kExactBounded, kLevin, kCompressor };
enum class EstimateStatus { kFinite, kInfinite, kUnknownAtBudget };

struct ComplexityEstimate {
  EstimateStatus status = EstimateStatus::kInfinite;
  uint64_t value = 0;  // bits; meaningful when finite (upper bound when unknown)
  EstimateMethod method = EstimateMethod::kExactBounded;
  uint64_t length_cap = 0;
  uint64_t step_budget = 0;
  std::string compressor_id;

  std::optional<BitString> witness;   // shortest program (exact methods)
  std::optional<uint64_t> tau_star;   // min steps among min-length witnesses

  bool finite() const { return status == EstimateStatus::kFinite; }
};

// One exhaustive run over all framed programs within caps. Executors never
// read instances, so a table serves every estimator query at the same caps.
class ProgramTable {
 public:
  struct Entry {
    uint32_t total_len;
    uint32_t body_len;
    uint64_t body;
    bool halted;
    uint64_t steps;
    Response output;  // present iff halted
  };

  ProgramTable(SearchCaps caps, const BitString* condition = nullptr);

  const SearchCaps& caps() const { return caps_; }
  const std::vector<Entry>& entries() const { return entries_; }

  // Best (min length, then min steps, then lex-least) halting program with
  // the given output, if any within caps.
  std::optional<size_t> best_for_output(const Response& r) const;

  BitString program_bits(const Entry& e) const {
    return frame_program(body_bits(e.body, e.body_len));
  }

 private:
  SearchCaps caps_;
  std::vector<Entry> entries_;
  std::unordered_map<BitString, size_t, BitStringHash> best_;
};

// Shared cache keyed by caps (and condition, for conditional complexity).
std::shared_ptr<const ProgramTable> program_table(SearchCaps caps);
std::shared_ptr<const ProgramTable> program_table_conditional(SearchCaps caps,
                                                              const BitString& condition);

// K-hat: exact minimum framed-program length producing r within caps.
ComplexityEstimate khat_exact(const Response& r, SearchCaps caps);
ComplexityEstimate khat_exact(const ProgramTable& table, const Response& r);

// Conditional K-hat(y|x): same machine with the condition preloaded on the
// work tape (cells 0..n-1, head at 0).
ComplexityEstimate khat_exact_conditional(const Response& r, const BitString& condition,
                                          SearchCaps caps);

// M-hat: exact minimum program length over outputs the predicate accepts.
// Returns both the witness program and its output. Staged predicates are
// evaluated at their final stage; unresolved evaluations at lengths at or
// below the minimum make the status kUnknownAtBudget, never a silent
// infinity.
struct MExactResult {
  ComplexityEstimate estimate;
  std::optional<Response> witness_response;
};
MExactResult m_exact(const Instance& x, const ValidityPredicate& V, SearchCaps caps);
MExactResult m_exact(const ProgramTable& table, const Instance& x, const ValidityPredicate& V);

// --- Levin truncated search ---------------------------------------------------

// Theta(x,w) = 2^(B-|w|) - 1, exact integer arithmetic.
inline uint64_t levin_cutoff(uint64_t budget_B, uint64_t advice_len) {
  if (advice_len > budget_B) return 0;
  if (budget_B - advice_len >= 64) throw std::invalid_argument("levin_cutoff: overflow");
  return (uint64_t(1) << (budget_B - advice_len)) - 1;
}

// Exact objective |w| + log2(1 + tau), carried as the pair and compared via
// integers (2^|w| * (1 + tau)), never floating point.
struct LevinObjective {
  uint64_t advice_bits = 0;
  uint64_t tau = 0;

  BigInt antilog() const { return pow2(advice_bits) * (BigInt(tau) + 1); }
  uint64_t ceil_bits() const { return advice_bits + ceil_log2_u64(tau + 1); }
  double bits_double() const;

  static int compare(const LevinObjective& a, const LevinObjective& b);
};

struct LevinResult {
  enum class Status { kFound, kNoWitnessUnderBudget };
  Status status = Status::kNoWitnessUnderBudget;
  LevinObjective objective;
  BitString witness;
  uint64_t advice_scanned = 0;
};

// Lemma-8.1 search: every advice w with |w| <= B in E's domain, each run for
// exactly Theta(x,w) steps; minimizes the exact objective over runs that halt
// within their cutoff with V_T-accepted output.
LevinResult levin_value(const Instance& x, const Executor& executor,
                        const ValidityPredicate& V_T, uint64_t budget_B);

// --- compressor proxies --------------------------------------------------------

// Built-in LZ78-style dictionary coder over bits; returns the code length in
// bits (tokens only, no framing). Deterministic; documented in docs/formats.md.
uint64_t lz78_code_bits(const BitString& payload);

struct CompressorError : std::runtime_error {
  explicit CompressorError(const std::string& what) : std::runtime_error(what) {}
};

// value = code bits + gamma framing charge. "lz78" is always available;
// any other id runs the external adapter at NAQKIT_COMPRESSOR_PATH
// (bytes in, bytes out over a pipe).
ComplexityEstimate khat_compressor(const Response& r, const std::string& compressor_id);

// --- realizer identity audit ---------------------------------------------------

struct GapRow {
  std::string instance_id;
  uint64_t burden = 0;
  uint64_t m_value = 0;
  int64_t gap = 0;  // burden - m
  bool resolved = false;
  std::string note;
};

struct GapReport {
  std::vector<GapRow> rows;
  int64_t max_abs_gap = 0;
  int a = 0;
  int b = 0;
  bool pass = false;
  size_t excluded = 0;
  SearchCaps caps;
  uint64_t burden_max_len = 0;
};

// Thm-4.2 audit: per instance, advice burden under the universal executor vs
// exact M-hat; passes iff the worst |gap| is within a + b. Instances
// unresolved within caps are excluded and flagged, never counted as passes.
GapReport realizer_identity_audit(const std::vector<std::pair<Instance, ValidityPredicate>>& corpus,
                                  SearchCaps caps, uint64_t burden_max_len);

}  // namespace naqkit
