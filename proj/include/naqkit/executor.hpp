#pragma once
// Input-blind executors: the literal-output reference executor, the bounded
// machine as an executor, and the universal executor with its header table.
// Every executor is total on all bit strings; its prefix-free advice domain
// is exposed separately for burden and Levin searches.

#include "naqkit/bitcode.hpp"
#include "naqkit/bitstring.hpp"
#include "naqkit/machine.hpp"
#include "naqkit/types.hpp"
#include "naqkit/validity.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace naqkit {

inline constexpr int kHeaderRegistryVersion = 1;

struct HeaderRegistry {
  int version = kHeaderRegistryVersion;
  std::vector<std::pair<std::string, BitString>> entries;  // (executor id, header)
  PrefixCodeSet headers;

  std::optional<BitString> header_for(const std::string& id) const {
    for (const auto& [eid, h] : entries)
      if (eid == id) return h;
    return std::nullopt;
  }
  std::optional<std::string> id_for_prefix(const BitString& w) const {
    auto h = headers.match_prefix(w);
    if (!h) return std::nullopt;
    for (const auto& [eid, hdr] : entries)
      if (hdr == *h) return eid;
    return std::nullopt;
  }
};

// Fixed shipped registry: "ref" -> gamma(1), "machine" -> gamma(2).
const HeaderRegistry& default_header_registry();

struct TimedResult {
  bool halted = false;  // halted within the step cutoff
  Response output;
  uint64_t steps = 0;
};

class Executor {
 public:
  virtual ~Executor() = default;
  virtual const std::string& id() const = 0;

  // Total evaluation; malformed advice maps to the empty response.
  virtual Response eval(const BitString& advice) const = 0;

  // Evaluation under a step cutoff; halted=false means the halting time
  // exceeds the cutoff (output and steps are then unspecified).
  virtual TimedResult timed_eval(const BitString& advice, uint64_t cutoff) const = 0;

  // Enumerates the prefix-free advice domain in (length, lex) order up to
  // max_len; fn returns false to stop early.
  virtual void for_each_advice(size_t max_len,
                               const std::function<bool(const BitString&)>& fn) const = 0;
};

// Literal-output executor: advice gamma(l+1) ++ (l bits) emits those l bits.
// Anything else (truncated header, missing or surplus payload) emits empty.
class ReferenceExecutor : public Executor {
 public:
  const std::string& id() const override { return id_; }
  Response eval(const BitString& advice) const override;
  TimedResult timed_eval(const BitString& advice, uint64_t cutoff) const override;
  void for_each_advice(size_t max_len,
                       const std::function<bool(const BitString&)>& fn) const override;

 private:
  std::string id_ = "ref";
};

// The bounded machine as an executor; advice is a framed program. Timeouts at
// the default budget fall back to the empty response, which keeps evaluation
// total with halting time capped by the budget.
class MachineExecutor : public Executor {
 public:
  explicit MachineExecutor(uint64_t default_budget = kDefaultStepBudget)
      : budget_(default_budget) {}

  const std::string& id() const override { return id_; }
  Response eval(const BitString& advice) const override;
  TimedResult timed_eval(const BitString& advice, uint64_t cutoff) const override;
  void for_each_advice(size_t max_len,
                       const std::function<bool(const BitString&)>& fn) const override;

  uint64_t default_budget() const { return budget_; }

 private:
  std::string id_ = "machine";
  uint64_t budget_;
};

// Header-dispatch universal executor over the fixed registry.
class UniversalExecutor : public Executor {
 public:
  explicit UniversalExecutor(uint64_t machine_budget = kDefaultStepBudget);

  const std::string& id() const override { return id_; }
  Response eval(const BitString& advice) const override;
  TimedResult timed_eval(const BitString& advice, uint64_t cutoff) const override;
  void for_each_advice(size_t max_len,
                       const std::function<bool(const BitString&)>& fn) const override;

  const ReferenceExecutor& reference_branch() const { return ref_; }
  const MachineExecutor& machine_branch() const { return machine_; }

 private:
  std::string id_ = "universal";
  ReferenceExecutor ref_;
  MachineExecutor machine_;
};

struct BurdenResult {
  enum class Status { kFound, kNoneWithinMaxLen, kUnknownAtBudget };
  Status status = Status::kNoneWithinMaxLen;
  uint64_t length = 0;  // valid when kFound; tentative upper bound when unknown
  BitString witness;
  uint64_t advice_scanned = 0;
};

// Eq.-4 advice burden: least advice length in E's domain whose response the
// predicate accepts, truncated at max_len. Staged predicates are evaluated at
// their final stage; an Unknown at a length at or below the best found makes
// the result kUnknownAtBudget rather than a silent minimum.
BurdenResult advice_burden(const Executor& executor, const ValidityPredicate& V,
                           const Instance& x, size_t max_len);

// Cached advice-domain sweep: the executor never reads x, so one evaluation
// pass serves every instance/predicate at the same max_len.
struct DomainEntry {
  BitString advice;
  Response output;
  uint64_t tau = 0;  // halting time under the executor's totality convention
};

class DomainSweep {
 public:
  DomainSweep(const Executor& executor, size_t max_len);
  const std::vector<DomainEntry>& entries() const { return entries_; }
  size_t max_len() const { return max_len_; }

  BurdenResult burden(const ValidityPredicate& V, const Instance& x) const;

 private:
  std::vector<DomainEntry> entries_;  // (length, lex) order
  size_t max_len_;
};

}  // namespace naqkit
