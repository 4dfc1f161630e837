#include "naqkit/executor.hpp"

#include <algorithm>

namespace naqkit {

const HeaderRegistry& default_header_registry() {
  static const HeaderRegistry registry = [] {
    HeaderRegistry r;
    r.version = kHeaderRegistryVersion;
    r.entries = {{"ref", encode_nat(1)}, {"machine", encode_nat(2)}};
    std::vector<BitString> hs;
    for (const auto& [id, h] : r.entries) hs.push_back(h);
    r.headers = PrefixCodeSet(hs);
    return r;
  }();
  return registry;
}

// --- ReferenceExecutor -------------------------------------------------------

namespace {

// Strict literal parse; nullopt when advice is not in the domain.
std::optional<Response> parse_literal(const BitString& advice) {
  BitCursor cur(advice);
  auto n = decode_nat(cur);
  if (!n) return std::nullopt;
  uint64_t len = *n - 1;
  if (cur.remaining() != len) return std::nullopt;
  return advice.substr(cur.pos, len);
}

}  // namespace

Response ReferenceExecutor::eval(const BitString& advice) const {
  auto r = parse_literal(advice);
  return r ? *r : Response();
}

TimedResult ReferenceExecutor::timed_eval(const BitString& advice, uint64_t cutoff) const {
  auto r = parse_literal(advice);
  uint64_t tau = r ? r->size() : 0;  // halting time: one step per emitted bit
  if (tau > cutoff) return TimedResult{false, Response(), tau};
  return TimedResult{true, r ? *r : Response(), tau};
}

void ReferenceExecutor::for_each_advice(size_t max_len,
                                        const std::function<bool(const BitString&)>& fn) const {
  for (size_t len = 0; len <= 62; ++len) {
    size_t total = encode_nat_length(len + 1) + len;
    if (total > max_len) {
      // Header length is nondecreasing in len, but not strictly; only stop
      // once even the bare header cannot fit.
      if (encode_nat_length(len + 1) > max_len) break;
      continue;
    }
    BitString header = encode_nat(len + 1);
    uint64_t count = uint64_t(1) << len;
    for (uint64_t v = 0; v < count; ++v) {
      if (!fn(header + BitString::from_value(v, len))) return;
    }
  }
}

// --- MachineExecutor ---------------------------------------------------------

Response MachineExecutor::eval(const BitString& advice) const {
  if (!parse_program_body(advice)) return Response();
  RunOutcome out = run_machine(advice, budget_);
  if (out.status != RunOutcome::Status::kHalted) return Response();
  return out.output;
}

TimedResult MachineExecutor::timed_eval(const BitString& advice, uint64_t cutoff) const {
  if (!parse_program_body(advice)) return TimedResult{true, Response(), 0};
  RunOutcome out = run_machine(advice, std::min(cutoff, budget_));
  if (out.status == RunOutcome::Status::kHalted)
    return TimedResult{true, out.output, out.steps};
  if (budget_ <= cutoff) {
    // Default-budget fallback: the executor halts with the empty response at
    // exactly budget steps, so tau is capped and evaluation is total.
    return TimedResult{true, Response(), budget_};
  }
  return TimedResult{false, Response(), 0};
}

void MachineExecutor::for_each_advice(size_t max_len,
                                      const std::function<bool(const BitString&)>& fn) const {
  bool keep_going = true;
  enumerate_programs(max_len, [&](uint64_t v, size_t body_len, size_t) {
    keep_going = fn(frame_program(body_bits(v, body_len)));
    return keep_going;
  });
}

// --- UniversalExecutor -------------------------------------------------------

UniversalExecutor::UniversalExecutor(uint64_t machine_budget) : machine_(machine_budget) {}

Response UniversalExecutor::eval(const BitString& advice) const {
  const HeaderRegistry& reg = default_header_registry();
  auto split = unpair_header_payload(reg.headers, advice);
  if (!split) return Response();
  auto id = reg.id_for_prefix(advice);
  if (id == "ref") return ref_.eval(split->payload);
  if (id == "machine") return machine_.eval(split->payload);
  return Response();
}

TimedResult UniversalExecutor::timed_eval(const BitString& advice, uint64_t cutoff) const {
  const HeaderRegistry& reg = default_header_registry();
  auto split = unpair_header_payload(reg.headers, advice);
  if (!split) return TimedResult{true, Response(), 0};
  auto id = reg.id_for_prefix(advice);
  if (id == "ref") return ref_.timed_eval(split->payload, cutoff);
  if (id == "machine") return machine_.timed_eval(split->payload, cutoff);
  return TimedResult{true, Response(), 0};
}

void UniversalExecutor::for_each_advice(size_t max_len,
                                        const std::function<bool(const BitString&)>& fn) const {
  const HeaderRegistry& reg = default_header_registry();
  // Collect both branches, then emit in global (length, lex) order.
  std::vector<BitString> domain;
  for (const auto& [id, header] : reg.entries) {
    if (header.size() > max_len) continue;
    size_t sub_max = max_len - header.size();
    const Executor* branch = nullptr;
    if (id == "ref") branch = &ref_;
    if (id == "machine") branch = &machine_;
    if (!branch) continue;
    branch->for_each_advice(sub_max, [&](const BitString& w) {
      domain.push_back(header + w);
      return true;
    });
  }
  std::sort(domain.begin(), domain.end(), BitString::lenlex_less);
  for (const BitString& w : domain)
    if (!fn(w)) return;
}

// --- burden ------------------------------------------------------------------

namespace {

BurdenResult burden_over_entries(const std::vector<DomainEntry>& entries,
                                 const ValidityPredicate& V, const Instance& x) {
  BurdenResult res;
  bool unknown_seen = false;
  uint64_t unknown_min_len = 0;
  for (const DomainEntry& e : entries) {
    ++res.advice_scanned;
    Accept a = V.eval_final(x, e.output);
    if (a == Accept::kUnknown && !unknown_seen) {
      unknown_seen = true;
      unknown_min_len = e.advice.size();
    }
    if (a == Accept::kYes) {
      res.length = e.advice.size();
      res.witness = e.advice;
      res.status = (unknown_seen && unknown_min_len < res.length)
                       ? BurdenResult::Status::kUnknownAtBudget
                       : BurdenResult::Status::kFound;
      return res;
    }
  }
  res.status = unknown_seen ? BurdenResult::Status::kUnknownAtBudget
                            : BurdenResult::Status::kNoneWithinMaxLen;
  return res;
}

}  // namespace

BurdenResult advice_burden(const Executor& executor, const ValidityPredicate& V,
                           const Instance& x, size_t max_len) {
  BurdenResult res;
  bool unknown_seen = false;
  uint64_t unknown_min_len = 0;
  bool done = false;
  executor.for_each_advice(max_len, [&](const BitString& w) {
    ++res.advice_scanned;
    Accept a = V.eval_final(x, executor.eval(w));
    if (a == Accept::kUnknown && !unknown_seen) {
      unknown_seen = true;
      unknown_min_len = w.size();
    }
    if (a == Accept::kYes) {
      res.length = w.size();
      res.witness = w;
      res.status = (unknown_seen && unknown_min_len < res.length)
                       ? BurdenResult::Status::kUnknownAtBudget
                       : BurdenResult::Status::kFound;
      done = true;
      return false;
    }
    return true;
  });
  if (!done)
    res.status = unknown_seen ? BurdenResult::Status::kUnknownAtBudget
                              : BurdenResult::Status::kNoneWithinMaxLen;
  return res;
}

DomainSweep::DomainSweep(const Executor& executor, size_t max_len) : max_len_(max_len) {
  executor.for_each_advice(max_len, [&](const BitString& w) {
    TimedResult t = executor.timed_eval(w, UINT64_MAX);
    entries_.push_back(DomainEntry{w, t.output, t.steps});
    return true;
  });
}

BurdenResult DomainSweep::burden(const ValidityPredicate& V, const Instance& x) const {
  return burden_over_entries(entries_, V, x);
}

}  // namespace naqkit
