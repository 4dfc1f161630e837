#include "naqkit/validity.hpp"

#include "naqkit/bitcode.hpp"
#include "naqkit/machine.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

namespace naqkit {

TieOrder length_lex_order() {
  TieOrder order;
  order.id = "length_lex";
  order.enumerate = [](uint64_t k) { return lenlex_unrank(BigInt(k)); };
  order.less = BitString::lenlex_less;
  order.max_index_for_length = [](size_t len) {
    if (len >= 62) throw std::invalid_argument("length_lex_order: length too large");
    return (uint64_t(1) << (len + 1)) - 2;
  };
  return order;
}

TieOrder priority_order(std::vector<Response> priorities) {
  TieOrder order;
  order.id = "priority_then_length_lex";
  auto priors = std::make_shared<std::vector<Response>>(std::move(priorities));

  auto priority_index = [priors](const Response& r) -> std::optional<size_t> {
    for (size_t i = 0; i < priors->size(); ++i)
      if ((*priors)[i] == r) return i;
    return std::nullopt;
  };

  order.enumerate = [priors](uint64_t k) -> Response {
    if (k < priors->size()) return (*priors)[k];
    // k-th non-priority string in length-lex order: start from the raw rank
    // and push it past every priority string that precedes it.
    std::vector<BigInt> ranks;
    for (const Response& p : *priors) ranks.push_back(lenlex_rank(p));
    std::sort(ranks.begin(), ranks.end());
    BigInt j = k - priors->size();
    for (const BigInt& pr : ranks)
      if (pr <= j) ++j;
    return lenlex_unrank(j);
  };

  order.less = [priority_index](const Response& a, const Response& b) {
    auto ia = priority_index(a);
    auto ib = priority_index(b);
    if (ia && ib) return *ia < *ib;
    if (ia) return true;
    if (ib) return false;
    return BitString::lenlex_less(a, b);
  };

  size_t nprior = priors->size();
  order.max_index_for_length = [nprior](size_t len) {
    if (len >= 62) throw std::invalid_argument("priority_order: length too large");
    // Priorities can only move non-priority strings earlier, never later.
    return (uint64_t(1) << (len + 1)) - 2 + nprior;
  };
  return order;
}

namespace {

// Per-response memo during a dovetail run.
struct Scan {
  const Instance& x;
  const ValidityPredicate& V;
  const DiscreteLoss& L;
  const TieOrder& order;
  uint64_t fuel;
  uint64_t used = 0;

  Scan(const Instance& xi, const ValidityPredicate& Vi, const DiscreteLoss& Li,
       const TieOrder& oi, uint64_t fueli)
      : x(xi), V(Vi), L(Li), order(oi), fuel(fueli) {}

  std::unordered_map<uint64_t, Response> responses;
  std::unordered_map<uint64_t, Rat> losses;
  std::unordered_map<uint64_t, Accept> accepts;  // sticky kYes; kNo only when final

  bool out_of_fuel() const { return used >= fuel; }

  const Response& response(uint64_t k) {
    auto it = responses.find(k);
    if (it == responses.end()) it = responses.emplace(k, order.enumerate(k)).first;
    return it->second;
  }

  // Loss evaluation; for usc losses the stabilized value is used (the staged
  // view converges to it and the argmin contract is about the stable answer).
  std::optional<Rat> loss(uint64_t k) {
    auto it = losses.find(k);
    if (it != losses.end()) return it->second;
    if (out_of_fuel()) return std::nullopt;
    ++used;
    Rat v = L.eval(x, response(k));
    losses.emplace(k, v);
    return v;
  }

  std::optional<Accept> accept_at(uint64_t k, uint64_t stage) {
    auto it = accepts.find(k);
    if (it != accepts.end() && it->second != Accept::kUnknown) return it->second;
    if (out_of_fuel()) return std::nullopt;
    ++used;
    Accept a = V.eval_at(x, response(k), stage);
    accepts[k] = a;
    return a;
  }

  std::optional<Accept> accept_final(uint64_t k) {
    auto it = accepts.find(k);
    if (it != accepts.end() && it->second != Accept::kUnknown) return it->second;
    if (out_of_fuel()) return std::nullopt;
    ++used;
    Accept a = V.eval_final(x, response(k));
    accepts[k] = a;
    return a;
  }
};

}  // namespace

ArgminResult argmin_dovetail(const Instance& x, const ValidityPredicate& V,
                             const DiscreteLoss& L, const TieOrder& order, uint64_t fuel) {
  Scan scan{x, V, L, order, fuel};
  ArgminResult res;

  // Phase 1: Appendix-A stage boxes. At stage s the frontier pairs (j,k) with
  // max(j,k) = s are visited in lexicographic order; a pair fires when
  // V(x,e_k) accepts (by stage s) and L(x,e_k) <= lambda_j.
  std::optional<uint64_t> fired_k;
  for (uint64_t s = 0; !fired_k; ++s) {
    std::vector<std::pair<uint64_t, uint64_t>> frontier;
    for (uint64_t j = 0; j < s; ++j) frontier.emplace_back(j, s);
    for (uint64_t k = 0; k <= s; ++k) frontier.emplace_back(s, k);
    std::sort(frontier.begin(), frontier.end());

    for (auto [j, k] : frontier) {
      auto acc = scan.accept_at(k, s);
      if (!acc) {
        res.status = ArgminResult::Status::kUnresolvedAtFuel;
        res.evals_used = scan.used;
        return res;
      }
      if (*acc != Accept::kYes) continue;
      auto lv = scan.loss(k);
      if (!lv) {
        res.status = ArgminResult::Status::kUnresolvedAtFuel;
        res.evals_used = scan.used;
        return res;
      }
      if (*lv <= L.lambda(j)) {
        fired_k = k;
        break;
      }
    }
  }

  // Phase 2: a feasible response certifies a finite candidate region through
  // the loss properness bound; finish it exhaustively for the exact answer.
  Rat best_loss = *scan.loss(*fired_k);
  uint64_t best_k = *fired_k;
  uint64_t k_max = order.max_index_for_length(L.max_response_len_for(x, best_loss));
  for (uint64_t k = 0; k <= k_max; ++k) {
    if (k == best_k) continue;
    auto acc = scan.accept_final(k);
    if (!acc) {
      res.status = ArgminResult::Status::kUnresolvedAtFuel;
      res.evals_used = scan.used;
      return res;
    }
    if (*acc == Accept::kUnknown) {
      // c.e. predicate without a final stage: cannot certify the argmin.
      res.status = ArgminResult::Status::kUnresolvedAtFuel;
      res.evals_used = scan.used;
      return res;
    }
    if (*acc != Accept::kYes) continue;
    auto lv = scan.loss(k);
    if (!lv) {
      res.status = ArgminResult::Status::kUnresolvedAtFuel;
      res.evals_used = scan.used;
      return res;
    }
    if (*lv < best_loss || (*lv == best_loss && k < best_k)) {
      best_loss = *lv;
      best_k = k;
      // A smaller loss can only shrink the certified region.
      uint64_t nk = order.max_index_for_length(L.max_response_len_for(x, best_loss));
      if (nk < k_max) k_max = nk;
    }
  }

  res.status = ArgminResult::Status::kResolved;
  res.rstar = scan.response(best_k);
  res.loss = best_loss;
  res.evals_used = scan.used;
  return res;
}

namespace {

// Halting step of p_n within `budget`, or nullopt.
std::optional<uint64_t> halting_step(uint64_t n, uint64_t budget) {
  RunOutcome out = run_machine(nth_program(n), budget);
  if (out.status == RunOutcome::Status::kHalted) return out.steps;
  return std::nullopt;
}

Response enc_pair(uint64_t n, int b) {
  Response r = encode_nat(n);
  r.push_back(b);
  return r;
}

}  // namespace

Fixture make_fixture_usc(uint64_t n, uint64_t halting_budget) {
  if (n == 0) throw std::invalid_argument("make_fixture_usc: n >= 1");
  Fixture f;
  f.n = n;
  f.halting_budget = halting_budget;
  f.r0 = enc_pair(n, 0);
  f.r1 = enc_pair(n, 1);
  auto halt = halting_step(n, halting_budget);
  f.pn_halts = halt.has_value();
  uint64_t halt_step = halt.value_or(UINT64_MAX);

  f.x.id = "usc-" + std::to_string(n);
  f.x.text = std::string(n, '0') + "1";

  f.V.id = "usc_trivial";
  f.V.mode = ValidityPredicate::Mode::kDecidable;
  f.V.decide = [](const Instance&, const Response&) { return true; };

  Response r0 = f.r0, r1 = f.r1;
  f.L.id = "usc_halting_loss";
  f.L.mode = DiscreteLoss::Mode::kUscStaged;
  f.L.stabilization_stage = halting_budget;
  auto staged = [n, r0, r1, halt_step, halting_budget](const Instance&, const Response& r,
                                                       uint64_t stage) -> Rat {
    uint64_t s = std::min(stage, halting_budget);
    if (r == r1) return Rat(2 * n + 1 - (halt_step <= s ? 1 : 0));
    if (r == r0) return Rat(2 * n);
    return Rat(2 * n + 2 + r.size());
  };
  f.L.staged_eval = staged;
  f.L.eval = [staged, halting_budget](const Instance& x, const Response& r) {
    return staged(x, r, halting_budget);
  };
  f.L.lambda = [](uint64_t j) { return Rat(j); };
  f.L.max_response_len_for = [n, r0, r1](const Instance&, const Rat& v) -> uint64_t {
    uint64_t base = std::max(r0.size(), r1.size());
    Rat generic_cap = v - Rat(2 * n + 2);
    if (generic_cap < 0) return base;
    BigInt floor_cap = boost::multiprecision::numerator(generic_cap) /
                       boost::multiprecision::denominator(generic_cap);
    return std::max(base, floor_cap.convert_to<uint64_t>());
  };

  f.order = priority_order({f.r1, f.r0});
  f.expected_rstar = f.pn_halts ? f.r1 : f.r0;
  return f;
}

Fixture make_fixture_ce(uint64_t n, uint64_t halting_budget) {
  if (n == 0) throw std::invalid_argument("make_fixture_ce: n >= 1");
  Fixture f;
  f.n = n;
  f.halting_budget = halting_budget;
  f.r0 = enc_pair(n, 0);
  f.r1 = enc_pair(n, 1);
  auto halt = halting_step(n, halting_budget);
  f.pn_halts = halt.has_value();
  uint64_t halt_step = halt.value_or(UINT64_MAX);

  f.x.id = "ce-" + std::to_string(n);
  f.x.text = std::string(n, '0') + "1";

  Response r0 = f.r0, r1 = f.r1;
  f.V.id = "ce_halting_feasibility";
  f.V.mode = ValidityPredicate::Mode::kCeStaged;
  f.V.final_stage = halting_budget;
  f.V.accepted_by_stage = [r0, r1, halt_step, halting_budget](const Instance&, const Response& r,
                                                              uint64_t stage) {
    if (r == r0) return true;
    if (r == r1) return halt_step <= std::min(stage, halting_budget);
    return false;
  };

  f.L.id = "ce_selector_loss";
  f.L.mode = DiscreteLoss::Mode::kComputable;
  f.L.eval = [r0, r1](const Instance&, const Response& r) -> Rat {
    if (r == r1) return Rat(0);
    if (r == r0) return Rat(1);
    return Rat(2 + r.size());
  };
  f.L.lambda = [](uint64_t j) { return Rat(j); };
  f.L.max_response_len_for = [r0, r1](const Instance&, const Rat& v) -> uint64_t {
    uint64_t base = std::max(r0.size(), r1.size());
    Rat generic_cap = v - Rat(2);
    if (generic_cap < 0) return base;
    BigInt floor_cap = boost::multiprecision::numerator(generic_cap) /
                       boost::multiprecision::denominator(generic_cap);
    return std::max(base, floor_cap.convert_to<uint64_t>());
  };

  f.order = length_lex_order();
  f.expected_rstar = f.pn_halts ? f.r1 : f.r0;
  return f;
}

}  // namespace naqkit
