#pragma once
// Validity predicates, discrete losses, tie orders, the dovetail argmin and
// the bounded-halting fixture families.

#include "naqkit/bitstring.hpp"
#include "naqkit/rational.hpp"
#include "naqkit/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace naqkit {

enum class Accept { kYes, kNo, kUnknown };

// V(x,r): decidable, or computably-enumerable acceptance exposed through
// monotone stages (accepted at s implies accepted at all s' >= s).
struct ValidityPredicate {
  std::string id;
  enum class Mode { kDecidable, kCeStaged } mode = Mode::kDecidable;

  std::function<bool(const Instance&, const Response&)> decide;
  // Staged acceptance; must be monotone in stage.
  std::function<bool(const Instance&, const Response&, uint64_t stage)> accepted_by_stage;
  // Stage at which staged answers are final (budgeted rendering); 0 = none.
  uint64_t final_stage = 0;

  // Three-valued evaluation at a stage budget.
  Accept eval_at(const Instance& x, const Response& r, uint64_t stage) const {
    if (mode == Mode::kDecidable) return decide(x, r) ? Accept::kYes : Accept::kNo;
    if (accepted_by_stage(x, r, stage)) return Accept::kYes;
    if (final_stage > 0 && stage >= final_stage) return Accept::kNo;
    return Accept::kUnknown;
  }

  // Evaluation at the predicate's own final stage (decidable rendering).
  Accept eval_final(const Instance& x, const Response& r) const {
    if (mode == Mode::kDecidable) return decide(x, r) ? Accept::kYes : Accept::kNo;
    return eval_at(x, r, final_stage);
  }
};

// Discrete loss with recursive codomain enumeration lambda_0 < lambda_1 < ...
// `max_response_len_for(v)` certifies properness: |r| > bound implies
// L(x,r) > v; the dovetail argmin needs it to halt with a correct answer.
struct DiscreteLoss {
  std::string id;
  enum class Mode { kComputable, kUscStaged } mode = Mode::kComputable;

  std::function<Rat(const Instance&, const Response&)> eval;  // stabilized value
  // Upper-semicomputable view: nonincreasing in stage, stabilizes to eval.
  std::function<Rat(const Instance&, const Response&, uint64_t stage)> staged_eval;
  uint64_t stabilization_stage = 0;

  std::function<Rat(uint64_t)> lambda;  // strictly increasing codomain enumeration
  std::function<uint64_t(const Instance&, const Rat&)> max_response_len_for;
};

// Fixed computable total order on responses, exposed both as a comparator and
// as the enumeration (e_k) the dovetail scans; the two must agree.
struct TieOrder {
  std::string id;
  std::function<Response(uint64_t)> enumerate;  // e_k, 0-based
  std::function<bool(const Response&, const Response&)> less;
  // Every r with |r| <= len appears at an index <= this bound.
  std::function<uint64_t(size_t)> max_index_for_length;
};

TieOrder length_lex_order();
// Length-lex with a finite priority list moved to the front (fixture orders:
// Appendix-B ties require r_{n,1} before r_{n,0} at equal loss).
TieOrder priority_order(std::vector<Response> priorities);

struct ArgminResult {
  enum class Status { kResolved, kUnresolvedAtFuel };
  Status status = Status::kUnresolvedAtFuel;
  Response rstar;
  Rat loss;
  uint64_t evals_used = 0;
};

// The dovetail argmin over (loss-level j, response index k). Scans stage
// boxes in lexicographic pair order; once a feasible response is found the
// certified candidate region (from the loss properness bound) is finished
// exhaustively, so the returned value matches the brute-force argmin.
// `fuel` caps the number of V/L evaluations.
ArgminResult argmin_dovetail(const Instance& x, const ValidityPredicate& V,
                             const DiscreteLoss& L, const TieOrder& order, uint64_t fuel);

// --- bounded-halting fixture families ---------------------------------------

struct Fixture {
  Instance x;
  ValidityPredicate V;
  DiscreteLoss L;
  TieOrder order;
  Response r0;  // enc(n,0)
  Response r1;  // enc(n,1)
  Response expected_rstar;
  bool pn_halts = false;
  uint64_t n = 0;
  uint64_t halting_budget = 0;
};

// Trivial-V fixture with the upper-semicomputable loss table
// { r_{n,1}: 2n+1 - halts, r_{n,0}: 2n, otherwise 2n+2+|r| }.
Fixture make_fixture_usc(uint64_t n, uint64_t halting_budget);

// c.e.-V fixture: r_{n,1} accepted only once p_n halts; loss 0/1/2+|r|.
Fixture make_fixture_ce(uint64_t n, uint64_t halting_budget);

}  // namespace naqkit
