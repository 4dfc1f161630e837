#pragma once
// Brute-force oracles used by the tests. These stay independent of the
// implementation paths they check: domain parsing, quantile counting and
// argmin selection are re-derived from the definitions, not reused.

#include "naqkit/bitcode.hpp"
#include "naqkit/bitstring.hpp"
#include "naqkit/executor.hpp"
#include "naqkit/rational.hpp"
#include "naqkit/types.hpp"
#include "naqkit/validity.hpp"

#include <optional>
#include <vector>

namespace oracle {

using namespace naqkit;

// Independent gamma-frame check: zeros, marker, zeros value bits, payload of
// exactly the decoded length. Returns the payload length or nullopt.
inline std::optional<size_t> parse_gamma_framed(const BitString& w) {
  size_t zeros = 0, pos = 0;
  while (pos < w.size() && w[pos] == 0) {
    ++zeros;
    ++pos;
  }
  if (pos >= w.size()) return std::nullopt;
  ++pos;  // the leading 1 of the binary value
  uint64_t value = 1;
  for (size_t i = 0; i < zeros; ++i) {
    if (pos >= w.size()) return std::nullopt;
    value = (value << 1) | static_cast<uint64_t>(w[pos++]);
  }
  uint64_t payload = value - 1;
  if (w.size() - pos != payload) return std::nullopt;
  return static_cast<size_t>(payload);
}

// All bit strings of length <= max_len in (length, lex) order.
inline std::vector<BitString> all_strings(size_t max_len) {
  std::vector<BitString> out;
  for (size_t len = 0; len <= max_len; ++len)
    for (uint64_t v = 0; v < (uint64_t(1) << len); ++v)
      out.push_back(BitString::from_value(v, len));
  return out;
}

// Burden oracle: sweep every raw bit string, keep only strings the executor's
// documented domain grammar admits, and take the least length whose response
// the predicate accepts. Works for any executor whose domain is "whole string
// is one gamma-framed unit, possibly behind a registered header".
inline std::optional<uint64_t> burden_bruteforce(const Executor& executor,
                                                 const ValidityPredicate& V, const Instance& x,
                                                 size_t max_len, bool universal) {
  for (size_t len = 0; len <= max_len; ++len) {
    for (uint64_t v = 0; v < (uint64_t(1) << len); ++v) {
      BitString w = BitString::from_value(v, len);
      bool in_domain;
      if (universal) {
        // Header "1" -> literal advice; header "010" -> framed program.
        if (len >= 1 && w[0] == 1) {
          in_domain = parse_gamma_framed(w.substr(1, len - 1)).has_value();
        } else if (len >= 3 && w[0] == 0 && w[1] == 1 && w[2] == 0) {
          in_domain = parse_gamma_framed(w.substr(3, len - 3)).has_value();
        } else {
          in_domain = false;
        }
      } else {
        in_domain = parse_gamma_framed(w).has_value();
      }
      if (!in_domain) continue;
      if (V.eval_final(x, executor.eval(w)) == Accept::kYes) return len;
    }
  }
  return std::nullopt;
}

// Direct-counting mid-rank: (#below + #tied/2) / n over plain integers.
inline Rat naq_midrank_counting(uint64_t m, const std::vector<uint64_t>& pool) {
  uint64_t below = 0, tied = 0;
  for (uint64_t v : pool) {
    if (v < m) ++below;
    if (v == m) ++tied;
  }
  return Rat(2 * below + tied, 2 * pool.size());
}

// Argmin oracle: scan all responses up to max_len with final-stage predicate
// answers; smallest loss, ties by the given order.
inline std::optional<std::pair<Response, Rat>> argmin_bruteforce(
    const Instance& x, const ValidityPredicate& V, const DiscreteLoss& L, const TieOrder& order,
    size_t max_len) {
  std::optional<Response> best;
  std::optional<Rat> best_loss;
  for (const BitString& r : all_strings(max_len)) {
    if (V.eval_final(x, r) != Accept::kYes) continue;
    Rat loss = L.eval(x, r);
    if (!best || loss < *best_loss || (loss == *best_loss && order.less(r, *best))) {
      best = r;
      best_loss = loss;
    }
  }
  if (!best) return std::nullopt;
  return std::make_pair(*best, *best_loss);
}

}  // namespace oracle
