#pragma once
// Feature description/selection decomposition: feature maps with acceptance
// circuits, realizer enumerations, selection indices, the two-part bound,
// finite-ambiguity collapse, fiber genericity and enumeration distortion.

#include "naqkit/complexity.hpp"
#include "naqkit/rational.hpp"
#include "naqkit/types.hpp"
#include "naqkit/validity.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace naqkit {

// Phi: (x,r) -> m-bit feature vector (packed into the low m bits), together
// with the acceptance circuit C. V(x,r) = C(Phi(x,r)) by construction.
// m <= 12 keeps the feasible-y set exhaustively enumerable.
struct FeatureSystem {
  std::string id;
  unsigned m = 1;
  std::function<uint32_t(const Instance&, const Response&)> phi;
  std::function<bool(uint32_t)> circuit;

  BitString y_bits(uint32_t y) const { return BitString::from_value(y, m); }
  std::vector<uint32_t> feasible_ys() const {
    if (m > 12) throw std::invalid_argument("FeatureSystem: m > 12");
    std::vector<uint32_t> ys;
    for (uint32_t y = 0; y < (1u << m); ++y)
      if (circuit(y)) ys.push_back(y);
    return ys;
  }
};

// The validity predicate induced by a feature system.
ValidityPredicate predicate_from_features(const FeatureSystem& fs);

// Computable bijection pi: N>=1 -> responses, with its inverse.
struct RealizerEnumeration {
  std::string id;
  std::function<Response(uint64_t)> pi;             // 1-based
  std::function<uint64_t(const Response&)> index_of;  // inverse of pi
};

RealizerEnumeration length_lex_enumeration();
// Reverses every length block of the length-lex order (D < 2).
RealizerEnumeration block_reversed_enumeration();
// Swaps adjacent indices (2,3), (4,5), ... (D <= 3/2).
RealizerEnumeration adjacent_swap_enumeration();
// Length-lex with `planted` moved to position `at_index` by a transposition.
RealizerEnumeration planted_enumeration(const Response& planted, uint64_t at_index);

struct PrototypeTable {
  std::map<uint32_t, std::vector<Response>> by_feature;  // y -> R_y (finite, listed)
};

// i_y^pi(x): least index i <= cap with phi(x, pi(i)) = y.
std::optional<uint64_t> selection_index(const Instance& x, uint32_t y, const FeatureSystem& fs,
                                        const RealizerEnumeration& en, uint64_t cap);

// --- two-part bound -----------------------------------------------------------

struct TwoPartRow {
  uint32_t y = 0;
  ComplexityEstimate khat_y;
  std::optional<uint64_t> index;      // i_y^pi(x), nullopt past cap
  std::optional<uint64_t> term_bits;  // K-hat(y) + ceil(log2 i)
  bool excluded = false;              // K-hat infinite within caps, or no index
};

struct TwoPartReport {
  std::vector<TwoPartRow> rows;
  std::optional<uint64_t> bound;      // min over included rows
  std::optional<uint32_t> argmin_y;
  ComplexityEstimate m_exact_value;   // via the induced predicate
  std::optional<int64_t> gap;         // m_exact - bound when both finite
  bool audit_pass = false;            // m_exact <= bound + c_dsel
  int c_dsel = 0;
};

TwoPartReport two_part_bound(const Instance& x, const FeatureSystem& fs,
                             const RealizerEnumeration& en, SearchCaps caps,
                             uint64_t index_cap);

// --- conditional lower bound audit ----------------------------------------------

struct CondLbReport {
  ComplexityEstimate khat_y_given_x;  // on the conditional machine
  ComplexityEstimate fiber_min;       // min K-hat(r) over the fiber
  bool complete = false;              // both sides finite within caps
  int64_t slack = 0;                  // fiber_min - khat(y|x)
  bool pass = false;                  // fiber_min >= khat(y|x) - c_cond
  int c_cond = 0;
};

CondLbReport conditional_lb_audit(const Instance& x, uint32_t y, const FeatureSystem& fs,
                                  SearchCaps caps);

// --- finite ambiguity -------------------------------------------------------------

struct FiniteAmbiguityRow {
  std::string instance_id;
  bool covered = false;      // every feasible y realized by some prototype
  bool excluded = false;     // empty feasible set at x
  std::optional<uint64_t> m_value;
  std::optional<uint64_t> min_khat_y;
  std::optional<int64_t> diff;  // m - min_y K(y)
};

struct FiniteAmbiguityReport {
  std::vector<FiniteAmbiguityRow> rows;
  bool coverage_ok = false;
  int64_t observed_c_fa = 0;  // max |diff|
  bool pass = false;          // coverage_ok and observed <= c_fa
  int c_fa = 0;
};

FiniteAmbiguityReport finite_ambiguity_check(const std::vector<Instance>& corpus,
                                             const FeatureSystem& fs,
                                             const PrototypeTable& prototypes, SearchCaps caps,
                                             uint64_t index_cap);

// --- fiber genericity ---------------------------------------------------------------

struct GenericityReport {
  std::optional<uint64_t> index;       // i_y^pi(x)
  std::optional<uint64_t> threshold;   // K(y) + ceil(log i) - c, when defined
  uint64_t outlier_count = 0;          // fiber members with K-hat <= threshold
  uint64_t allowed = 0;                // floor(i^-alpha), literally 1 iff i == 1
  bool generic = false;
  bool complete = false;
};

// Counts compressed fiber outliers against the literal reading of the
// genericity bound (count <= floor(i^-alpha); zero for i >= 2). The audit is
// complete because any r with K-hat(r) <= threshold appears as the output of
// a program of length <= threshold <= length cap.
GenericityReport fiber_genericity_audit(const Instance& x, uint32_t y, const FeatureSystem& fs,
                                        const RealizerEnumeration& en, SearchCaps caps,
                                        uint64_t index_cap, int c, double alpha);

// --- enumeration distortion ------------------------------------------------------------

struct DistortionPair {
  std::string instance_id;
  uint32_t y = 0;
  std::optional<uint64_t> index_a;
  std::optional<uint64_t> index_b;
  bool excluded = false;
};

struct DistortionReport {
  std::vector<DistortionPair> pairs;
  Rat distortion_D = 1;       // max of index ratios over included pairs
  uint64_t ceil_log2_D = 0;
  int64_t max_bound_diff = 0; // max |two-part bound under pi' - under pi|
  bool bound_check = false;   // max diff <= ceil(log2 D) + c_en
  int c_en = 0;
  size_t excluded_count = 0;
};

DistortionReport enumeration_distortion(const RealizerEnumeration& en_a,
                                        const RealizerEnumeration& en_b,
                                        const std::vector<std::pair<Instance, uint32_t>>& pairs,
                                        const FeatureSystem& fs, SearchCaps caps,
                                        uint64_t index_cap);

}  // namespace naqkit
