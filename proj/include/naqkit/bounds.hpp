#pragma once
// Closed-form converses and combinatorial lower bounds: Fano/rate-distortion,
// entropy utilities, the identity family with its pigeonhole certificate,
// separated variant panels, and the selection-success model.

#include "naqkit/complexity.hpp"
#include "naqkit/descsel.hpp"
#include "naqkit/executor.hpp"
#include "naqkit/naq.hpp"
#include "naqkit/rational.hpp"
#include "naqkit/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace naqkit {

struct DiscreteDistribution {
  std::vector<std::pair<std::string, double>> atoms;

  size_t support_size() const { return atoms.size(); }
  void validate() const;  // nonnegative, sums to 1 within 1e-12
};

// Shannon entropy, base 2.
double entropy(const DiscreteDistribution& d);
// h(eps) with h(0) = h(1) = 0 by continuity.
double binary_entropy(double eps);

// max(0, H - h(eps) - eps log2(support-1) - kraft_slack). Entropy and code
// lengths are base 2 throughout; kraft_slack defaults to the +1 of
// Kraft-McMillan.
double fano_lower_bound(double H_bits, double eps, uint64_t support,
                        double kraft_slack = 1.0);

// --- identity family ------------------------------------------------------------

struct PigeonholeCertificate {
  uint64_t s1 = 0;
  uint64_t s2 = 0;
  BitString shared_advice;       // canonical assignment value for both ids
  uint64_t short_advice_count = 0;  // # advice strings of length < n
  uint64_t family_size = 0;         // 2^n

  // Independent check: recompute the canonical assignment for both ids.
  bool verify() const;
};

struct IdentityFamilyReport {
  unsigned n = 0;
  std::string executor_id;
  std::vector<uint64_t> burdens;  // index = identifier value s
  uint64_t sup_burden = 0;
  int c_id = 0;
  bool bound_pass = false;  // sup >= n - c_id
  size_t unresolved = 0;

  PigeonholeCertificate certificate;
  bool certificate_valid = false;

  // NAQ view: the top mid-rank quantile is occupied by a max-burden instance.
  Rat top_naq;
  uint64_t top_burden = 0;
  bool naq_view_pass = false;
};

// Prop-7.1 family: 2^n instances with pairwise disjoint singleton feasible
// sets; computes every burden exhaustively and the pure counting certificate.
IdentityFamilyReport identity_family_bound(unsigned n, const Executor& executor,
                                           size_t max_len);

// --- variant panels ---------------------------------------------------------------

struct PanelMember {
  Instance x;
  std::vector<Response> feasible;  // explicit finite feasible set
};

struct PanelReport {
  size_t size = 0;
  uint64_t delta = 0;  // max over responses of #members it serves
  bool precondition_ok = false;
  std::vector<std::optional<uint64_t>> m_values;
  std::optional<uint64_t> max_m;
  uint64_t threshold_bits = 0;  // ceil(log2 |S|)
  int c_vp = 0;
  bool pass = false;
  size_t unresolved = 0;
};

PanelReport variant_panel_bound(const std::vector<PanelMember>& members, SearchCaps caps);

// --- germinal-center selection model ------------------------------------------------

// Pr(success | n candidates) = 1 - (1-p)^n; p in (0,1].
double gc_success(double p, uint64_t n);
// Least n with the (1/p) ln(1/eps) bound; natural log, as the bound is derived.
uint64_t gc_required(double p, double eps);

struct SelectionModel {
  double p = 0.5;
  enum class NKind { kFixed, kPoisson } n_kind = NKind::kFixed;
  double n_param = 1;  // fixed count or Poisson mean
  double epsilon = 0.05;
};

struct GcSimReport {
  uint64_t trials = 0;
  uint64_t seed = 0;
  std::string rng_name;
  double empirical = 0;
  double closed_form = 0;
  double sigma = 0;  // binomial sd of the closed form at `trials`
  double ci_low = 0, ci_high = 0;
  bool within_3sigma = false;
  double mean_candidates = 0;
};

GcSimReport gc_simulate(const SelectionModel& model, uint64_t trials, uint64_t seed);

// --- index vs success probability ----------------------------------------------------

struct GcIndexReport {
  std::optional<uint64_t> index;
  uint64_t ceil_log_index = 0;
  Rat p_mass;  // truncated, renormalized semimeasure mass of the fiber
  uint64_t ceil_log_inv_p = 0;
  int64_t gap = 0;
  bool complete = false;
};

// Compares ceil(log i_y(x)) with ceil(log 1/p_y(x)) where p is the truncated
// universal-semimeasure mass sum 2^-K(r) over the fiber, renormalized over
// all outputs within caps. Empirical-constant report, not a gate.
GcIndexReport gc_index_vs_p(const Instance& x, uint32_t y, const FeatureSystem& fs,
                            SearchCaps caps);

}  // namespace naqkit
