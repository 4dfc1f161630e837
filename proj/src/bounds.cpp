#include "naqkit/bounds.hpp"

#include "naqkit/bitcode.hpp"
#include "naqkit/rng.hpp"

#include <algorithm>
#include <cmath>

namespace naqkit {

void DiscreteDistribution::validate() const {
  double sum = 0;
  for (const auto& [label, p] : atoms) {
    if (p < 0) throw std::invalid_argument("DiscreteDistribution: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("DiscreteDistribution: probabilities do not sum to 1");
}

double entropy(const DiscreteDistribution& d) {
  d.validate();
  double h = 0;
  for (const auto& [label, p] : d.atoms)
    if (p > 0) h -= p * std::log2(p);
  return h;
}

double binary_entropy(double eps) {
  if (eps < 0 || eps > 1) throw std::invalid_argument("binary_entropy: eps in [0,1]");
  if (eps == 0 || eps == 1) return 0;
  return -eps * std::log2(eps) - (1 - eps) * std::log2(1 - eps);
}

double fano_lower_bound(double H_bits, double eps, uint64_t support, double kraft_slack) {
  if (support < 2) throw std::invalid_argument("fano_lower_bound: support >= 2");
  if (eps < 0 || eps >= 1) throw std::invalid_argument("fano_lower_bound: eps in [0,1)");
  if (H_bits < 0 || H_bits > std::log2(static_cast<double>(support)) + 1e-9)
    throw std::invalid_argument("fano_lower_bound: H inconsistent with support");
  double v = H_bits - binary_entropy(eps) -
             eps * std::log2(static_cast<double>(support - 1)) - kraft_slack;
  return v > 0 ? v : 0;
}

// --- identity family ------------------------------------------------------------

namespace {

// x_s self-delimits s; its unique valid response is s with an "ok" flag bit.
Response identity_target(uint64_t s, unsigned n) {
  Response r = BitString::from_value(s, n);
  r.push_back(1);
  return r;
}

// Canonical forced assignment: identifier s -> shortlist[s mod M], where the
// shortlist is every advice string of length < n in length-lex order.
BitString canonical_assignment(uint64_t s, unsigned n) {
  uint64_t M = (uint64_t(1) << n) - 1;  // # bit strings shorter than n bits
  return lenlex_unrank(BigInt(s % M));
}

}  // namespace

bool PigeonholeCertificate::verify() const {
  if (s1 == s2) return false;
  if (short_advice_count >= family_size) return false;
  unsigned n = 0;
  while ((uint64_t(1) << n) < family_size) ++n;
  return canonical_assignment(s1, n) == shared_advice &&
         canonical_assignment(s2, n) == shared_advice;
}

IdentityFamilyReport identity_family_bound(unsigned n, const Executor& executor,
                                           size_t max_len) {
  if (n < 1 || n > 12) throw std::invalid_argument("identity_family_bound: n in [1,12]");
  IdentityFamilyReport report;
  report.n = n;
  report.executor_id = executor.id();
  report.c_id = constants().c_id;

  DomainSweep sweep(executor, max_len);
  uint64_t count = uint64_t(1) << n;
  for (uint64_t s = 0; s < count; ++s) {
    Instance x{"id-" + std::to_string(s), BitString::from_value(s, n).to_text()};
    Response target = identity_target(s, n);
    ValidityPredicate V;
    V.id = "identity_equals";
    V.mode = ValidityPredicate::Mode::kDecidable;
    V.decide = [target](const Instance&, const Response& r) { return r == target; };
    BurdenResult b = sweep.burden(V, x);
    if (b.status == BurdenResult::Status::kFound) {
      report.burdens.push_back(b.length);
      report.sup_burden = std::max(report.sup_burden, b.length);
    } else {
      report.burdens.push_back(UINT64_MAX);
      ++report.unresolved;
    }
  }
  report.bound_pass = report.unresolved == 0 &&
                      report.sup_burden + static_cast<uint64_t>(report.c_id) >= n;

  // Pure pigeonhole: fewer than 2^n advice strings shorter than n bits, so
  // the canonical assignment collides; ids 0 and 2^n - 1 share slot 0.
  report.certificate.family_size = count;
  report.certificate.short_advice_count = count - 1;
  report.certificate.s1 = 0;
  report.certificate.s2 = count - 1;
  report.certificate.shared_advice = canonical_assignment(0, n);
  report.certificate_valid = report.certificate.verify();

  // NAQ view over the burden pool.
  if (report.unresolved == 0 && !report.burdens.empty()) {
    Pool pool;
    for (uint64_t s = 0; s < count; ++s)
      pool.entries.push_back(PoolEntry{"id-" + std::to_string(s), PoolStatus::kFinite,
                                       ExactBits::from_int_bits(report.burdens[s]), "burden"});
    report.top_burden = report.sup_burden;
    report.top_naq = naq_midrank(ExactBits::from_int_bits(report.sup_burden), pool);
    report.naq_view_pass =
        report.top_naq >= Rat(1, 2) && report.top_burden + report.c_id >= n;
  }
  return report;
}

// --- variant panels ---------------------------------------------------------------

PanelReport variant_panel_bound(const std::vector<PanelMember>& members, SearchCaps caps) {
  PanelReport report;
  report.size = members.size();
  report.c_vp = constants().c_vp;
  if (members.empty()) throw std::invalid_argument("variant_panel_bound: empty panel");

  // Overlap Delta(S) over the union of feasible sets.
  std::unordered_map<BitString, uint64_t, BitStringHash> served;
  for (const auto& m : members) {
    std::vector<BitString> dedup = m.feasible;
    std::sort(dedup.begin(), dedup.end(), BitString::lex_less);
    dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
    for (const auto& r : dedup) ++served[r];
  }
  report.delta = 0;
  for (const auto& [r, k] : served) report.delta = std::max(report.delta, k);
  report.precondition_ok = report.delta == 1;
  if (!report.precondition_ok) return report;  // panel not separated; surfaced, not scored

  auto table = program_table(caps);
  for (const auto& m : members) {
    std::optional<uint64_t> best;
    for (const Response& r : m.feasible) {
      ComplexityEstimate k = khat_exact(*table, r);
      if (k.finite() && (!best || k.value < *best)) best = k.value;
    }
    if (!best) ++report.unresolved;
    report.m_values.push_back(best);
    if (best && (!report.max_m || *best > *report.max_m)) report.max_m = best;
  }
  report.threshold_bits = ceil_log2_u64(report.size);
  report.pass = report.unresolved == 0 && report.max_m &&
                *report.max_m + static_cast<uint64_t>(report.c_vp) >= report.threshold_bits;
  return report;
}

// --- germinal-center selection ------------------------------------------------------

double gc_success(double p, uint64_t n) {
  if (!(p > 0) || p > 1) throw std::invalid_argument("gc_success: p in (0,1]");
  return 1.0 - std::pow(1.0 - p, static_cast<double>(n));
}

uint64_t gc_required(double p, double eps) {
  if (!(p > 0) || p > 1) throw std::invalid_argument("gc_required: p in (0,1]");
  if (!(eps > 0) || eps >= 1) throw std::invalid_argument("gc_required: eps in (0,1)");
  return static_cast<uint64_t>(std::ceil(std::log(1.0 / eps) / p));
}

GcSimReport gc_simulate(const SelectionModel& model, uint64_t trials, uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("gc_simulate: trials >= 1");
  if (!(model.p > 0) || model.p > 1) throw std::invalid_argument("gc_simulate: p in (0,1]");

  GcSimReport report;
  report.trials = trials;
  report.seed = seed;
  report.rng_name = kRngName;

  SplitMix64 root(seed);
  uint64_t successes = 0;
  double total_n = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng = root.split(t);
    uint64_t n;
    if (model.n_kind == SelectionModel::NKind::kFixed) {
      n = static_cast<uint64_t>(model.n_param);
    } else {
      // Knuth's Poisson sampler; mean desk-scale small.
      double L = std::exp(-model.n_param);
      uint64_t k = 0;
      double prod = 1.0;
      do {
        ++k;
        prod *= rng.next_unit();
      } while (prod > L);
      n = k - 1;
    }
    total_n += static_cast<double>(n);
    for (uint64_t j = 0; j < n; ++j)
      if (rng.next_bernoulli(model.p)) {
        ++successes;
        break;
      }
  }
  report.empirical = static_cast<double>(successes) / static_cast<double>(trials);
  report.mean_candidates = total_n / static_cast<double>(trials);
  if (model.n_kind == SelectionModel::NKind::kFixed)
    report.closed_form = gc_success(model.p, static_cast<uint64_t>(model.n_param));
  else
    report.closed_form = 1.0 - std::exp(-model.n_param * model.p);
  report.sigma =
      std::sqrt(report.closed_form * (1.0 - report.closed_form) /
                static_cast<double>(trials));
  report.ci_low = report.empirical - 3 * report.sigma;
  report.ci_high = report.empirical + 3 * report.sigma;
  report.within_3sigma = std::abs(report.empirical - report.closed_form) <= 3 * report.sigma;
  return report;
}

GcIndexReport gc_index_vs_p(const Instance& x, uint32_t y, const FeatureSystem& fs,
                            SearchCaps caps) {
  GcIndexReport report;
  auto en = length_lex_enumeration();
  auto table = program_table(caps);

  // Truncated universal semimeasure over distinct outputs within caps.
  std::unordered_map<BitString, uint64_t, BitStringHash> best_len;
  for (const auto& e : table->entries()) {
    if (!e.halted) continue;
    auto it = best_len.find(e.output);
    if (it == best_len.end() || e.total_len < it->second) best_len[e.output] = e.total_len;
  }
  Rat total = 0, fiber = 0;
  uint64_t index_cap = 1;
  for (const auto& [r, len] : best_len) {
    Rat mass = pow2_inv(len);
    total += mass;
    if (fs.phi(x, r) == y) fiber += mass;
  }
  // Scan far enough that any fiber member the table knows about is reachable.
  index_cap = uint64_t(1) << 17;
  report.index = selection_index(x, y, fs, en, index_cap);

  if (fiber == 0 || total == 0 || !report.index) return report;  // flagged-incomplete
  report.complete = true;
  report.p_mass = fiber / total;
  report.ceil_log_index = ceil_log2_u64(*report.index);
  report.ceil_log_inv_p = ceil_log2(Rat(1) / report.p_mass);
  report.gap = static_cast<int64_t>(report.ceil_log_index) -
               static_cast<int64_t>(report.ceil_log_inv_p);
  return report;
}

}  // namespace naqkit
