#include "naqkit/descsel.hpp"

#include "naqkit/alphabet.hpp"
#include "naqkit/bitcode.hpp"

#include <algorithm>
#include <cmath>

namespace naqkit {

ValidityPredicate predicate_from_features(const FeatureSystem& fs) {
  ValidityPredicate V;
  V.id = "features:" + fs.id;
  V.mode = ValidityPredicate::Mode::kDecidable;
  auto phi = fs.phi;
  auto circuit = fs.circuit;
  V.decide = [phi, circuit](const Instance& x, const Response& r) { return circuit(phi(x, r)); };
  return V;
}

RealizerEnumeration length_lex_enumeration() {
  RealizerEnumeration en;
  en.id = "length_lex";
  en.pi = [](uint64_t i) {
    if (i == 0) throw std::invalid_argument("pi: 1-based index");
    return lenlex_unrank(BigInt(i) - 1);
  };
  en.index_of = [](const Response& r) {
    return (lenlex_rank(r) + 1).convert_to<uint64_t>();
  };
  return en;
}

namespace {

// 1-based length-lex block of strings of one length: [2^L, 2^(L+1) - 1].
std::pair<uint64_t, uint64_t> lenlex_block(uint64_t i) {
  uint64_t lo = 1;
  while (2 * lo <= i) lo *= 2;
  return {lo, 2 * lo - 1};
}

}  // namespace

RealizerEnumeration block_reversed_enumeration() {
  RealizerEnumeration en;
  en.id = "block_reversed";
  auto mirror = [](uint64_t i) {
    auto [lo, hi] = lenlex_block(i);
    return lo + hi - i;
  };
  en.pi = [mirror](uint64_t i) {
    if (i == 0) throw std::invalid_argument("pi: 1-based index");
    return lenlex_unrank(BigInt(mirror(i)) - 1);
  };
  en.index_of = [mirror](const Response& r) {
    return mirror((lenlex_rank(r) + 1).convert_to<uint64_t>());
  };
  return en;
}

RealizerEnumeration adjacent_swap_enumeration() {
  RealizerEnumeration en;
  en.id = "adjacent_swap";
  auto sigma = [](uint64_t i) -> uint64_t {
    if (i == 1) return 1;
    return (i % 2 == 0) ? i + 1 : i - 1;
  };
  en.pi = [sigma](uint64_t i) {
    if (i == 0) throw std::invalid_argument("pi: 1-based index");
    return lenlex_unrank(BigInt(sigma(i)) - 1);
  };
  en.index_of = [sigma](const Response& r) {
    return sigma((lenlex_rank(r) + 1).convert_to<uint64_t>());
  };
  return en;
}

RealizerEnumeration planted_enumeration(const Response& planted, uint64_t at_index) {
  if (at_index == 0) throw std::invalid_argument("planted_enumeration: 1-based index");
  RealizerEnumeration en;
  en.id = "planted@" + std::to_string(at_index);
  uint64_t natural = (lenlex_rank(planted) + 1).convert_to<uint64_t>();
  auto swap_idx = [natural, at_index](uint64_t i) -> uint64_t {
    if (i == at_index) return natural;
    if (i == natural) return at_index;
    return i;
  };
  en.pi = [swap_idx](uint64_t i) {
    if (i == 0) throw std::invalid_argument("pi: 1-based index");
    return lenlex_unrank(BigInt(swap_idx(i)) - 1);
  };
  en.index_of = [swap_idx](const Response& r) {
    return swap_idx((lenlex_rank(r) + 1).convert_to<uint64_t>());
  };
  return en;
}

std::optional<uint64_t> selection_index(const Instance& x, uint32_t y, const FeatureSystem& fs,
                                        const RealizerEnumeration& en, uint64_t cap) {
  for (uint64_t i = 1; i <= cap; ++i)
    if (fs.phi(x, en.pi(i)) == y) return i;
  return std::nullopt;
}

TwoPartReport two_part_bound(const Instance& x, const FeatureSystem& fs,
                             const RealizerEnumeration& en, SearchCaps caps,
                             uint64_t index_cap) {
  TwoPartReport report;
  report.c_dsel = constants().c_dsel;
  auto table = program_table(caps);

  for (uint32_t y : fs.feasible_ys()) {
    TwoPartRow row;
    row.y = y;
    row.khat_y = khat_exact(*table, fs.y_bits(y));
    row.index = selection_index(x, y, fs, en, index_cap);
    if (!row.khat_y.finite() || !row.index) {
      row.excluded = true;
    } else {
      row.term_bits = row.khat_y.value + ceil_log2_u64(*row.index);
      if (!report.bound || *row.term_bits < *report.bound) {
        report.bound = row.term_bits;
        report.argmin_y = y;
      }
    }
    report.rows.push_back(std::move(row));
  }

  ValidityPredicate V = predicate_from_features(fs);
  report.m_exact_value = m_exact(*table, x, V).estimate;
  if (report.bound && report.m_exact_value.finite()) {
    report.gap = static_cast<int64_t>(report.m_exact_value.value) -
                 static_cast<int64_t>(*report.bound);
    report.audit_pass = *report.gap <= report.c_dsel;
  }
  return report;
}

CondLbReport conditional_lb_audit(const Instance& x, uint32_t y, const FeatureSystem& fs,
                                  SearchCaps caps) {
  CondLbReport report;
  report.c_cond = constants().c_cond;

  AlphabetCodec codec(2, 2);
  BitString condition = codec.encode_bits(x.text);
  report.khat_y_given_x = khat_exact_conditional(fs.y_bits(y), condition, caps);

  ValidityPredicate fiber;
  fiber.id = "fiber";
  fiber.mode = ValidityPredicate::Mode::kDecidable;
  auto phi = fs.phi;
  fiber.decide = [phi, y](const Instance& xi, const Response& r) { return phi(xi, r) == y; };
  report.fiber_min = m_exact(x, fiber, caps).estimate;

  report.complete = report.khat_y_given_x.finite() && report.fiber_min.finite();
  if (report.complete) {
    report.slack = static_cast<int64_t>(report.fiber_min.value) -
                   static_cast<int64_t>(report.khat_y_given_x.value);
    report.pass = report.slack >= -report.c_cond;
  }
  return report;
}

FiniteAmbiguityReport finite_ambiguity_check(const std::vector<Instance>& corpus,
                                             const FeatureSystem& fs,
                                             const PrototypeTable& prototypes, SearchCaps caps,
                                             uint64_t index_cap) {
  FiniteAmbiguityReport report;
  report.c_fa = constants().c_fa;
  report.coverage_ok = true;
  auto table = program_table(caps);
  auto en = length_lex_enumeration();
  ValidityPredicate V = predicate_from_features(fs);

  for (const Instance& x : corpus) {
    FiniteAmbiguityRow row;
    row.instance_id = x.id;

    // Feasible y's at x (fiber nonempty within the enumeration cap).
    std::vector<uint32_t> feasible;
    for (uint32_t y : fs.feasible_ys())
      if (selection_index(x, y, fs, en, index_cap)) feasible.push_back(y);
    if (feasible.empty()) {
      row.excluded = true;
      report.rows.push_back(std::move(row));
      continue;
    }

    row.covered = true;
    std::optional<uint64_t> min_ky;
    for (uint32_t y : feasible) {
      auto it = prototypes.by_feature.find(y);
      bool realized = false;
      if (it != prototypes.by_feature.end())
        for (const Response& proto : it->second)
          if (fs.phi(x, proto) == y) {
            realized = true;
            break;
          }
      if (!realized) {
        row.covered = false;
        report.coverage_ok = false;
      }
      ComplexityEstimate ky = khat_exact(*table, fs.y_bits(y));
      if (ky.finite() && (!min_ky || ky.value < *min_ky)) min_ky = ky.value;
    }

    MExactResult m = m_exact(*table, x, V);
    if (m.estimate.finite()) row.m_value = m.estimate.value;
    row.min_khat_y = min_ky;
    if (row.m_value && row.min_khat_y) {
      row.diff = static_cast<int64_t>(*row.m_value) - static_cast<int64_t>(*row.min_khat_y);
      report.observed_c_fa = std::max(report.observed_c_fa, std::abs(*row.diff));
    }
    report.rows.push_back(std::move(row));
  }
  report.pass = report.coverage_ok && report.observed_c_fa <= report.c_fa;
  return report;
}

GenericityReport fiber_genericity_audit(const Instance& x, uint32_t y, const FeatureSystem& fs,
                                        const RealizerEnumeration& en, SearchCaps caps,
                                        uint64_t index_cap, int c, double alpha) {
  if (alpha <= 0) throw std::invalid_argument("fiber_genericity_audit: alpha > 0");
  GenericityReport report;
  auto table = program_table(caps);
  report.index = selection_index(x, y, fs, en, index_cap);
  ComplexityEstimate ky = khat_exact(*table, fs.y_bits(y));
  if (!report.index || !ky.finite()) return report;

  uint64_t i = *report.index;
  int64_t thr = static_cast<int64_t>(ky.value) +
                static_cast<int64_t>(ceil_log2_u64(i)) - c;
  report.complete = true;
  report.allowed = (i == 1) ? 1 : 0;  // floor(i^-alpha) for alpha > 0
  if (thr < 0) {
    report.threshold = 0;
    report.generic = true;
    return report;
  }
  report.threshold = static_cast<uint64_t>(thr);

  // Any r with K-hat(r) <= thr is the output of some halting program of
  // length <= thr, so scanning distinct table outputs is exhaustive.
  std::unordered_map<BitString, uint64_t, BitStringHash> best_len;
  for (const auto& e : table.get()->entries()) {
    if (!e.halted || e.total_len > static_cast<uint64_t>(thr)) continue;
    auto it = best_len.find(e.output);
    if (it == best_len.end() || e.total_len < it->second) best_len[e.output] = e.total_len;
  }
  for (const auto& [r, len] : best_len)
    if (fs.phi(x, r) == y) ++report.outlier_count;

  report.generic = report.outlier_count <= report.allowed;
  return report;
}

DistortionReport enumeration_distortion(const RealizerEnumeration& en_a,
                                        const RealizerEnumeration& en_b,
                                        const std::vector<std::pair<Instance, uint32_t>>& pairs,
                                        const FeatureSystem& fs, SearchCaps caps,
                                        uint64_t index_cap) {
  DistortionReport report;
  report.c_en = constants().c_en;
  report.distortion_D = 1;

  std::vector<Instance> instances;
  for (const auto& [x, y] : pairs) {
    DistortionPair p;
    p.instance_id = x.id;
    p.y = y;
    p.index_a = selection_index(x, y, fs, en_a, index_cap);
    p.index_b = selection_index(x, y, fs, en_b, index_cap);
    if (!p.index_a || !p.index_b) {
      p.excluded = true;
      ++report.excluded_count;
    } else {
      Rat ratio_ab(*p.index_a, *p.index_b);
      Rat ratio_ba(*p.index_b, *p.index_a);
      if (ratio_ab > report.distortion_D) report.distortion_D = ratio_ab;
      if (ratio_ba > report.distortion_D) report.distortion_D = ratio_ba;
      bool seen = false;
      for (const auto& xi : instances) seen = seen || xi.id == x.id;
      if (!seen) instances.push_back(x);
    }
    report.pairs.push_back(std::move(p));
  }
  report.ceil_log2_D = ceil_log2(report.distortion_D);

  for (const Instance& x : instances) {
    TwoPartReport ra = two_part_bound(x, fs, en_a, caps, index_cap);
    TwoPartReport rb = two_part_bound(x, fs, en_b, caps, index_cap);
    if (ra.bound && rb.bound) {
      int64_t diff = std::abs(static_cast<int64_t>(*ra.bound) - static_cast<int64_t>(*rb.bound));
      report.max_bound_diff = std::max(report.max_bound_diff, diff);
    }
  }
  report.bound_check =
      report.max_bound_diff <= static_cast<int64_t>(report.ceil_log2_D) + report.c_en;
  return report;
}

}  // namespace naqkit
