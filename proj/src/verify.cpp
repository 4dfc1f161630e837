#include "naqkit/verify.hpp"

#include "naqkit/bounds.hpp"
#include "naqkit/descsel.hpp"
#include "naqkit/executor.hpp"
#include "naqkit/naq.hpp"
#include "naqkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace naqkit {

namespace {

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return std::string(buf);
}

CheckResult check(const std::string& id, bool pass, const std::string& detail) {
  return CheckResult{id, pass, detail};
}

// --- identity ------------------------------------------------------------------

SuiteResult suite_identity(const VerifyOptions& opt) {
  SuiteResult suite{"identity", {}};
  auto corpus = load_identity_corpus(opt.fixtures_dir + "/identity_corpus.jsonl");
  suite.checks.push_back(check("identity.corpus_size", corpus.size() >= 20,
                               fmt("%zu instances", corpus.size())));

  GapReport report = realizer_identity_audit(corpus, opt.caps, opt.burden_max_len);
  suite.checks.push_back(
      check("identity.all_resolved", report.excluded == 0,
            fmt("%zu excluded of %zu", report.excluded, report.rows.size())));
  suite.checks.push_back(check(
      "identity.max_gap_within_a_plus_b",
      report.pass,
      fmt("max |gap| = %lld, a + b = %d", static_cast<long long>(report.max_abs_gap),
          report.a + report.b)));

  // Upper direction alone: burden <= m + a on every instance.
  bool upper = true;
  for (const GapRow& row : report.rows)
    if (row.resolved && row.gap > report.a) upper = false;
  suite.checks.push_back(check("identity.upper_direction", upper,
                               fmt("burden <= m + %d on all rows", report.a)));
  return suite;
}

// --- levin ---------------------------------------------------------------------

SuiteResult suite_levin(const VerifyOptions&) {
  SuiteResult suite{"levin", {}};

  // Formula spot checks from the truncation lemma.
  suite.checks.push_back(check("levin.theta_formula", levin_cutoff(10, 4) == 63,
                               "Theta(B=10,|w|=4) = 63"));
  LevinObjective keep{4, 63}, discard{4, 64};
  suite.checks.push_back(check("levin.keep_boundary",
                               keep.antilog() <= pow2(10) && discard.antilog() > pow2(10),
                               "objective boundary at tau = 63/64"));

  // Exhaustive bidirectional cutoff check over the universal executor's
  // domain, |w| <= 12, B in 8..14. tau is exact (the executor is total).
  UniversalExecutor univ;
  uint64_t checked = 0, failures = 0;
  for (uint64_t B = 8; B <= 14; ++B) {
    univ.for_each_advice(12, [&](const BitString& w) {
      if (w.size() > B) return true;
      uint64_t theta = levin_cutoff(B, w.size());
      TimedResult full = univ.timed_eval(w, UINT64_MAX);  // total: always halts
      uint64_t tau = full.steps;
      bool keep_side = tau <= theta;
      bool obj_within = pow2(w.size()) * (BigInt(tau) + 1) <= pow2(B);
      if (keep_side != obj_within) ++failures;
      TimedResult cut = univ.timed_eval(w, theta);
      if (cut.halted != keep_side) ++failures;
      if (cut.halted && (cut.steps != tau || cut.output != full.output)) ++failures;
      ++checked;
      return true;
    });
  }
  suite.checks.push_back(check("levin.cutoff_biconditional", failures == 0,
                               fmt("%llu (w,B) pairs, %llu exceptions",
                                   static_cast<unsigned long long>(checked),
                                   static_cast<unsigned long long>(failures))));
  return suite;
}

// --- descsel -------------------------------------------------------------------

FeatureSystem indicator_system(const std::string& target) {
  Json spec;
  spec["id"] = "indicator:" + target;
  spec["phi"] = {{"kind", "indicator"}, {"target", target}};
  spec["circuit"] = {{"kind", "equals"}, {"y", 1}};
  return feature_system_from_json(spec);
}

SuiteResult suite_descsel(const VerifyOptions& opt) {
  SuiteResult suite{"descsel", {}};
  const uint64_t index_cap = 1 << 17;
  auto en = length_lex_enumeration();
  Instance x0{"d0", "0"};

  // Two-part bound audit across the fixture systems.
  std::vector<FeatureSystem> systems;
  {
    Json spec;
    spec["id"] = "first_bit_one";
    spec["phi"] = {{"kind", "first_bit"}};
    spec["circuit"] = {{"kind", "equals"}, {"y", 1}};
    systems.push_back(feature_system_from_json(spec));
  }
  {
    Json spec;
    spec["id"] = "odd_parity";
    spec["phi"] = {{"kind", "parity"}};
    spec["circuit"] = {{"kind", "equals"}, {"y", 1}};
    systems.push_back(feature_system_from_json(spec));
  }
  systems.push_back(indicator_system("101"));
  systems.push_back(indicator_system("0000"));
  {
    Json spec;
    spec["id"] = "len_mod4_in_12";
    spec["phi"] = {{"kind", "length_mod"}, {"bits", 2}};
    spec["circuit"] = {{"kind", "in"}, {"ys", Json::array({1, 2})}};
    systems.push_back(feature_system_from_json(spec));
  }

  bool all_audit = true;
  int64_t worst_gap = 0;
  for (const FeatureSystem& fs : systems) {
    TwoPartReport rep = two_part_bound(x0, fs, en, opt.caps, index_cap);
    if (!rep.bound || !rep.m_exact_value.finite() || !rep.audit_pass) all_audit = false;
    if (rep.gap) worst_gap = std::max(worst_gap, *rep.gap);
  }
  suite.checks.push_back(check("descsel.two_part_audit", all_audit,
                               fmt("worst m - bound = %lld <= c_dsel = %d",
                                   static_cast<long long>(worst_gap), constants().c_dsel)));

  // Finite ambiguity: prototype-indexed features collapse to description cost.
  {
    Json spec;
    spec["id"] = "proto2";
    spec["phi"] = {{"kind", "in_set"}, {"targets", Json::array({"00", "000"})}};
    spec["circuit"] = {{"kind", "equals"}, {"y", 1}};
    FeatureSystem fs = feature_system_from_json(spec);
    PrototypeTable protos;
    protos.by_feature[1] = {BitString::from_text("00"), BitString::from_text("000")};
    FiniteAmbiguityReport rep =
        finite_ambiguity_check({x0, Instance{"d1", "1"}}, fs, protos, opt.caps, index_cap);
    suite.checks.push_back(check("descsel.finite_ambiguity", rep.pass,
                                 fmt("coverage %d, observed c_fa = %lld <= %d",
                                     rep.coverage_ok ? 1 : 0,
                                     static_cast<long long>(rep.observed_c_fa), rep.c_fa)));
  }

  // Fiber genericity: a planted compressed realizer deep in the enumeration
  // is flagged; the natural fixtures stay generic and tight.
  {
    Json spec;
    spec["id"] = "fiber_pair";
    spec["phi"] = {{"kind", "in_set"}, {"targets", Json::array({"0000", "1"})}};
    spec["circuit"] = {{"kind", "equals"}, {"y", 1}};
    FeatureSystem fs = feature_system_from_json(spec);
    auto planted = planted_enumeration(BitString::from_text("1"), 100);
    GenericityReport flagged =
        fiber_genericity_audit(x0, 1, fs, planted, opt.caps, index_cap, 2, 1.0);
    suite.checks.push_back(check("descsel.planted_outlier_flagged",
                                 flagged.complete && !flagged.generic,
                                 fmt("outliers = %llu at threshold %llu",
                                     static_cast<unsigned long long>(flagged.outlier_count),
                                     static_cast<unsigned long long>(
                                         flagged.threshold.value_or(0)))));

    GenericityReport generic =
        fiber_genericity_audit(x0, 1, indicator_system("101"), en, opt.caps, index_cap, 2, 1.0);
    suite.checks.push_back(check("descsel.natural_fixture_generic",
                                 generic.complete && generic.generic,
                                 fmt("outliers = %llu",
                                     static_cast<unsigned long long>(generic.outlier_count))));
  }

  // Tightness on the all-generic sub-corpus: |m - bound| <= c_tight.
  {
    bool tight = true;
    int64_t worst = 0;
    for (const FeatureSystem& fs : systems) {
      GenericityReport g;
      bool all_generic = true;
      for (uint32_t y : fs.feasible_ys()) {
        g = fiber_genericity_audit(x0, y, fs, en, opt.caps, index_cap, 2, 1.0);
        if (!g.complete || !g.generic) all_generic = false;
      }
      if (!all_generic) continue;
      TwoPartReport rep = two_part_bound(x0, fs, en, opt.caps, index_cap);
      if (!rep.gap) {
        tight = false;
        continue;
      }
      worst = std::max(worst, std::abs(*rep.gap));
    }
    tight = tight && worst <= constants().c_tight;
    suite.checks.push_back(check("descsel.tightness_under_genericity", tight,
                                 fmt("worst |m - bound| = %lld <= c_tight = %d",
                                     static_cast<long long>(worst), constants().c_tight)));
  }

  // Enumeration distortion for the constructed alternates.
  {
    FeatureSystem fs = indicator_system("101");
    std::vector<std::pair<Instance, uint32_t>> pairs = {{x0, 1u}};
    DistortionReport same =
        enumeration_distortion(en, length_lex_enumeration(), pairs, fs, opt.caps, index_cap);
    suite.checks.push_back(check("descsel.distortion_identity",
                                 same.distortion_D == 1 && same.max_bound_diff == 0,
                                 "pi' = pi gives D = 1, diff 0"));
    DistortionReport rev =
        enumeration_distortion(en, block_reversed_enumeration(), pairs, fs, opt.caps, index_cap);
    suite.checks.push_back(check(
        "descsel.distortion_block_reversed", rev.distortion_D < 2 && rev.bound_check,
        fmt("D = %.4f, max diff = %lld <= ceil(log D) + c_en = %llu", to_double(rev.distortion_D),
            static_cast<long long>(rev.max_bound_diff),
            static_cast<unsigned long long>(rev.ceil_log2_D + rev.c_en))));
    DistortionReport swap =
        enumeration_distortion(en, adjacent_swap_enumeration(), pairs, fs, opt.caps, index_cap);
    suite.checks.push_back(check("descsel.distortion_adjacent_swap",
                                 swap.distortion_D <= 2 && swap.bound_check,
                                 fmt("D = %.4f", to_double(swap.distortion_D))));
  }

  // Conditional lower bound on small fixtures.
  {
    Json spec;
    spec["id"] = "match_first";
    spec["phi"] = {{"kind", "matches_x_first"}};
    spec["circuit"] = {{"kind", "equals"}, {"y", 1}};
    FeatureSystem fs = feature_system_from_json(spec);
    SearchCaps cond_caps{24, opt.caps.step_budget};
    CondLbReport rep = conditional_lb_audit(Instance{"c1", "1"}, 1, fs, cond_caps);
    suite.checks.push_back(check("descsel.conditional_lb", rep.complete && rep.pass,
                                 fmt("fiber min %llu vs K(y|x) %llu, slack %lld",
                                     static_cast<unsigned long long>(rep.fiber_min.value),
                                     static_cast<unsigned long long>(rep.khat_y_given_x.value),
                                     static_cast<long long>(rep.slack))));

    // Cheap member under an expensive label: the translation constant's
    // tight case (fiber min 1 vs conditional description cost 8).
    Json eps_spec;
    eps_spec["id"] = "eps_fiber";
    eps_spec["phi"] = {{"kind", "in_set"}, {"targets", Json::array({""})}};
    eps_spec["circuit"] = {{"kind", "equals"}, {"y", 1}};
    CondLbReport tight_rep =
        conditional_lb_audit(x0, 1, feature_system_from_json(eps_spec), cond_caps);
    suite.checks.push_back(check("descsel.conditional_lb_tight",
                                 tight_rep.complete && tight_rep.pass,
                                 fmt("slack %lld >= -c_cond = %d",
                                     static_cast<long long>(tight_rep.slack),
                                     -tight_rep.c_cond)));
  }
  return suite;
}

// --- stability -----------------------------------------------------------------

SuiteResult suite_stability(const VerifyOptions& opt) {
  SuiteResult suite{"stability", {}};
  SplitMix64 root(opt.seed);
  size_t trials = 1000;
  size_t violations = 0;

  for (size_t t = 0; t < trials; ++t) {
    SplitMix64 rng = root.split(t);
    size_t n_prime = 1 + rng.next_u64() % 40;
    Pool T, Tp;
    for (size_t i = 0; i < n_prime; ++i) {
      uint64_t v = rng.next_u64() % 31;
      PoolEntry e{"p" + std::to_string(i), PoolStatus::kFinite, ExactBits::from_int_bits(v),
                  "exact_bounded"};
      Tp.entries.push_back(e);
      if (T.entries.empty() || rng.next_bernoulli(0.6)) T.entries.push_back(e);
    }
    std::vector<ExactBits> grid;
    for (uint64_t z = 0; z <= 31; ++z) grid.push_back(ExactBits::from_int_bits(z));
    // Off-atom grid points: antilog scaled by 3/2 lands strictly between bits.
    for (uint64_t z = 0; z <= 30; z += 3)
      grid.push_back(ExactBits::from_antilog(Rat(pow2(z)) * Rat(3, 2)));
    StabilityReport rep = pool_stability_check(T, Tp, grid);
    if (!rep.pass) ++violations;
  }
  suite.checks.push_back(check("stability.randomized_nested_pools", violations == 0,
                               fmt("%zu trials, %zu violations", trials, violations)));

  // T = T' makes both bounds tight at atoms of T.
  Pool T;
  for (uint64_t v : {3, 5, 5, 8})
    T.entries.push_back(
        PoolEntry{"e" + std::to_string(T.entries.size()), PoolStatus::kFinite,
                  ExactBits::from_int_bits(v), "exact_bounded"});
  std::vector<ExactBits> grid = {ExactBits::from_int_bits(3), ExactBits::from_int_bits(5),
                                 ExactBits::from_int_bits(8)};
  StabilityReport rep = pool_stability_check(T, T, grid);
  suite.checks.push_back(check("stability.equal_pools_tight",
                               rep.pass && rep.worst_lower_slack == 0 &&
                                   rep.worst_upper_slack == 0,
                               "equal pools: both inequalities are equalities"));
  return suite;
}

// --- pigeonhole ------------------------------------------------------------------

SuiteResult suite_pigeonhole(const VerifyOptions&) {
  SuiteResult suite{"pigeonhole", {}};
  ReferenceExecutor ref;
  UniversalExecutor univ;
  for (unsigned n : {2u, 4u, 8u}) {
    IdentityFamilyReport rep = identity_family_bound(n, ref, 18);
    suite.checks.push_back(check(
        fmt("pigeonhole.ref_n%u", n), rep.bound_pass && rep.certificate_valid,
        fmt("sup burden %llu >= %u - %d; certificate ids %llu/%llu",
            static_cast<unsigned long long>(rep.sup_burden), n, rep.c_id,
            static_cast<unsigned long long>(rep.certificate.s1),
            static_cast<unsigned long long>(rep.certificate.s2))));
    suite.checks.push_back(check(fmt("pigeonhole.naq_view_n%u", n), rep.naq_view_pass,
                                 fmt("top NAQ = %s at burden %llu",
                                     naqkit::to_string(rep.top_naq).c_str(),
                                     static_cast<unsigned long long>(rep.top_burden))));
  }
  IdentityFamilyReport univ_rep = identity_family_bound(4, univ, 20);
  suite.checks.push_back(check("pigeonhole.universal_n4",
                               univ_rep.bound_pass && univ_rep.certificate_valid,
                               fmt("sup burden %llu",
                                   static_cast<unsigned long long>(univ_rep.sup_burden))));
  return suite;
}

// --- panel -----------------------------------------------------------------------

SuiteResult suite_panel(const VerifyOptions& opt) {
  SuiteResult suite{"panel", {}};
  Json spec = Json::parse(read_text_file(opt.fixtures_dir + "/panels.json"));
  auto panels = panels_from_json(spec);
  for (const auto& members : panels) {
    PanelReport rep = variant_panel_bound(members, opt.caps);
    std::string id = fmt("panel.size%zu", members.size());
    if (!rep.precondition_ok) {
      // The overlapping fixture must surface the violated precondition.
      suite.checks.push_back(check(id + ".overlap_surfaced", rep.delta > 1,
                                   fmt("Delta(S) = %llu",
                                       static_cast<unsigned long long>(rep.delta))));
      continue;
    }
    suite.checks.push_back(
        check(id, rep.pass,
              fmt("max M = %llu >= ceil(log2 %zu) - %d",
                  static_cast<unsigned long long>(rep.max_m.value_or(0)), rep.size, rep.c_vp)));
  }
  return suite;
}

// --- gc --------------------------------------------------------------------------

SuiteResult suite_gc(const VerifyOptions& opt) {
  SuiteResult suite{"gc", {}};
  suite.checks.push_back(
      check("gc.success_half", std::abs(gc_success(0.5, 1) - 0.5) < 1e-15, "p=0.5, n=1"));
  suite.checks.push_back(check("gc.success_formula",
                               std::abs(gc_success(0.01, 100) - 0.6339676587) < 1e-9,
                               "1 - 0.99^100"));
  suite.checks.push_back(
      check("gc.required_300", gc_required(0.01, 0.05) == 300, "ceil(100 ln 20) = 300"));

  bool all_within = true;
  std::ostringstream detail;
  for (double p : {0.5, 0.1, 0.01})
    for (uint64_t n : {uint64_t(1), uint64_t(10), uint64_t(100)}) {
      SelectionModel model;
      model.p = p;
      model.n_kind = SelectionModel::NKind::kFixed;
      model.n_param = static_cast<double>(n);
      GcSimReport rep = gc_simulate(model, 10000, opt.seed);
      if (!rep.within_3sigma) {
        all_within = false;
        detail << " (p=" << p << ",n=" << n << " off)";
      }
    }
  suite.checks.push_back(check("gc.simulation_3sigma", all_within,
                               "9 (p,n) pairs at 10^4 trials" + detail.str()));

  // Monotonicity in both arguments.
  bool mono = true;
  for (double p : {0.01, 0.1, 0.5})
    for (uint64_t n : {uint64_t(1), uint64_t(10)})
      if (!(gc_success(p, n + 1) > gc_success(p, n))) mono = false;
  if (!(gc_success(0.2, 5) > gc_success(0.1, 5))) mono = false;
  suite.checks.push_back(check("gc.monotone", mono, "increasing in p and n"));
  return suite;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"identity", "levin",      "descsel", "stability",
                                                 "pigeonhole", "panel", "gc"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  if (name == "identity") return suite_identity(options);
  if (name == "levin") return suite_levin(options);
  if (name == "descsel") return suite_descsel(options);
  if (name == "stability") return suite_stability(options);
  if (name == "pigeonhole") return suite_pigeonhole(options);
  if (name == "panel") return suite_panel(options);
  if (name == "gc") return suite_gc(options);
  throw DataError("unknown verify suite: " + name);
}

Json suite_to_json(const SuiteResult& result) {
  Json j;
  j["suite"] = result.name;
  j["pass"] = result.pass();
  Json checks = Json::array();
  for (const auto& c : result.checks) {
    Json cj;
    cj["id"] = c.id;
    cj["pass"] = c.pass;
    cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

std::vector<std::pair<Instance, ValidityPredicate>> load_identity_corpus(
    const std::string& path) {
  std::vector<std::pair<Instance, ValidityPredicate>> corpus;
  for (const CorpusRecord& rec : read_corpus_jsonl(path)) {
    if (rec.predicate_spec.is_null())
      throw DataError("identity corpus: record " + rec.x.id + " lacks a predicate");
    corpus.emplace_back(rec.x, predicate_from_json(rec.predicate_spec));
  }
  return corpus;
}

}  // namespace naqkit
