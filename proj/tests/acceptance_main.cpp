// Acceptance harness: one line per criterion, nonzero exit on any failure.
// Usage: acceptance <path-to-naqkit-cli> <fixtures-dir>

#include "naqkit/bounds.hpp"
#include "naqkit/complexity.hpp"
#include "naqkit/descsel.hpp"
#include "naqkit/executor.hpp"
#include "naqkit/io.hpp"
#include "naqkit/naq.hpp"
#include "naqkit/rng.hpp"
#include "naqkit/verify.hpp"

#include "oracles.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace naqkit;

namespace {

int g_failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << " (" << name
            << "): " << detail << "\n";
  if (!pass) ++g_failures;
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// 1. Realizer identity (20-instance corpus, gap within a+b, < 2 min).
void criterion_identity(const std::string& fixtures) {
  Timer timer;
  auto corpus = load_identity_corpus(fixtures + "/identity_corpus.jsonl");
  SearchCaps caps{20, kDefaultStepBudget};
  GapReport rep = realizer_identity_audit(corpus, caps, constants().default_burden_max_len);
  double secs = timer.seconds();
  bool pass = corpus.size() >= 20 && rep.excluded == 0 && rep.pass && secs < 120.0;
  std::ostringstream d;
  d << corpus.size() << " instances, max |gap| = " << rep.max_abs_gap << " <= a + b = "
    << rep.a + rep.b << ", " << fmt_seconds(secs);
  report(1, "realizer identity", pass, d.str());
}

// 2. Exact truncation: cutoff biconditional exhaustively, and levin_value
// equals the untruncated oracle exactly (< 5 min).
void criterion_truncation() {
  Timer timer;
  UniversalExecutor univ;
  uint64_t checked = 0, exceptions = 0;
  for (uint64_t B = 8; B <= 14; ++B) {
    univ.for_each_advice(12, [&](const BitString& w) {
      if (w.size() > B) return true;
      uint64_t theta = levin_cutoff(B, w.size());
      TimedResult full = univ.timed_eval(w, UINT64_MAX);
      bool keep = full.steps <= theta;
      bool within = pow2(w.size()) * (BigInt(full.steps) + 1) <= pow2(B);
      if (keep != within) ++exceptions;
      ++checked;
      return true;
    });
  }

  Instance x{"t", "0"};
  std::vector<Json> specs = {
      Json{{"kind", "equals"}, {"target", "1"}},  Json{{"kind", "equals"}, {"target", "010"}},
      Json{{"kind", "empty"}},                    Json{{"kind", "nonempty"}},
      Json{{"kind", "parity"}, {"odd", true}},    Json{{"kind", "always_false"}},
  };
  uint64_t oracle_mismatches = 0;
  for (uint64_t B = 8; B <= 14; ++B) {
    for (const Json& spec : specs) {
      ValidityPredicate V = predicate_from_json(spec);
      std::optional<LevinObjective> best;
      univ.for_each_advice(B, [&](const BitString& w) {
        TimedResult t = univ.timed_eval(w, uint64_t(1) << B);
        if (!t.halted || V.eval_final(x, t.output) != Accept::kYes) return true;
        LevinObjective obj{w.size(), t.steps};
        if (!best || LevinObjective::compare(obj, *best) < 0) best = obj;
        return true;
      });
      LevinResult lr = levin_value(x, univ, V, B);
      bool witness_under_B = best && best->antilog() <= pow2(B);
      if (witness_under_B) {
        if (lr.status != LevinResult::Status::kFound ||
            LevinObjective::compare(lr.objective, *best) != 0)
          ++oracle_mismatches;
      } else if (lr.status == LevinResult::Status::kFound) {
        ++oracle_mismatches;
      }
    }
  }
  double secs = timer.seconds();
  bool pass = exceptions == 0 && oracle_mismatches == 0 && secs < 300.0;
  std::ostringstream d;
  d << checked << " cutoff pairs, " << exceptions << " exceptions; oracle mismatches "
    << oracle_mismatches << ", " << fmt_seconds(secs);
  report(2, "exact truncation", pass, d.str());
}

// 3. Mid-rank NAQ: hand values and 100 randomized pools, exact equality.
void criterion_naq() {
  Pool pool;
  for (uint64_t v : {3, 5, 5, 8})
    pool.entries.push_back(PoolEntry{"e" + std::to_string(pool.entries.size()),
                                     PoolStatus::kFinite, ExactBits::from_int_bits(v),
                                     "exact_bounded"});
  bool pass = naq_midrank(ExactBits::from_int_bits(5), pool) == Rat(1, 2) &&
              naq_midrank(ExactBits::from_int_bits(9), pool) == Rat(1, 1) &&
              naq_midrank(ExactBits::from_int_bits(3), pool) == Rat(1, 8);

  SplitMix64 rng(31337);
  size_t mismatches = 0;
  for (int t = 0; t < 100; ++t) {
    size_t n = 1 + rng.next_u64() % 30;
    std::vector<uint64_t> vals;
    Pool p;
    for (size_t i = 0; i < n; ++i) {
      uint64_t v = rng.next_u64() % 16;
      vals.push_back(v);
      p.entries.push_back(PoolEntry{"r" + std::to_string(i), PoolStatus::kFinite,
                                    ExactBits::from_int_bits(v), "exact_bounded"});
    }
    uint64_t q = rng.next_u64() % 17;
    if (naq_midrank(ExactBits::from_int_bits(q), p) != oracle::naq_midrank_counting(q, vals))
      ++mismatches;
  }
  pass = pass && mismatches == 0;
  std::ostringstream d;
  d << "{3,5,5,8} hand values exact; 100 randomized pools, " << mismatches << " mismatches";
  report(3, "mid-rank NAQ", pass, d.str());
}

// 4. Pool stability over 10^3 randomized nested pools, exact arithmetic.
void criterion_stability() {
  SplitMix64 root(5150);
  size_t violations = 0;
  for (size_t t = 0; t < 1000; ++t) {
    SplitMix64 rng = root.split(t);
    Pool T, Tp;
    size_t n = 1 + rng.next_u64() % 40;
    for (size_t i = 0; i < n; ++i) {
      PoolEntry e{"p" + std::to_string(i), PoolStatus::kFinite,
                  ExactBits::from_int_bits(rng.next_u64() % 32), "exact_bounded"};
      Tp.entries.push_back(e);
      if (T.entries.empty() || rng.next_bernoulli(0.55)) T.entries.push_back(e);
    }
    std::vector<ExactBits> grid;
    for (uint64_t z = 0; z <= 32; ++z) grid.push_back(ExactBits::from_int_bits(z));
    for (uint64_t z = 0; z <= 30; z += 2)
      grid.push_back(ExactBits::from_antilog(Rat(pow2(z)) * Rat(5, 4)));
    if (!pool_stability_check(T, Tp, grid).pass) ++violations;
  }
  report(4, "pool stability", violations == 0,
         "1000 randomized nested pools, " + std::to_string(violations) + " violations");
}

// 5. DKW Monte Carlo on a known 8-atom cdf.
void criterion_dkw() {
  Timer timer;
  const double probs[8] = {0.30, 0.22, 0.16, 0.12, 0.08, 0.06, 0.04, 0.02};
  double cdf[8];
  double acc = 0;
  for (int i = 0; i < 8; ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  const uint64_t n = 1000, reps = 2000;
  const double eps = 0.05;
  SplitMix64 root(8675309);
  uint64_t exceed = 0;
  for (uint64_t rep = 0; rep < reps; ++rep) {
    SplitMix64 rng = root.split(rep);
    uint64_t counts[8] = {0};
    for (uint64_t i = 0; i < n; ++i) {
      double u = rng.next_unit();
      int atom = 7;
      for (int a = 0; a < 8; ++a)
        if (u < cdf[a]) {
          atom = a;
          break;
        }
      ++counts[atom];
    }
    double sup = 0, cum = 0;
    for (int a = 0; a < 8; ++a) {
      cum += static_cast<double>(counts[a]) / static_cast<double>(n);
      sup = std::max(sup, std::abs(cum - cdf[a]));
    }
    if (sup > eps) ++exceed;
  }
  double freq = static_cast<double>(exceed) / static_cast<double>(reps);
  double bound = dkw_band(n, eps);  // 2 e^{-5} ~ 0.0135
  double sigma = std::sqrt(bound * (1 - bound) / static_cast<double>(reps));
  double secs = timer.seconds();
  bool pass = freq <= bound + 3 * sigma && secs < 60.0;
  std::ostringstream d;
  d << "Pr(sup-gap > 0.05) = " << freq << " <= " << bound << " + 3*" << sigma << ", "
    << fmt_seconds(secs);
  report(5, "DKW band", pass, d.str());
}

// 6. Two-part bound and finite-ambiguity collapse on the descsel fixtures.
void criterion_two_part() {
  SearchCaps caps{20, kDefaultStepBudget};
  const uint64_t index_cap = 1 << 17;
  Instance x{"d0", "0"};
  auto en = length_lex_enumeration();

  auto fs_of = [](const Json& j) { return feature_system_from_json(j); };
  std::vector<FeatureSystem> systems = {
      fs_of(Json{{"id", "fb"},
                 {"phi", Json{{"kind", "first_bit"}}},
                 {"circuit", Json{{"kind", "equals"}, {"y", 1}}}}),
      fs_of(Json{{"id", "par"},
                 {"phi", Json{{"kind", "parity"}}},
                 {"circuit", Json{{"kind", "equals"}, {"y", 1}}}}),
      fs_of(Json{{"id", "i101"},
                 {"phi", Json{{"kind", "indicator"}, {"target", "101"}}},
                 {"circuit", Json{{"kind", "equals"}, {"y", 1}}}}),
      fs_of(Json{{"id", "i0000"},
                 {"phi", Json{{"kind", "indicator"}, {"target", "0000"}}},
                 {"circuit", Json{{"kind", "equals"}, {"y", 1}}}}),
      fs_of(Json{{"id", "lm"},
                 {"phi", Json{{"kind", "length_mod"}, {"bits", 2}}},
                 {"circuit", Json{{"kind", "in"}, {"ys", Json::array({1, 2})}}}}),
  };
  bool all = true;
  int64_t worst = INT64_MIN;
  for (const FeatureSystem& fs : systems) {
    TwoPartReport rep = two_part_bound(x, fs, en, caps, index_cap);
    if (!rep.bound || !rep.m_exact_value.finite() || !rep.audit_pass) all = false;
    if (rep.gap) worst = std::max(worst, *rep.gap);
  }

  FeatureSystem fa = fs_of(
      Json{{"id", "protos"},
           {"phi", Json{{"kind", "in_set"}, {"targets", Json::array({"00", "000"})}}},
           {"circuit", Json{{"kind", "equals"}, {"y", 1}}}});
  PrototypeTable protos;
  protos.by_feature[1] = {BitString::from_text("00"), BitString::from_text("000")};
  FiniteAmbiguityReport farep =
      finite_ambiguity_check({x, Instance{"d1", "1"}}, fa, protos, caps, index_cap);
  bool pass = all && farep.pass;
  std::ostringstream d;
  d << "worst m - bound = " << worst << " <= c_dsel = " << constants().c_dsel
    << "; finite-ambiguity |diff| = " << farep.observed_c_fa << " <= c_fa = " << farep.c_fa;
  report(6, "two-part bound", pass, d.str());
}

// 7. Pigeonhole for n in {2,4,8} with verifiable collision certificates.
void criterion_pigeonhole() {
  ReferenceExecutor ref;
  bool pass = true;
  std::ostringstream d;
  for (unsigned n : {2u, 4u, 8u}) {
    IdentityFamilyReport rep = identity_family_bound(n, ref, 18);
    bool ok = rep.unresolved == 0 && rep.bound_pass && rep.certificate_valid;
    pass = pass && ok;
    d << "n=" << n << " sup=" << rep.sup_burden << (ok ? " ok; " : " FAIL; ");
  }
  report(7, "pigeonhole", pass, d.str());
}

// 8. Variant panels |S| in {2,4,8}.
void criterion_panels(const std::string& fixtures) {
  Json spec = Json::parse(read_text_file(fixtures + "/panels.json"));
  auto panels = panels_from_json(spec);
  SearchCaps caps{20, kDefaultStepBudget};
  bool pass = true;
  std::ostringstream d;
  for (const auto& members : panels) {
    PanelReport rep = variant_panel_bound(members, caps);
    if (!rep.precondition_ok) continue;  // the overlap fixture is criterion-neutral here
    bool ok = rep.pass;
    pass = pass && ok;
    d << "|S|=" << rep.size << " max=" << (rep.max_m ? *rep.max_m : 0) << " >= "
      << rep.threshold_bits << " - " << rep.c_vp << (ok ? "; " : " FAIL; ");
  }
  report(8, "variant panel", pass, d.str());
}

// 9. GC selection: closed form vs simulation, and the exact requirement.
void criterion_gc() {
  bool pass = gc_required(0.01, 0.05) == 300;
  size_t off = 0;
  for (double p : {0.5, 0.1, 0.01})
    for (uint64_t n : {uint64_t(1), uint64_t(10), uint64_t(100)}) {
      SelectionModel model;
      model.p = p;
      model.n_param = static_cast<double>(n);
      GcSimReport rep = gc_simulate(model, 10000, 7777);
      if (!rep.within_3sigma) ++off;
    }
  pass = pass && off == 0;
  std::ostringstream d;
  d << "gc_required(0.01,0.05) = " << gc_required(0.01, 0.05) << "; " << off
    << " of 9 (p,n) pairs outside 3 sigma at 10^4 trials";
  report(9, "gc selection", pass, d.str());
}

// 10. Fano closed-form values.
void criterion_fano() {
  double v0 = fano_lower_bound(3, 0, 8, 1);
  double v1 = fano_lower_bound(3, 0.1, 8, 1);
  bool pass = v0 == 2.0 && std::abs(v1 - 1.2503) < 1e-3;
  std::ostringstream d;
  d << "fano(3,0,8,1) = " << v0 << "; fano(3,0.1,8,1) = " << v1 << " ~ 1.2503";
  report(10, "fano converse", pass, d.str());
}

// 11. Determinism: verify-all twice produces byte-identical reports.
void criterion_determinism(const std::string& cli, const std::string& fixtures) {
  std::string out1 = "acceptance_verify_1.json";
  std::string out2 = "acceptance_verify_2.json";
  std::string base = "\"" + cli + "\" verify --suite all --fixtures \"" + fixtures + "\"";
  int rc1 = std::system((base + " --out " + out1 + " > acceptance_verify_1.log 2>&1").c_str());
  int rc2 = std::system((base + " --out " + out2 + " > acceptance_verify_2.log 2>&1").c_str());
  bool ran = rc1 != -1 && rc2 != -1;
  int code1 = ran && WIFEXITED(rc1) ? WEXITSTATUS(rc1) : -1;
  int code2 = ran && WIFEXITED(rc2) ? WEXITSTATUS(rc2) : -1;
  bool identical = false;
  std::string a, b;
  try {
    a = read_text_file(out1);
    b = read_text_file(out2);
    identical = !a.empty() && a == b;
  } catch (const std::exception&) {
    identical = false;
  }
  bool pass = code1 == 0 && code2 == 0 && identical;
  std::ostringstream d;
  d << "verify-all exit codes " << code1 << "/" << code2 << ", reports "
    << (identical ? "byte-identical" : "DIFFER") << " (" << a.size() << " bytes)";
  report(11, "determinism", pass, d.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <naqkit-cli> <fixtures-dir>\n";
    return 2;
  }
  std::string cli = argv[1];
  std::string fixtures = argv[2];

  criterion_identity(fixtures);
  criterion_truncation();
  criterion_naq();
  criterion_stability();
  criterion_dkw();
  criterion_two_part();
  criterion_pigeonhole();
  criterion_panels(fixtures);
  criterion_gc();
  criterion_fano();
  criterion_determinism(cli, fixtures);

  std::cout << (g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << " ("
            << 11 - g_failures << "/11)\n";
  return g_failures == 0 ? 0 : 1;
}
