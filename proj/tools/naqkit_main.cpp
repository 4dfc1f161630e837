// naqkit: estimator dispatch, pool management, NAQ reports, bounds and the
// verification suites. Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 data error.

#include <CLI11.hpp>

#include "naqkit/alphabet.hpp"
#include "naqkit/bounds.hpp"
#include "naqkit/complexity.hpp"
#include "naqkit/descsel.hpp"
#include "naqkit/executor.hpp"
#include "naqkit/io.hpp"
#include "naqkit/naq.hpp"
#include "naqkit/verify.hpp"

#include <iostream>
#include <optional>

using namespace naqkit;

namespace {

Json caps_json(const SearchCaps& caps) {
  Json j;
  j["length_cap"] = caps.length_cap;
  j["step_budget"] = caps.step_budget;
  return j;
}

void emit(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

ValidityPredicate predicate_from_arg(const std::string& arg) {
  return predicate_from_json(Json::parse(arg));
}

// First valid response in length-lex order; the canonical representative the
// compressor proxy measures.
std::optional<Response> representative_response(const Instance& x, const ValidityPredicate& V,
                                                size_t max_len) {
  for (size_t len = 0; len <= max_len; ++len) {
    uint64_t count = uint64_t(1) << len;
    for (uint64_t v = 0; v < count; ++v) {
      Response r = BitString::from_value(v, len);
      if (V.eval_final(x, r) == Accept::kYes) return r;
    }
  }
  return std::nullopt;
}

struct ProfileArgs {
  std::string corpus_path;
  std::string predicate_json;
  std::string method = "exact";
  SearchCaps caps{20, kDefaultStepBudget};
  uint64_t budget_B = 12;
  std::string out_path;
  std::string format = "json";
};

int run_profile(const ProfileArgs& args) {
  auto records = read_corpus_jsonl(args.corpus_path);
  std::optional<ValidityPredicate> run_predicate;
  if (!args.predicate_json.empty()) run_predicate = predicate_from_arg(args.predicate_json);

  Pool pool;
  UniversalExecutor univ;
  for (const CorpusRecord& rec : records) {
    ValidityPredicate V = rec.predicate_spec.is_null()
                              ? (run_predicate ? *run_predicate
                                               : throw DataError("record " + rec.x.id +
                                                                 " has no predicate and no "
                                                                 "--predicate was given"))
                              : predicate_from_json(rec.predicate_spec);
    PoolEntry entry;
    entry.id = rec.x.id;
    if (args.method == "exact") {
      entry.method = "exact_bounded";
      MExactResult m = m_exact(rec.x, V, args.caps);
      switch (m.estimate.status) {
        case EstimateStatus::kFinite:
          entry.status = PoolStatus::kFinite;
          entry.m = ExactBits::from_int_bits(m.estimate.value);
          break;
        case EstimateStatus::kInfinite:
          entry.status = PoolStatus::kInfinite;
          break;
        case EstimateStatus::kUnknownAtBudget:
          entry.status = PoolStatus::kUnknownAtBudget;
          break;
      }
    } else if (args.method == "levin") {
      entry.method = "levin";
      LevinResult lr = levin_value(rec.x, univ, V, args.budget_B);
      if (lr.status == LevinResult::Status::kFound) {
        entry.status = PoolStatus::kFinite;
        entry.m = ExactBits::from_levin(lr.objective.advice_bits, lr.objective.tau);
      } else {
        entry.status = PoolStatus::kInfinite;
      }
    } else if (args.method.rfind("compressor:", 0) == 0) {
      std::string id = args.method.substr(std::string("compressor:").size());
      entry.method = "compressor:" + id;
      auto rep = representative_response(rec.x, V, 12);
      if (!rep) {
        entry.status = PoolStatus::kInfinite;
      } else {
        ComplexityEstimate est = khat_compressor(*rep, id);
        entry.status = PoolStatus::kFinite;
        entry.m = ExactBits::from_int_bits(est.value);
      }
    } else {
      throw CLI::ValidationError("--method must be exact, levin or compressor:<id>");
    }
    pool.entries.push_back(std::move(entry));
  }

  RunManifest manifest;
  manifest.command = "profile";
  manifest.parameters["corpus"] = args.corpus_path;
  manifest.parameters["method"] = args.method;
  if (!args.predicate_json.empty()) manifest.parameters["predicate"] = args.predicate_json;
  manifest.caps = caps_json(args.caps);
  if (args.method == "levin") manifest.caps["budget_B"] = args.budget_B;

  if (args.out_path.empty()) {
    for (const auto& e : pool.entries) std::cout << pool_entry_to_json(e).dump() << "\n";
  } else if (args.format == "csv") {
    write_text_file(args.out_path, pool_to_csv(pool));
  } else {
    write_pool_jsonl(args.out_path, pool, manifest);
  }
  if (pool.entries.empty()) std::cerr << "warning: empty corpus -> empty pool\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"naqkit: validity-filtered advice complexity at desk scale"};
  app.require_subcommand(1);

  // --- profile ---------------------------------------------------------------
  ProfileArgs profile_args;
  auto* profile = app.add_subcommand("profile", "estimate M per corpus instance into a pool");
  profile->add_option("--corpus", profile_args.corpus_path, "corpus JSONL path")->required();
  profile->add_option("--predicate", profile_args.predicate_json,
                      "run-level predicate spec (JSON)");
  profile->add_option("--method", profile_args.method, "exact | levin | compressor:<id>");
  profile->add_option("--caps-len", profile_args.caps.length_cap, "program length cap (bits)");
  profile->add_option("--caps-steps", profile_args.caps.step_budget, "machine step budget");
  profile->add_option("--budget-B", profile_args.budget_B, "Levin advice+time budget B");
  profile->add_option("--out", profile_args.out_path, "pool output path (JSONL)");
  profile->add_option("--format", profile_args.format, "json | csv");

  // --- naq group ---------------------------------------------------------------
  auto* naq = app.add_subcommand("naq", "quantile statistics over pools");
  naq->require_subcommand(1);

  std::string rank_pool, rank_id, rank_out, rank_format = "json";
  double rank_m = -1;
  uint64_t rank_bucket = 0;
  double rank_confidence = 0.95;
  auto* rank = naq->add_subcommand("rank", "mid-rank NAQ of a query against a pool");
  rank->add_option("--pool", rank_pool, "pool JSONL path")->required();
  rank->add_option("--id", rank_id, "query instance id (entry must be finite)");
  rank->add_option("--m", rank_m, "query m value in bits");
  rank->add_option("--bucket", rank_bucket, "bucket width b (0 = raw values)");
  rank->add_option("--confidence", rank_confidence, "DKW band confidence");
  rank->add_option("--out", rank_out, "report output path");
  rank->add_option("--format", rank_format, "json | csv");

  uint64_t band_n = 0;
  double band_eps = 0, band_conf = 0;
  auto* band = naq->add_subcommand("band", "DKW band: bound at epsilon, or epsilon at confidence");
  band->add_option("--n", band_n, "sample size")->required();
  band->add_option("--epsilon", band_eps, "band half-width");
  band->add_option("--confidence", band_conf, "target confidence 1 - delta");

  std::string stab_pool, stab_pool_prime, stab_out;
  auto* stability = naq->add_subcommand("stability", "pool-stability bounds for nested pools");
  stability->add_option("--pool", stab_pool, "pool T (JSONL)")->required();
  stability->add_option("--pool-prime", stab_pool_prime, "pool T' (JSONL), superset")->required();
  stability->add_option("--out", stab_out, "report output path");

  // --- bounds group ---------------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "closed-form converses and lower bounds");
  bounds->require_subcommand(1);

  double fano_H = 0, fano_eps = 0, fano_slack = 1;
  uint64_t fano_support = 2;
  auto* fano = bounds->add_subcommand("fano", "Fano/rate-distortion advice lower bound");
  fano->add_option("--entropy", fano_H, "H(Y*) in bits")->required();
  fano->add_option("--epsilon", fano_eps, "error tolerance")->required();
  fano->add_option("--support", fano_support, "|Y|")->required();
  fano->add_option("--slack", fano_slack, "Kraft-McMillan slack (default 1)");

  unsigned idn_n = 4;
  std::string idn_executor = "ref";
  uint64_t idn_max_len = 18;
  std::string idn_out;
  auto* identity = bounds->add_subcommand("identity", "identity-family linear advice bound");
  identity->add_option("--n", idn_n, "identifier bits (<= 12)")->required();
  identity->add_option("--executor", idn_executor, "ref | universal");
  identity->add_option("--max-len", idn_max_len, "advice search cap");
  identity->add_option("--out", idn_out, "report output path");

  std::string panel_spec, panel_out;
  SearchCaps panel_caps{20, kDefaultStepBudget};
  auto* panel = bounds->add_subcommand("panel", "separated variant-panel lower bound");
  panel->add_option("--spec", panel_spec, "panels JSON path")->required();
  panel->add_option("--caps-len", panel_caps.length_cap, "program length cap");
  panel->add_option("--caps-steps", panel_caps.step_budget, "step budget");
  panel->add_option("--out", panel_out, "report output path");

  double gc_p = 0.5, gc_eps = 0.05;
  uint64_t gc_n = 1, gc_trials = 0, gc_seed = 20260810;
  bool gc_req = false;
  std::string gc_out;
  auto* gc = bounds->add_subcommand("gc", "selection success closed forms and simulation");
  gc->add_option("--p", gc_p, "per-candidate success probability");
  gc->add_option("--n", gc_n, "candidate count");
  gc->add_option("--eps", gc_eps, "failure tolerance (with --required)");
  gc->add_flag("--required", gc_req, "emit the (1/p) ln(1/eps) candidate requirement");
  gc->add_option("--simulate", gc_trials, "simulate with this many trials");
  gc->add_option("--seed", gc_seed, "simulation seed");
  gc->add_option("--out", gc_out, "report output path");

  // --- estimate group ----------------------------------------------------------------
  auto* estimate = app.add_subcommand("estimate", "direct access to every estimator");
  estimate->require_subcommand(1);

  std::string kh_r;
  SearchCaps kh_caps{20, kDefaultStepBudget};
  auto* khat = estimate->add_subcommand("khat", "exact bounded K-hat of a response");
  khat->add_option("--r", kh_r, "response bits, e.g. 101 (empty for epsilon)");
  khat->add_option("--caps-len", kh_caps.length_cap, "program length cap");
  khat->add_option("--caps-steps", kh_caps.step_budget, "step budget");

  std::string me_x, me_predicate;
  SearchCaps me_caps{20, kDefaultStepBudget};
  auto* mex = estimate->add_subcommand("m", "exact bounded M-hat of an instance");
  mex->add_option("--x", me_x, "instance text (binary)")->required();
  mex->add_option("--predicate", me_predicate, "predicate spec (JSON)")->required();
  mex->add_option("--caps-len", me_caps.length_cap, "program length cap");
  mex->add_option("--caps-steps", me_caps.step_budget, "step budget");

  std::string lv_x, lv_predicate;
  uint64_t lv_B = 12;
  auto* levin = estimate->add_subcommand("levin", "truncated advice+time search value");
  levin->add_option("--x", lv_x, "instance text (binary)")->required();
  levin->add_option("--predicate", lv_predicate, "predicate spec (JSON)")->required();
  levin->add_option("--budget-B", lv_B, "budget B");

  std::string cp_r, cp_id = "lz78";
  auto* compressor = estimate->add_subcommand("compressor", "compressor proxy value");
  compressor->add_option("--r", cp_r, "response bits");
  compressor->add_option("--id", cp_id, "compressor id (lz78 or external)");

  std::string burden_x, burden_predicate, burden_executor = "universal";
  uint64_t burden_max = 24;
  auto* burden_cmd = estimate->add_subcommand("burden", "advice burden of an instance");
  burden_cmd->add_option("--x", burden_x, "instance text (binary)")->required();
  burden_cmd->add_option("--predicate", burden_predicate, "predicate spec (JSON)")->required();
  burden_cmd->add_option("--executor", burden_executor, "ref | universal | machine");
  burden_cmd->add_option("--max-len", burden_max, "advice length cap");

  // --- descsel group ----------------------------------------------------------------
  auto* descsel = app.add_subcommand("descsel", "description+selection audits");
  descsel->require_subcommand(1);

  std::string dp_fs, dp_x, dp_enum = "{\"kind\":\"length_lex\"}", dp_format = "json", dp_out;
  SearchCaps dp_caps{20, kDefaultStepBudget};
  uint64_t dp_index_cap = 1 << 17;
  auto* twopart = descsel->add_subcommand("twopart", "two-part bound audit for one instance");
  twopart->add_option("--fs", dp_fs, "feature system spec (JSON text or @file)")->required();
  twopart->add_option("--x", dp_x, "instance text (binary)")->required();
  twopart->add_option("--enum", dp_enum, "enumeration spec (JSON text or @file)");
  twopart->add_option("--caps-len", dp_caps.length_cap, "program length cap");
  twopart->add_option("--caps-steps", dp_caps.step_budget, "step budget");
  twopart->add_option("--index-cap", dp_index_cap, "selection index scan cap");
  twopart->add_option("--format", dp_format, "json | csv");
  twopart->add_option("--out", dp_out, "report output path");

  // --- verify / registry -----------------------------------------------------------
  std::string verify_suite = "all", verify_out;
  VerifyOptions verify_opt;
  auto* verify = app.add_subcommand("verify", "run the fixture verification suites");
  verify->add_option("--suite", verify_suite, "all | identity | levin | descsel | stability | "
                                              "pigeonhole | panel | gc");
  verify->add_option("--fixtures", verify_opt.fixtures_dir, "fixtures directory");
  verify->add_option("--caps-len", verify_opt.caps.length_cap, "program length cap");
  verify->add_option("--caps-steps", verify_opt.caps.step_budget, "step budget");
  verify->add_option("--seed", verify_opt.seed, "randomized-audit seed");
  verify->add_option("--out", verify_out, "machine-readable report path");

  std::string registry_format = "json";
  auto* registry = app.add_subcommand("registry", "dump the constants and header registry");
  registry->add_option("--format", registry_format, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*profile) return run_profile(profile_args);

    if (*rank) {
      Pool pool = read_pool_jsonl(rank_pool);
      ExactBits query;
      Json query_json;
      if (!rank_id.empty()) {
        bool found = false;
        for (const auto& e : pool.entries)
          if (e.id == rank_id) {
            if (e.status != PoolStatus::kFinite)
              throw DataError("entry " + rank_id +
                              " has no finite m (outside D_V or unknown); no quantile");
            query = e.m;
            found = true;
          }
        if (!found) throw DataError("unknown id " + rank_id);
        query_json["id"] = rank_id;
      } else if (rank_m >= 0) {
        uint64_t iv = static_cast<uint64_t>(rank_m);
        if (static_cast<double>(iv) != rank_m)
          throw DataError("--m accepts integer bit values on the CLI");
        query = ExactBits::from_int_bits(iv);
        query_json["m"] = iv;
      } else {
        throw CLI::ValidationError("naq rank needs --id or --m");
      }

      Rat naq_value = naq_midrank(query, pool);
      RunManifest manifest;
      manifest.command = "naq rank";
      manifest.parameters["pool"] = rank_pool;
      manifest.parameters["query"] = query_json;
      manifest.parameters["bucket"] = rank_bucket;
      manifest.parameters["confidence"] = rank_confidence;

      Json rep;
      rep["schema"] = "naqkit-naq-report-v1";
      rep["manifest"] = manifest.to_json();
      rep["naq"] = naqkit::to_string(naq_value);
      rep["naq_value"] = to_double(naq_value);
      if (rank_bucket > 0) rep["bucket"] = bucket_index(query, rank_bucket);
      size_t n = pool.finite_count();
      rep["pool_size"] = n;
      rep["excluded"] = {{"infinite", pool.infinite_count()},
                         {"unknown_at_budget", pool.unknown_count()}};
      rep["band"] = {{"confidence", rank_confidence},
                     {"epsilon", dkw_epsilon(n, 1.0 - rank_confidence)}};
      Json entries = Json::array();
      for (const auto& e : pool.entries) {
        if (e.status != PoolStatus::kFinite) continue;
        Json ej;
        ej["id"] = e.id;
        ej["m"] = e.m.bits_double();
        ej["naq"] = naqkit::to_string(naq_midrank(e.m, pool));
        if (rank_bucket > 0) ej["bucket"] = bucket_index(e.m, rank_bucket);
        entries.push_back(ej);
      }
      rep["entries"] = entries;
      rep["bucket_width"] = rank_bucket;
      if (rank_format == "csv") {
        std::ostringstream csv;
        csv << "id,m_bits,naq,bucket\n";
        for (const auto& e : pool.entries) {
          if (e.status != PoolStatus::kFinite) continue;
          csv << e.id << "," << e.m.bits_double() << ","
              << to_double(naq_midrank(e.m, pool)) << ",";
          if (rank_bucket > 0) csv << bucket_index(e.m, rank_bucket);
          csv << "\n";
        }
        if (rank_out.empty())
          std::cout << csv.str();
        else
          write_text_file(rank_out, csv.str());
      } else {
        emit(rep, rank_out);
      }
      return 0;
    }

    if (*band) {
      Json rep;
      rep["schema"] = "naqkit-band-v1";
      RunManifest manifest;
      manifest.command = "naq band";
      manifest.parameters["n"] = band_n;
      if (band_eps > 0) manifest.parameters["epsilon"] = band_eps;
      if (band_conf > 0) manifest.parameters["confidence"] = band_conf;
      rep["manifest"] = manifest.to_json();
      rep["n"] = band_n;
      if (band_eps > 0) {
        rep["epsilon"] = band_eps;
        rep["bound"] = dkw_band(band_n, band_eps);
      }
      if (band_conf > 0) {
        rep["confidence"] = band_conf;
        rep["epsilon_at_confidence"] = dkw_epsilon(band_n, 1.0 - band_conf);
      }
      if (!(band_eps > 0) && !(band_conf > 0))
        throw CLI::ValidationError("naq band needs --epsilon or --confidence");
      emit(rep, "");
      return 0;
    }

    if (*stability) {
      Pool T = read_pool_jsonl(stab_pool);
      Pool Tp = read_pool_jsonl(stab_pool_prime);
      std::vector<ExactBits> grid;
      for (const auto& e : Tp.entries)
        if (e.status == PoolStatus::kFinite) grid.push_back(e.m);
      StabilityReport srep = pool_stability_check(T, Tp, grid);
      RunManifest manifest;
      manifest.command = "naq stability";
      manifest.parameters["pool"] = stab_pool;
      manifest.parameters["pool_prime"] = stab_pool_prime;
      Json rep;
      rep["schema"] = "naqkit-stability-v1";
      rep["manifest"] = manifest.to_json();
      rep["pass"] = srep.pass;
      rep["grid_points"] = srep.grid_points;
      rep["violations"] = srep.violations;
      rep["worst_lower_slack"] = naqkit::to_string(srep.worst_lower_slack);
      rep["worst_upper_slack"] = naqkit::to_string(srep.worst_upper_slack);
      emit(rep, stab_out);
      return srep.pass ? 0 : 1;
    }

    if (*fano) {
      Json rep;
      rep["schema"] = "naqkit-fano-v1";
      RunManifest manifest;
      manifest.command = "bounds fano";
      manifest.parameters["entropy"] = fano_H;
      manifest.parameters["epsilon"] = fano_eps;
      manifest.parameters["support"] = fano_support;
      manifest.parameters["slack"] = fano_slack;
      rep["manifest"] = manifest.to_json();
      rep["entropy"] = fano_H;
      rep["epsilon"] = fano_eps;
      rep["support"] = fano_support;
      rep["kraft_slack"] = fano_slack;
      rep["lower_bound_bits"] = fano_lower_bound(fano_H, fano_eps, fano_support, fano_slack);
      emit(rep, "");
      return 0;
    }

    if (*identity) {
      ReferenceExecutor ref;
      UniversalExecutor univ;
      const Executor& ex =
          idn_executor == "universal" ? static_cast<const Executor&>(univ) : ref;
      IdentityFamilyReport r = identity_family_bound(idn_n, ex, idn_max_len);
      RunManifest manifest;
      manifest.command = "bounds identity";
      manifest.parameters["n"] = idn_n;
      manifest.parameters["executor"] = idn_executor;
      manifest.parameters["max_len"] = idn_max_len;
      Json rep;
      rep["schema"] = "naqkit-identity-family-v1";
      rep["manifest"] = manifest.to_json();
      rep["sup_burden"] = r.sup_burden;
      rep["bound_pass"] = r.bound_pass;
      rep["c_id"] = r.c_id;
      rep["unresolved"] = r.unresolved;
      rep["certificate"] = {{"s1", r.certificate.s1},
                            {"s2", r.certificate.s2},
                            {"shared_advice", r.certificate.shared_advice.to_text()},
                            {"short_advice_count", r.certificate.short_advice_count},
                            {"family_size", r.certificate.family_size},
                            {"valid", r.certificate_valid}};
      rep["top_naq"] = naqkit::to_string(r.top_naq);
      emit(rep, idn_out);
      return r.bound_pass && r.certificate_valid ? 0 : 1;
    }

    if (*panel) {
      Json spec = Json::parse(read_text_file(panel_spec));
      auto panels = panels_from_json(spec);
      Json rep;
      rep["schema"] = "naqkit-panel-v1";
      RunManifest manifest;
      manifest.command = "bounds panel";
      manifest.parameters["spec"] = panel_spec;
      manifest.caps = caps_json(panel_caps);
      rep["manifest"] = manifest.to_json();
      Json arr = Json::array();
      bool all_ok = true;
      for (const auto& members : panels) {
        PanelReport r = variant_panel_bound(members, panel_caps);
        Json pj;
        pj["size"] = r.size;
        pj["delta"] = r.delta;
        pj["precondition_ok"] = r.precondition_ok;
        if (r.precondition_ok) {
          pj["max_m"] = r.max_m ? Json(*r.max_m) : Json();
          pj["threshold_bits"] = r.threshold_bits;
          pj["pass"] = r.pass;
          all_ok = all_ok && r.pass;
        }
        arr.push_back(pj);
      }
      rep["panels"] = arr;
      emit(rep, panel_out);
      return all_ok ? 0 : 1;
    }

    if (*gc) {
      Json rep;
      rep["schema"] = "naqkit-gc-v1";
      RunManifest manifest;
      manifest.command = "bounds gc";
      manifest.parameters["p"] = gc_p;
      if (gc_trials > 0) manifest.seed = gc_seed;
      rep["manifest"] = manifest.to_json();
      rep["p"] = gc_p;
      if (gc_req) {
        rep["eps"] = gc_eps;
        rep["required_candidates"] = gc_required(gc_p, gc_eps);
      } else if (gc_trials > 0) {
        SelectionModel model;
        model.p = gc_p;
        model.n_kind = SelectionModel::NKind::kFixed;
        model.n_param = static_cast<double>(gc_n);
        GcSimReport r = gc_simulate(model, gc_trials, gc_seed);
        rep["n"] = gc_n;
        rep["trials"] = r.trials;
        rep["seed"] = r.seed;
        rep["rng"] = r.rng_name;
        rep["empirical"] = r.empirical;
        rep["closed_form"] = r.closed_form;
        rep["within_3sigma"] = r.within_3sigma;
      } else {
        rep["n"] = gc_n;
        rep["success"] = gc_success(gc_p, gc_n);
      }
      emit(rep, gc_out);
      return 0;
    }

    if (*khat) {
      ComplexityEstimate est = khat_exact(BitString::from_text(kh_r), kh_caps);
      Json rep;
      rep["schema"] = "naqkit-estimate-v1";
      {
        RunManifest manifest;
        manifest.command = "estimate khat";
        rep["manifest"] = manifest.to_json();
      }
      rep["method"] = "exact_bounded";
      rep["r"] = kh_r;
      rep["caps"] = caps_json(kh_caps);
      if (est.finite()) {
        rep["value_bits"] = est.value;
        rep["witness"] = est.witness->to_text();
        rep["witness_hex"] = est.witness->to_hex();
        rep["tau_star"] = *est.tau_star;
      } else {
        rep["status"] = "infinite_within_caps";
      }
      emit(rep, "");
      return 0;
    }

    if (*mex) {
      Instance x{"cli", me_x};
      MExactResult m = m_exact(x, predicate_from_arg(me_predicate), me_caps);
      Json rep;
      rep["schema"] = "naqkit-estimate-v1";
      {
        RunManifest manifest;
        manifest.command = "estimate m";
        rep["manifest"] = manifest.to_json();
      }
      rep["method"] = "exact_bounded";
      rep["x"] = me_x;
      rep["caps"] = caps_json(me_caps);
      switch (m.estimate.status) {
        case EstimateStatus::kFinite:
          rep["value_bits"] = m.estimate.value;
          rep["witness_program"] = m.estimate.witness->to_text();
          rep["witness_response"] = m.witness_response->to_text();
          break;
        case EstimateStatus::kInfinite:
          rep["status"] = "infinite_within_caps";
          break;
        case EstimateStatus::kUnknownAtBudget:
          rep["status"] = "unknown_at_budget";
          if (m.estimate.witness) rep["upper_bound_bits"] = m.estimate.value;
          break;
      }
      emit(rep, "");
      return 0;
    }

    if (*levin) {
      Instance x{"cli", lv_x};
      UniversalExecutor univ;
      LevinResult r = levin_value(x, univ, predicate_from_arg(lv_predicate), lv_B);
      Json rep;
      rep["schema"] = "naqkit-estimate-v1";
      {
        RunManifest manifest;
        manifest.command = "estimate levin";
        rep["manifest"] = manifest.to_json();
      }
      rep["method"] = "levin";
      rep["budget_B"] = lv_B;
      if (r.status == LevinResult::Status::kFound) {
        rep["advice_bits"] = r.objective.advice_bits;
        rep["tau"] = r.objective.tau;
        rep["value_bits"] = r.objective.bits_double();
        rep["value_bits_ceil"] = r.objective.ceil_bits();
        rep["witness"] = r.witness.to_text();
      } else {
        rep["status"] = "no_witness_under_budget";
      }
      emit(rep, "");
      return 0;
    }

    if (*compressor) {
      ComplexityEstimate est = khat_compressor(BitString::from_text(cp_r), cp_id);
      Json rep;
      rep["schema"] = "naqkit-estimate-v1";
      {
        RunManifest manifest;
        manifest.command = "estimate compressor";
        rep["manifest"] = manifest.to_json();
      }
      rep["method"] = "compressor";
      rep["compressor_id"] = cp_id;
      rep["value_bits"] = est.value;
      emit(rep, "");
      return 0;
    }

    if (*burden_cmd) {
      Instance x{"cli", burden_x};
      ReferenceExecutor ref;
      UniversalExecutor univ;
      MachineExecutor mach;
      const Executor* ex = &univ;
      if (burden_executor == "ref") ex = &ref;
      if (burden_executor == "machine") ex = &mach;
      BurdenResult r = advice_burden(*ex, predicate_from_arg(burden_predicate), x, burden_max);
      Json rep;
      rep["schema"] = "naqkit-estimate-v1";
      {
        RunManifest manifest;
        manifest.command = "estimate burden";
        rep["manifest"] = manifest.to_json();
      }
      rep["method"] = "advice_burden";
      rep["executor"] = ex->id();
      rep["max_len"] = burden_max;
      switch (r.status) {
        case BurdenResult::Status::kFound:
          rep["burden_bits"] = r.length;
          rep["witness"] = r.witness.to_text();
          break;
        case BurdenResult::Status::kNoneWithinMaxLen:
          rep["status"] = "infinite_within_max_len";
          break;
        case BurdenResult::Status::kUnknownAtBudget:
          rep["status"] = "unknown_at_budget";
          break;
      }
      emit(rep, "");
      return 0;
    }

    if (*twopart) {
      auto load_spec = [](const std::string& arg) {
        if (!arg.empty() && arg[0] == '@') return Json::parse(read_text_file(arg.substr(1)));
        return Json::parse(arg);
      };
      FeatureSystem fs = feature_system_from_json(load_spec(dp_fs));
      RealizerEnumeration en = enumeration_from_json(load_spec(dp_enum));
      Instance x{"cli", dp_x};
      TwoPartReport rep = two_part_bound(x, fs, en, dp_caps, dp_index_cap);

      if (dp_format == "csv") {
        std::ostringstream csv;
        csv << "y,khat_y,index,term_bits,excluded\n";
        for (const TwoPartRow& row : rep.rows) {
          csv << row.y << ",";
          if (row.khat_y.finite()) csv << row.khat_y.value;
          csv << ",";
          if (row.index) csv << *row.index;
          csv << ",";
          if (row.term_bits) csv << *row.term_bits;
          csv << "," << (row.excluded ? 1 : 0) << "\n";
        }
        if (dp_out.empty())
          std::cout << csv.str();
        else
          write_text_file(dp_out, csv.str());
        return 0;
      }

      RunManifest manifest;
      manifest.command = "descsel twopart";
      manifest.parameters["fs"] = dp_fs;
      manifest.parameters["enum"] = dp_enum;
      manifest.parameters["x"] = dp_x;
      manifest.caps = caps_json(dp_caps);
      Json rep_json;
      rep_json["schema"] = "naqkit-descsel-v1";
      rep_json["manifest"] = manifest.to_json();
      Json rows = Json::array();
      for (const TwoPartRow& row : rep.rows) {
        Json rj;
        rj["y"] = row.y;
        rj["khat_y"] = row.khat_y.finite() ? Json(row.khat_y.value) : Json();
        rj["index"] = row.index ? Json(*row.index) : Json();
        rj["term_bits"] = row.term_bits ? Json(*row.term_bits) : Json();
        rj["excluded"] = row.excluded;
        rows.push_back(rj);
      }
      rep_json["rows"] = rows;
      rep_json["bound"] = rep.bound ? Json(*rep.bound) : Json();
      rep_json["m_exact"] =
          rep.m_exact_value.finite() ? Json(rep.m_exact_value.value) : Json();
      rep_json["gap"] = rep.gap ? Json(*rep.gap) : Json();
      rep_json["audit_pass"] = rep.audit_pass;
      rep_json["c_dsel"] = rep.c_dsel;
      emit(rep_json, dp_out);
      return 0;
    }

    if (*verify) {
      std::vector<std::string> suites;
      if (verify_suite == "all")
        suites = verify_suite_names();
      else
        suites.push_back(verify_suite);

      RunManifest manifest;
      manifest.command = "verify";
      manifest.parameters["suite"] = verify_suite;
      manifest.parameters["fixtures"] = verify_opt.fixtures_dir;
      manifest.caps = caps_json(verify_opt.caps);
      manifest.seed = verify_opt.seed;

      Json rep;
      rep["schema"] = "naqkit-verify-v1";
      rep["manifest"] = manifest.to_json();
      Json results = Json::array();
      bool all_pass = true;
      for (const std::string& name : suites) {
        SuiteResult result = run_suite(name, verify_opt);
        for (const auto& c : result.checks)
          std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.detail << "\n";
        all_pass = all_pass && result.pass();
        results.push_back(suite_to_json(result));
      }
      rep["suites"] = results;
      rep["pass"] = all_pass;
      if (!verify_out.empty()) write_text_file(verify_out, rep.dump(2) + "\n");
      std::cout << (all_pass ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
      return all_pass ? 0 : 1;
    }

    if (*registry) {
      if (registry_format != "json")
        throw CLI::ValidationError("registry supports --format json");
      Json rep;
      rep["schema"] = "naqkit-registry-v1";
      rep["constants"] = constants_json();
      Json headers = Json::array();
      for (const auto& [id, h] : default_header_registry().entries)
        headers.push_back({{"id", id}, {"header", h.to_text()}, {"bits", h.size()}});
      rep["header_registry"] = {{"version", default_header_registry().version},
                                {"entries", headers}};
      emit(rep, "");
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
