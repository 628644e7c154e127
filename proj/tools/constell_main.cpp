// Experiment CLI: every subcommand reads an optional JSON config, applies
// flag overrides, runs the experiment, and emits a machine-readable report
// whose `data` section is a deterministic function of the configuration.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "constell/report.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace constell;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string config_path;
  std::string out_path;  // "-" = stdout
  std::string format = "json";
  int workers = 0;
  u64 seed = 0;
};

json load_config(const std::string& path, const std::set<std::string>& known_keys) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open config file '" + path + "'");
  json cfg = json::parse(in);
  if (!cfg.is_object()) throw domain_error("config must be a JSON object");
  for (auto it = cfg.begin(); it != cfg.end(); ++it)
    if (!known_keys.count(it.key()))
      throw domain_error("unknown config key '" + it.key() + "'");
  return cfg;
}

// flag wins when the user passed it; otherwise the config value applies
template <typename T>
void merge(const CLI::Option* opt, const json& cfg, const char* key, T& value) {
  if (opt->count() > 0) return;
  if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

void emit(const CommonOpts& common, RunReport&& report) {
  report.meta["version"] = kVersion;
  report.meta["workers"] = common.workers;
  if (common.format == "csv" && report.meta.contains("seconds") && report.data.is_object()) {
    // the CSV surface carries timing as a column; the JSON data payload
    // stays a deterministic function of the configuration
    report.data["seconds"] = report.meta["seconds"];
  }
  if (common.out_path.empty() || common.out_path == "-") {
    if (common.format == "json")
      std::cout << report.to_json().dump(2) << "\n";
    else
      std::cout << report.to_csv();
  } else {
    report.write(common.out_path, common.format);
    std::cerr << "report written to " << common.out_path << "\n";
  }
}

int effective_workers(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("CONSTELL_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // library default (all OpenMP threads)
}

FieldSpec field_with_class_number(const std::string& spec) {
  FieldSpec F = parse_field_spec(spec);
  if (F.n == 1 || F.is_quadratic) attach_class_number(F);
  return F;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constell: prime constellations in number fields, at desk scale"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--config", common.config_path, "JSON config file (flags override)");
  app.add_option("--out", common.out_path, "output path ('-' = stdout)");
  app.add_option("--format", common.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  auto* workers_opt = app.add_option("--workers", common.workers,
                                     "worker threads (env CONSTELL_WORKERS, 0 = all)");
  app.add_option("--seed", common.seed, "seed echoed into sampled property runs");

  // ---- primes-count ----------------------------------------------------------
  auto* cmd_pc = app.add_subcommand("primes-count", "prime ideals of norm <= L vs L/log L");
  std::string pc_field = "quadratic d=-1";
  double pc_L = 1000.0;
  auto* pc_field_opt = cmd_pc->add_option("--field", pc_field, "field spec");
  auto* pc_L_opt = cmd_pc->add_option("--L", pc_L, "norm bound");

  // ---- chebotarev ------------------------------------------------------------
  auto* cmd_ch = app.add_subcommand("chebotarev", "principal prime ideals vs (1/h) L/log L");
  std::string ch_field = "quadratic d=-5";
  double ch_L = 10000.0;
  auto* ch_field_opt = cmd_ch->add_option("--field", ch_field, "field spec");
  auto* ch_L_opt = cmd_ch->add_option("--L", ch_L, "norm bound");

  // ---- kappa -------------------------------------------------------------------
  auto* cmd_ka = app.add_subcommand("kappa", "ideal count / L (Dedekind zeta residue)");
  std::string ka_field = "quadratic d=-1";
  double ka_L = 1000000.0;
  auto* ka_field_opt = cmd_ka->add_option("--field", ka_field, "field spec");
  auto* ka_L_opt = cmd_ka->add_option("--L", ka_L, "norm bound");

  // ---- gy-check ----------------------------------------------------------------
  auto* cmd_gy = app.add_subcommand("gy-check", "Goldston-Yildirim average vs main term");
  std::string gy_field = "rational";
  double gy_R = 20.0, gy_w = 4.0;
  i64 gy_b = 1, gy_x0 = 1, gy_len = 3200000;
  i64 gy_m = 1;
  std::string gy_chi = "bump";
  std::string gy_shape;
  std::vector<i64> gy_box_sides;
  auto* gy_field_opt = cmd_gy->add_option("--field", gy_field, "field spec");
  auto* gy_R_opt = cmd_gy->add_option("--R", gy_R, "truncation level");
  auto* gy_w_opt = cmd_gy->add_option("--w", gy_w, "W-trick prime bound (W = prod p <= w)");
  auto* gy_b_opt = cmd_gy->add_option("--b", gy_b, "progression shift (coprime to W)");
  auto* gy_x0_opt = cmd_gy->add_option("--x0", gy_x0, "box start");
  auto* gy_len_opt = cmd_gy->add_option("--box", gy_len, "box length");
  auto* gy_chi_opt = cmd_gy->add_option("--chi", gy_chi, "cutoff id (bump|bump_sq|triangle)");
  auto* gy_m_opt = cmd_gy->add_option("--m", gy_m, "number of linear forms (shape mode)");
  auto* gy_shape_opt = cmd_gy->add_option("--S", gy_shape,
                                          "shape file: run the linear-forms family mode");
  auto* gy_sides_opt = cmd_gy->add_option("--box-sides", gy_box_sides,
                                          "box side lengths for the shape mode")
                           ->delimiter(',');

  // ---- constellation-find --------------------------------------------------------
  auto* cmd_cf = app.add_subcommand("constellation-find", "brute-force S-constellations");
  std::string cf_field = "quadratic d=-1";
  std::string cf_shape;
  double cf_M = 10.0;
  i64 cf_kmax = 5;
  bool cf_no_assoc = false;
  bool cf_domain = false;
  auto* cf_field_opt = cmd_cf->add_option("--field", cf_field, "field spec");
  auto* cf_shape_opt =
      cmd_cf->add_option("--shape", cf_shape, "shape file path")->check(CLI::ExistingFile);
  auto* cf_M_opt = cmd_cf->add_option("--M", cf_M, "box radius");
  auto* cf_k_opt = cmd_cf->add_option("--k-max", cf_kmax, "largest dilation");
  auto* cf_na_opt =
      cmd_cf->add_flag("--no-associates", cf_no_assoc, "discard patterns with associate pairs");
  auto* cf_dom_opt = cmd_cf->add_flag("--domain-filter", cf_domain,
                                      "restrict primes to the canonical fundamental domain");
  bool cf_neg_k = false;
  auto* cf_negk_opt = cmd_cf->add_flag("--allow-negative-k", cf_neg_k,
                                       "also search dilations k in [-k_max, -1]");

  // ---- quadform-constellation ------------------------------------------------------
  auto* cmd_qf = app.add_subcommand("quadform-constellation",
                                    "S-constellations in prime values of a quadratic form");
  std::string qf_form = "1,0,1";
  std::string qf_shape;
  i64 qf_M = 1000, qf_kmax = 3;
  int qf_sign = 1;
  bool qf_distinct = true;
  double qf_theta = 0.5;
  auto* qf_form_opt = cmd_qf->add_option("--form", qf_form, "a,b,c");
  auto* qf_shape_opt =
      cmd_qf->add_option("--shape", qf_shape, "shape file path")->check(CLI::ExistingFile);
  auto* qf_M_opt = cmd_qf->add_option("--M", qf_M, "box radius");
  auto* qf_k_opt = cmd_qf->add_option("--k-max", qf_kmax, "largest dilation");
  auto* qf_sign_opt = cmd_qf->add_option("--sign", qf_sign, "+1 or -1 prime values");
  auto* qf_distinct_opt =
      cmd_qf->add_flag("--distinct-primes,!--no-distinct-primes", qf_distinct,
                       "require pairwise distinct prime values");
  auto* qf_theta_opt = cmd_qf->add_option("--theta", qf_theta, "closeness exponent");

  // ---- short-interval ------------------------------------------------------------
  auto* cmd_si = app.add_subcommand("short-interval", "primes in [M, M + M^a]");
  double si_M = 1e6, si_a = 0.525;
  auto* si_M_opt = cmd_si->add_option("--M", si_M, "interval base");
  auto* si_a_opt = cmd_si->add_option("--a", si_a, "exponent in (0,1)");

  // ---- classical-stats --------------------------------------------------------------
  auto* cmd_cs = app.add_subcommand("classical-stats", "Chebyshev/Mertens sums up to L");
  double cs_L = 1e6, cs_cap = 1e7;
  auto* cs_L_opt = cmd_cs->add_option("--L", cs_L, "prime bound");
  auto* cs_cap_opt = cmd_cs->add_option("--tail-cap", cs_cap, "cap for the 1/p^2 tail scan");

  // ---- nl-witness ----------------------------------------------------------------
  auto* cmd_nl = app.add_subcommand("nl-witness", "empirical NL-compatibility constants");
  std::string nl_field = "quadratic d=2";
  double nl_M = 200.0;
  int nl_sigma = 0;
  auto* nl_field_opt = cmd_nl->add_option("--field", nl_field, "field spec");
  auto* nl_M_opt = cmd_nl->add_option("--M", nl_M, "box radius");
  auto* nl_sigma_opt = cmd_nl->add_option("--sigma-index", nl_sigma, "embedding index");

  // ---- correspondence-roundtrip -----------------------------------------------------
  auto* cmd_cr = app.add_subcommand("correspondence-roundtrip",
                                    "Gauss correspondence on reduced forms");
  i64 cr_dmax = 200;
  std::string cr_form;
  auto* cr_dmax_opt = cmd_cr->add_option("--D-max", cr_dmax, "scan |D| <= D-max");
  auto* cr_form_opt = cmd_cr->add_option("--form", cr_form, "single form a,b,c");

  for (auto* sc : app.get_subcommands(nullptr)) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    static const std::set<std::string> known_keys{
        "experiment", "field", "L", "M", "R", "w", "a", "b", "x0", "box", "chi",
        "k_max", "shape", "form", "sign", "distinct_primes", "theta", "tail_cap", "S", "m", "box_sides",
        "no_associates", "domain_filter", "allow_negative_k",
        "sigma_index", "D_max", "out", "format", "workers", "seed"};
    json cfg = load_config(common.config_path, known_keys);
    merge(workers_opt, cfg, "workers", common.workers);
    common.workers = effective_workers(common.workers);
#ifdef _OPENMP
    if (common.workers > 0) omp_set_num_threads(common.workers);
#endif
    auto base_meta = [&](const std::string& experiment, json config_echo) {
      config_echo["experiment"] = experiment;
      config_echo["seed"] = common.seed;
      return json{{"config", config_echo}};
    };

    if (cmd_pc->parsed()) {
      merge(pc_field_opt, cfg, "field", pc_field);
      merge(pc_L_opt, cfg, "L", pc_L);
      auto F = field_with_class_number(pc_field);
      auto rep = prime_ideal_count(F, pc_L, common.workers);
      RunReport out;
      out.meta = base_meta("primes-count", {{"field", pc_field}, {"L", pc_L}});
      out.meta["seconds"] = rep.seconds;
      out.data = density_report_to_json(rep);
      emit(common, std::move(out));
    } else if (cmd_ch->parsed()) {
      merge(ch_field_opt, cfg, "field", ch_field);
      merge(ch_L_opt, cfg, "L", ch_L);
      auto F = field_with_class_number(ch_field);
      auto rep = chebotarev_ratio(F, ch_L, common.workers);
      RunReport out;
      out.meta = base_meta("chebotarev", {{"field", ch_field}, {"L", ch_L}});
      out.meta["seconds"] = rep.seconds;
      out.data = density_report_to_json(rep);
      emit(common, std::move(out));
    } else if (cmd_ka->parsed()) {
      merge(ka_field_opt, cfg, "field", ka_field);
      merge(ka_L_opt, cfg, "L", ka_L);
      auto F = parse_field_spec(ka_field);
      auto rep = estimate_kappa(F, ka_L);
      RunReport out;
      out.meta = base_meta("kappa", {{"field", ka_field}, {"L", ka_L}});
      out.meta["seconds"] = rep.seconds;
      out.data = density_report_to_json(rep);
      emit(common, std::move(out));
    } else if (cmd_gy->parsed()) {
      merge(gy_field_opt, cfg, "field", gy_field);
      merge(gy_R_opt, cfg, "R", gy_R);
      merge(gy_w_opt, cfg, "w", gy_w);
      merge(gy_b_opt, cfg, "b", gy_b);
      merge(gy_x0_opt, cfg, "x0", gy_x0);
      merge(gy_len_opt, cfg, "box", gy_len);
      merge(gy_chi_opt, cfg, "chi", gy_chi);
      merge(gy_m_opt, cfg, "m", gy_m);
      merge(gy_shape_opt, cfg, "S", gy_shape);
      merge(gy_sides_opt, cfg, "box_sides", gy_box_sides);
      auto P = make_weight_params(gy_R, gy_chi, gy_w);
      GYResult res;
      json config_echo{{"field", gy_field}, {"R", gy_R},   {"w", gy_w},
                       {"b", gy_b},         {"x0", gy_x0}, {"box", gy_len},
                       {"chi", gy_chi}};
      if (gy_shape.empty()) {
        res = gy_average_rational(P, gy_b, gy_x0, gy_len, common.workers);
      } else {
        // linear-forms family mode: theta_j = W psi_j + b over a t-dim box
        auto F = parse_field_spec(gy_field);
        Shape S = standardize(load_shape_file(gy_shape));
        auto fam = build_linear_forms(S);
        if (gy_m < 1 || size_t(gy_m) > fam.forms.size())
          throw domain_error("m must lie in [1, family size]");
        GYConfig gcfg;
        gcfg.F = &F;
        gcfg.P = P;
        for (i64 j = 0; j < gy_m; ++j) gcfg.psis.push_back(fam.forms[size_t(j)]);
        ZVec bcoords(F.n, 0);
        bcoords[0] = gy_b;
        gcfg.shifts.assign(size_t(gy_m), bcoords);
        if (gy_box_sides.empty()) gy_box_sides.assign(size_t(fam.t), 50);
        if (gy_box_sides.size() != size_t(fam.t))
          throw domain_error("box_sides must list " + std::to_string(fam.t) + " lengths");
        for (i64 len : gy_box_sides) gcfg.box.push_back({gy_x0, gy_x0 + len - 1});
        res = gy_average(gcfg, common.workers);
        config_echo["S"] = gy_shape;
        config_echo["m"] = gy_m;
        config_echo["box_sides"] = gy_box_sides;
      }
      RunReport out;
      out.meta = base_meta("gy-check", config_echo);
      out.meta["seconds"] = res.seconds;
      out.data = gy_result_to_json(res);
      emit(common, std::move(out));
    } else if (cmd_cf->parsed()) {
      merge(cf_field_opt, cfg, "field", cf_field);
      merge(cf_shape_opt, cfg, "shape", cf_shape);
      merge(cf_M_opt, cfg, "M", cf_M);
      merge(cf_k_opt, cfg, "k_max", cf_kmax);
      merge(cf_na_opt, cfg, "no_associates", cf_no_assoc);
      merge(cf_dom_opt, cfg, "domain_filter", cf_domain);
      merge(cf_negk_opt, cfg, "allow_negative_k", cf_neg_k);
      if (cf_shape.empty()) throw domain_error("constellation-find needs --shape");
      auto F = parse_field_spec(cf_field);
      Shape S = load_shape_file(cf_shape);
      const DomainSpec* filter = nullptr;
      std::optional<DomainSpec> domain;
      if (cf_domain) {
        domain.emplace(make_domain(F));
        filter = &*domain;
      }
      auto primes = enumerate_prime_elements(F, cf_M, filter, common.workers);
      auto found =
          find_constellations(F, primes, S, cf_kmax, cf_no_assoc, common.workers, cf_neg_k);
      auto counts = count_constellations(F, primes, S, cf_kmax);
      RunReport out;
      out.meta = base_meta("constellation-find", {{"field", cf_field},
                                                  {"M", cf_M},
                                                  {"k_max", cf_kmax},
                                                  {"shape", cf_shape},
                                                  {"no_associates", cf_no_assoc},
                                                  {"domain_filter", cf_domain},
                                                  {"allow_negative_k", cf_neg_k}});
      json rows = json::array();
      for (const auto& c : found) rows.push_back(constellation_to_json(c));
      out.data = json{{"prime_points", primes.size()},
                      {"constellations", rows},
                      {"N_S", counts.n_s},
                      {"N_S_sharp", counts.n_s_sharp}};
      emit(common, std::move(out));
    } else if (cmd_qf->parsed()) {
      merge(qf_form_opt, cfg, "form", qf_form);
      merge(qf_shape_opt, cfg, "shape", qf_shape);
      merge(qf_M_opt, cfg, "M", qf_M);
      merge(qf_k_opt, cfg, "k_max", qf_kmax);
      merge(qf_sign_opt, cfg, "sign", qf_sign);
      merge(qf_distinct_opt, cfg, "distinct_primes", qf_distinct);
      merge(qf_theta_opt, cfg, "theta", qf_theta);
      if (qf_shape.empty()) throw domain_error("quadform-constellation needs --shape");
      QuadForm f = parse_form(qf_form);
      Shape S = load_shape_file(qf_shape);
      auto found =
          quadform_constellation(f, S, qf_M, qf_kmax, qf_sign, qf_distinct, qf_theta,
                                 common.workers);
      RunReport out;
      out.meta = base_meta("quadform-constellation", {{"form", qf_form},
                                                      {"shape", qf_shape},
                                                      {"M", qf_M},
                                                      {"k_max", qf_kmax},
                                                      {"sign", qf_sign},
                                                      {"distinct_primes", qf_distinct},
                                                      {"theta", qf_theta}});
      json rows = json::array();
      for (const auto& c : found) rows.push_back(qf_constellation_to_json(c));
      out.data = json{{"constellations", rows}, {"found", rows.size()}};
      emit(common, std::move(out));
    } else if (cmd_si->parsed()) {
      merge(si_M_opt, cfg, "M", si_M);
      merge(si_a_opt, cfg, "a", si_a);
      auto rep = short_interval_count(si_M, si_a);
      RunReport out;
      out.meta = base_meta("short-interval", {{"M", si_M}, {"a", si_a}});
      out.meta["seconds"] = rep.seconds;
      out.data = density_report_to_json(rep);
      emit(common, std::move(out));
    } else if (cmd_cs->parsed()) {
      merge(cs_L_opt, cfg, "L", cs_L);
      merge(cs_cap_opt, cfg, "tail_cap", cs_cap);
      auto s = classical_stats(cs_L, cs_cap);
      RunReport out;
      out.meta = base_meta("classical-stats", {{"L", cs_L}, {"tail_cap", cs_cap}});
      out.data = json{{"theta", s.theta},
                      {"theta_bound", 2.0 * std::log(2.0) * cs_L},
                      {"mertens_sum", s.mertens_sum},
                      {"log_L", std::log(cs_L)},
                      {"tail_sum", s.tail_sum},
                      {"tail_cap_used", s.tail_cap_used},
                      {"pi", s.pi}};
      emit(common, std::move(out));
    } else if (cmd_nl->parsed()) {
      merge(nl_field_opt, cfg, "field", nl_field);
      merge(nl_M_opt, cfg, "M", nl_M);
      merge(nl_sigma_opt, cfg, "sigma_index", nl_sigma);
      auto F = parse_field_spec(nl_field);
      auto D = make_domain(F, std::nullopt, nl_sigma);
      auto w = nl_constants(D, nl_M, common.workers);
      RunReport out;
      out.meta = base_meta("nl-witness",
                           {{"field", nl_field}, {"M", nl_M}, {"sigma_index", nl_sigma}});
      out.data = nl_witness_to_json(w);
      out.data["domain"] = domain_to_json(D);
      emit(common, std::move(out));
    } else if (cmd_cr->parsed()) {
      merge(cr_dmax_opt, cfg, "D_max", cr_dmax);
      merge(cr_form_opt, cfg, "form", cr_form);
      json rows = json::array();
      auto dump_form = [&](const QuadForm& f) {
        auto [c, eps] = form_to_ideal(f);
        QuadForm back = ideal_to_form(c, eps);
        json row{{"form", f.str()},
                 {"D", f.disc()},
                 {"f", c.order.f},
                 {"tau", {{"x", c.g2.x.str()}, {"y_sqrt_d", c.g2.y.str()}}},
                 {"basis", {{"g1_x", c.g1.x.str()}, {"g1_y", c.g1.y.str()},
                            {"g2_x", c.g2.x.str()}, {"g2_y", c.g2.y.str()}}},
                 {"epsilon", eps},
                 {"norm", order_ideal_norm(c).str()},
                 {"roundtrip_form", back.str()},
                 {"roundtrip_ok", forms_equivalent(back, f)}};
        rows.push_back(row);
      };
      if (!cr_form.empty()) {
        dump_form(parse_form(cr_form));
      } else {
        for (i64 D = -cr_dmax; D <= cr_dmax; ++D) {
          if (((D % 4) + 4) % 4 > 1) continue;
          i64 root;
          if (D >= 0 && is_perfect_square(D, &root)) continue;
          if (D == 0) continue;
          for (const auto& f : reduced_class_representatives(D)) dump_form(f);
        }
      }
      RunReport out;
      out.meta = base_meta("correspondence-roundtrip",
                           {{"D_max", cr_dmax}, {"form", cr_form}});
      out.data = rows;
      emit(common, std::move(out));
    }
    return 0;
  } catch (const infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
