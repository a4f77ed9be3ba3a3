#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "nashkit/harness.hpp"
#include "nashkit/io.hpp"
#include "nashkit/rounding.hpp"
#include "nashkit/suite.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nashkit;

namespace {

IndexSet parse_indices(const std::string& csv) {
  IndexSet out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item) - 1);  // 1-based on the command line
  }
  std::sort(out.begin(), out.end());
  return out;
}

BimatrixGame load_game(const std::string& path) { return game_from_json(read_text_file(path)); }

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    write_text_file(out_path, text);
  }
}

MixedStrategy strategy_from_json_text(const std::string& text) {
  json j = json::parse(text);
  RatVec v;
  for (const auto& e : j) {
    v.push_back(e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long>()));
  }
  return MixedStrategy(std::move(v));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hard bimatrix game families, equilibrium oracles, pseudo-expectations, "
               "sparse rounding and OV query experiments"};
  app.require_subcommand(1);

  uint64_t seed = 20250810;
  std::string out_dir = ".";
  std::string format = "json";
  app.add_option("--seed", seed, "global RNG seed")->capture_default_str();
  app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  app.add_option("--format", format, "summary format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  int exit_code = 0;

  // ---- gadget ----
  auto* gadget = app.add_subcommand("gadget", "construct hard games and families");
  std::string g_type, g_graph, g_subset, g_out;
  int g_k = 3, g_m = 2, g_n = 4, g_l = 4, g_K = 4;
  std::string g_delta = "1/4", g_M = "2";
  gadget->add_option("--type", g_type,
                     "is | is-scaled | clique | gmp | exp-good | dp | const-good | "
                     "family-exp | family-quasipoly")
      ->required();
  gadget->add_option("--graph", g_graph, "edge-list file ('n m' header, 1-indexed pairs)");
  gadget->add_option("--k", g_k, "independent-set / clique size");
  gadget->add_option("--m", g_m, "matching-pennies dimension");
  gadget->add_option("--n", g_n, "good-game dimension");
  gadget->add_option("--subset", g_subset, "comma separated 1-based indices");
  gadget->add_option("--l", g_l, "subset size for the DP construction (even)");
  gadget->add_option("--K", g_K, "exp-family good-game dimension");
  gadget->add_option("--delta", g_delta, "clique-game delta (rational)");
  gadget->add_option("--M", g_M, "clique-game M (rational)");
  gadget->add_option("--out", g_out, "output file (games) or directory (families)");
  gadget->callback([&]() {
    auto graph = [&]() {
      if (g_graph.empty()) throw CLI::ValidationError("--graph required for this type");
      return graph_from_edge_list(read_text_file(g_graph));
    };
    if (g_type == "is") {
      emit(game_to_json(is_game(graph(), g_k)), g_out);
    } else if (g_type == "is-scaled") {
      emit(game_to_json(is_game_scaled(graph(), g_k)), g_out);
    } else if (g_type == "clique") {
      emit(game_to_json(clique_game(graph(), g_k, parse_rational(g_delta), parse_rational(g_M))),
           g_out);
    } else if (g_type == "gmp") {
      emit(game_to_json(gmp_game(g_m)), g_out);
    } else if (g_type == "exp-good") {
      emit(game_to_json(exp_good_game(g_n, parse_indices(g_subset))), g_out);
    } else if (g_type == "dp") {
      emit(game_to_json(dp_game(g_l, parse_indices(g_subset))), g_out);
    } else if (g_type == "const-good") {
      emit(game_to_json(const_good_game(g_l, parse_indices(g_subset))), g_out);
    } else if (g_type == "family-exp" || g_type == "family-quasipoly") {
      FamilyConfig cfg;
      cfg.kind = g_type == "family-exp" ? FamilyKind::Exp : FamilyKind::Quasipoly;
      cfg.graph = graph();
      cfg.k = g_k;
      cfg.K = g_K;
      cfg.l = g_l;
      GameFamily fam = build_hard_family(cfg);
      fs::path dir = g_out.empty() ? fs::path(out_dir) / "family" : fs::path(g_out);
      write_family(fam, dir);
      std::cout << "wrote " << fam.games.size() << " members to " << dir << "\n";
    } else {
      throw CLI::ValidationError("unknown gadget type: " + g_type);
    }
  });

  // ---- enumerate ----
  auto* enumerate = app.add_subcommand("enumerate", "brute-force exact equilibria (JSON lines)");
  std::string e_game, e_out;
  int e_max_support = 0;
  enumerate->add_option("--game", e_game, "game JSON file")->required();
  enumerate->add_option("--max-support", e_max_support, "support size cap (0 = full)");
  enumerate->add_option("--out", e_out, "output file (default stdout)");
  enumerate->callback([&]() {
    BimatrixGame game = load_game(e_game);
    const int cap = e_max_support > 0 ? e_max_support : std::max(game.n_rows(), game.n_cols());
    std::ostringstream lines;
    for (const auto& cert : enumerate_ne(game, cap)) {
      lines << certificate_to_json_line(cert) << "\n";
    }
    if (e_out.empty()) {
      std::cout << lines.str();
    } else {
      write_text_file(e_out, lines.str());
    }
  });

  // ---- oracle ----
  auto* oracle = app.add_subcommand("oracle", "equilibrium oracles (exit 0 iff accept)");
  oracle->require_subcommand(1);
  std::string o_game, o_profile, o_strategy, o_side = "row", o_rows, o_cols, o_eps = "0";

  auto* verify = oracle->add_subcommand("verify", "full-profile verification");
  verify->add_option("--game", o_game)->required();
  verify->add_option("--profile", o_profile, "profile JSON file")->required();
  verify->add_option("--eps", o_eps, "tolerance (rational)");
  verify->callback([&]() {
    auto ans = verification_oracle(load_game(o_game), profile_from_json(read_text_file(o_profile)),
                                   parse_rational(o_eps));
    std::cout << (ans.accepted() ? "accept" : "reject") << "\n";
    exit_code = ans.accepted() ? 0 : 1;
  });

  auto* partial = oracle->add_subcommand("partial", "one-sided completion feasibility");
  partial->add_option("--game", o_game)->required();
  partial->add_option("--side", o_side)->check(CLI::IsMember({"row", "col"}));
  partial->add_option("--strategy", o_strategy, "JSON array of rationals")->required();
  partial->add_option("--eps", o_eps);
  partial->callback([&]() {
    auto ans = partial_verification_oracle(
        load_game(o_game), o_side == "row" ? Side::Row : Side::Col,
        strategy_from_json_text(read_text_file(o_strategy)), parse_rational(o_eps));
    std::cout << (ans.accepted() ? "accept" : "reject") << "\n";
    exit_code = ans.accepted() ? 0 : 1;
  });

  auto* support = oracle->add_subcommand("support", "well-supported NE within given supports");
  support->add_option("--game", o_game)->required();
  support->add_option("--rows", o_rows, "comma separated 1-based rows")->required();
  support->add_option("--cols", o_cols, "comma separated 1-based cols")->required();
  support->add_option("--eps", o_eps);
  support->callback([&]() {
    auto ans = support_oracle(load_game(o_game), parse_indices(o_rows), parse_indices(o_cols),
                              parse_rational(o_eps));
    std::cout << (ans.accepted() ? "accept" : "reject") << "\n";
    exit_code = ans.accepted() ? 0 : 1;
  });

  // ---- freegame ----
  auto* freegame = app.add_subcommand("freegame", "3SAT free game and cooperative encoding");
  std::string f_cnf, f_out, f_coop_out;
  int f_n = 5, f_m = 10, f_g1 = 2, f_g2 = 2;
  bool f_random = false, f_value = false;
  freegame->add_option("--cnf", f_cnf, "DIMACS file (omit with --random)");
  freegame->add_flag("--random", f_random, "generate a random 3SAT instance");
  freegame->add_option("--n", f_n, "variables for --random");
  freegame->add_option("--m", f_m, "clauses for --random");
  freegame->add_option("--g1", f_g1, "clause groups");
  freegame->add_option("--g2", f_g2, "variable groups");
  freegame->add_flag("--value", f_value, "print the brute-force game value");
  freegame->add_option("--coop-out", f_coop_out, "write the cooperative game JSON here");
  freegame->add_option("--out", f_out, "manifest output (default stdout)");
  freegame->callback([&]() {
    CnfFormula formula =
        f_random ? random_3sat(f_n, f_m, seed) : formula_from_dimacs(read_text_file(f_cnf));
    FreeGame fg = build_free_game(formula, f_g1, f_g2, seed);
    emit(free_game_manifest_json(fg), f_out);
    if (!f_coop_out.empty()) write_text_file(f_coop_out, game_to_json(cooperative_game(fg)));
    if (f_value) std::cout << "value " << to_string(game_value(fg)) << "\n";
  });

  // ---- pseudo ----
  auto* pseudo = app.add_subcommand("pseudo", "pseudo-expectation checks");
  std::string p_measure, p_game, p_eps = "0", p_moments_out;
  int p_degree = 4;
  bool p_check_pe = false;
  pseudo->add_option("--measure", p_measure, "measure JSON file")->required();
  pseudo->add_option("--degree", p_degree, "moment degree");
  pseudo->add_flag("--check-pe", p_check_pe, "also run the pseudo-equilibrium check");
  pseudo->add_option("--game", p_game, "game JSON (for --check-pe)");
  pseudo->add_option("--eps", p_eps, "tolerance for --check-pe");
  pseudo->add_option("--export-moments", p_moments_out, "write the moment table here");
  pseudo->callback([&]() {
    auto mu = measure_from_json(read_text_file(p_measure));
    PseudoExpectation pe = moments_from_measure(mu, p_degree);
    auto rep = validate(pe, default_psd_tolerance(pe));
    json j{{"normalized", rep.normalized},
           {"min_eigenvalue", rep.min_eigenvalue},
           {"valid", rep.valid}};
    if (p_check_pe) {
      if (p_game.empty()) throw CLI::ValidationError("--check-pe needs --game");
      j["pseudo_equilibrium"] = is_pseudo_equilibrium(pe, load_game(p_game),
                                                      parse_rational(p_eps),
                                                      default_psd_tolerance(pe));
    }
    std::cout << j.dump(2) << "\n";
    if (!p_moments_out.empty()) write_text_file(p_moments_out, moments_to_json(pe));
    if (!rep.valid) exit_code = 1;
  });

  // ---- round ----
  auto* round = app.add_subcommand("round", "sparse-sampling rounding experiment");
  std::string r_game, r_measure, r_eps = "3/10";
  int r_trials = 200, r_k = 0;
  round->add_option("--game", r_game)->required();
  round->add_option("--measure", r_measure)->required();
  round->add_option("--eps", r_eps, "tolerance (rational)");
  round->add_option("--trials", r_trials);
  round->add_option("--k", r_k, "sparsity (0 = 2 ln(n)/eps^2)");
  round->callback([&]() {
    BimatrixGame game = load_game(r_game);
    auto mu = measure_from_json(read_text_file(r_measure));
    std::vector<RoundingTrial> trials;
    RoundingReport rep =
        rounding_experiment(mu, game, parse_rational(r_eps), r_k, r_trials, seed, &trials);

    fs::create_directories(out_dir);
    std::ofstream csv(fs::path(out_dir) / "rounding_trials.csv");
    csv << "trial,S,T,row_payoff,col_payoff,row_regret,col_regret,eps_ne,payoff_floor\n";
    for (size_t t = 0; t < trials.size(); ++t) {
      const auto& tr = trials[t];
      auto join = [](const Multiset& s) {
        std::string out;
        for (size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i] + 1);
        return out;
      };
      csv << t << ",\"" << join(tr.S) << "\",\"" << join(tr.T) << "\"," << to_string(tr.row_payoff)
          << "," << to_string(tr.col_payoff) << "," << to_string(tr.row_regret) << ","
          << to_string(tr.col_regret) << "," << tr.eps_ne << "," << tr.payoff_floor << "\n";
    }
    json summary{{"trials", rep.trials},        {"k", rep.k},
                 {"eps", to_string(rep.eps)},   {"success_rate", rep.success_rate},
                 {"payoff_floor_rate", rep.payoff_floor_rate},
                 {"m_A", to_string(rep.m_A)},   {"m_B", to_string(rep.m_B)}};
    write_text_file(fs::path(out_dir) / "rounding_summary.json", summary.dump(2));
    std::cout << summary.dump(2) << "\n";
  });

  // ---- ov-sim ----
  auto* ovsim = app.add_subcommand("ov-sim", "oblivious-rounding query simulation");
  std::string v_family, v_oracle = "full", v_eps = "0";
  int v_runs = 200;
  ovsim->add_option("--family", v_family, "family directory (family.json)")->required();
  ovsim->add_option("--oracle", v_oracle)->check(CLI::IsMember({"full", "partial", "support"}));
  ovsim->add_option("--eps", v_eps);
  ovsim->add_option("--runs", v_runs);
  ovsim->callback([&]() {
    GameFamily fam = read_family(v_family);
    OracleKind kind = v_oracle == "full"      ? OracleKind::Full
                      : v_oracle == "partial" ? OracleKind::Partial
                                              : OracleKind::Support;
    NaiveEnumerationStrategy strategy(fam, kind);
    auto result = ov_simulate(fam, strategy, kind, parse_rational(v_eps), v_runs, seed);
    bool audit = elimination_audit(fam, result.records, parse_rational(v_eps));
    json j{{"runs", result.summary.runs},
           {"mean_queries", result.summary.mean_queries},
           {"min_queries", result.summary.min_queries},
           {"max_queries", result.summary.max_queries},
           {"identification_rate", result.summary.identification_rate},
           {"elimination_audit", audit}};
    std::cout << j.dump(2) << "\n";

    fs::create_directories(out_dir);
    std::ofstream csv(fs::path(out_dir) / "ov_runs.csv");
    csv << "run,target,queries,identified\n";
    for (size_t r = 0; r < result.records.size(); ++r) {
      const auto& rec = result.records[r];
      csv << r << "," << rec.target_index << "," << rec.queries_used << "," << rec.identified
          << "\n";
    }
    if (!audit) exit_code = 1;
  });

  // ---- suite ----
  auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
  std::string s_only;
  suite->add_option("--only", s_only, "comma separated criterion ids");
  suite->callback([&]() {
    SuiteConfig cfg;
    cfg.seed = seed;
    cfg.log = &std::cout;
    if (!s_only.empty()) {
      std::stringstream ss(s_only);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.only.push_back(std::stoi(item));
    }
    auto results = run_acceptance_suite(cfg);

    fs::create_directories(out_dir);
    json manifest = json::array();
    std::ofstream csv(fs::path(out_dir) / "suite_results.csv");
    csv << "id,name,passed,seconds,detail\n";
    bool all_ok = true;
    for (const auto& r : results) {
      all_ok = all_ok && r.passed;
      manifest.push_back(json{{"id", r.id},
                              {"name", r.name},
                              {"passed", r.passed},
                              {"seconds", r.seconds},
                              {"detail", r.detail}});
      csv << r.id << ",\"" << r.name << "\"," << r.passed << "," << r.seconds << ",\"" << r.detail
          << "\"\n";
    }
    write_text_file(fs::path(out_dir) / "suite_results.json", manifest.dump(2));
    exit_code = all_ok ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
