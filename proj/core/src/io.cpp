#include "nashkit/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace nashkit {

using nlohmann::json;

namespace {

json rat(const Rational& r) { return to_string(r); }

Rational unrat(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(j.get<std::string>());
}

json rat_vec(const RatVec& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(rat(r));
  return out;
}

RatVec unrat_vec(const json& j) {
  RatVec out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(unrat(e));
  return out;
}

json rat_mat(const RatMat& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(rat_vec(row));
  return out;
}

RatMat unrat_mat(const json& j) {
  RatMat out;
  out.reserve(j.size());
  for (const auto& row : j) out.push_back(unrat_vec(row));
  return out;
}

}  // namespace

std::string game_to_json(const BimatrixGame& game) {
  json j;
  j["rows"] = game.n_rows();
  j["cols"] = game.n_cols();
  j["bound"] = rat(game.bound());
  j["R"] = rat_mat(game.R());
  j["C"] = rat_mat(game.C());
  return j.dump();
}

BimatrixGame game_from_json(const std::string& text) {
  json j = json::parse(text);
  BimatrixGame game(unrat_mat(j.at("R")), unrat_mat(j.at("C")), unrat(j.at("bound")));
  if (game.n_rows() != j.at("rows").get<int>() || game.n_cols() != j.at("cols").get<int>()) {
    throw std::invalid_argument("game JSON: declared shape disagrees with matrices");
  }
  return game;
}

std::string profile_to_json(const StrategyProfile& profile) {
  json j;
  j["x"] = rat_vec(profile.x.probs());
  j["y"] = rat_vec(profile.y.probs());
  return j.dump();
}

StrategyProfile profile_from_json(const std::string& text) {
  json j = json::parse(text);
  return {MixedStrategy(unrat_vec(j.at("x"))), MixedStrategy(unrat_vec(j.at("y")))};
}

std::string measure_to_json(const FinitelySupportedMeasure& mu) {
  json atoms = json::array();
  for (const auto& [w, x] : mu.atoms) {
    atoms.push_back(json{{"w", rat(w)}, {"x", rat_vec(x)}});
  }
  return json{{"n", mu.n}, {"atoms", atoms}}.dump();
}

FinitelySupportedMeasure measure_from_json(const std::string& text) {
  json j = json::parse(text);
  std::vector<std::pair<Rational, RatVec>> atoms;
  for (const auto& a : j.at("atoms")) {
    atoms.push_back({unrat(a.at("w")), unrat_vec(a.at("x"))});
  }
  return FinitelySupportedMeasure(j.at("n").get<int>(), std::move(atoms));
}

std::string certificate_to_json_line(const NeCertificate& cert) {
  json j;
  j["x"] = rat_vec(cert.profile.x.probs());
  j["y"] = rat_vec(cert.profile.y.probs());
  j["row_support"] = cert.row_support;
  j["col_support"] = cert.col_support;
  j["welfare"] = rat(cert.welfare);
  j["degenerate"] = cert.degenerate;
  return j.dump();
}

std::string moments_to_json(const PseudoExpectation& pe) {
  json list = json::array();
  for (const auto& [e, v] : pe.moments) {
    list.push_back(json::array({json(e), rat(v)}));
  }
  return json{{"n", pe.n}, {"d", pe.d}, {"moments", list}}.dump();
}

std::string formula_to_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.n_vars << " " << formula.clauses.size() << "\n";
  for (const auto& cl : formula.clauses) {
    for (const auto& lit : cl.lits) {
      out << (lit.negated ? -(lit.var + 1) : (lit.var + 1)) << " ";
    }
    out << "0\n";
  }
  return out.str();
}

CnfFormula formula_from_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfFormula f;
  int declared_clauses = -1;
  std::vector<int> pending;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      ls >> p >> cnf >> f.n_vars >> declared_clauses;
      if (cnf != "cnf") throw std::invalid_argument("DIMACS: expected 'p cnf'");
      continue;
    }
    int v;
    while (ls >> v) {
      if (v == 0) {
        if (pending.size() != 3) throw std::invalid_argument("DIMACS: clauses must have 3 literals");
        Clause cl;
        for (int t = 0; t < 3; ++t) {
          cl.lits[t] = {std::abs(pending[t]) - 1, pending[t] < 0};
        }
        f.clauses.push_back(cl);
        pending.clear();
      } else {
        pending.push_back(v);
      }
    }
  }
  if (!pending.empty()) throw std::invalid_argument("DIMACS: unterminated clause");
  if (declared_clauses >= 0 && declared_clauses != static_cast<int>(f.clauses.size())) {
    throw std::invalid_argument("DIMACS: clause count disagrees with header");
  }
  validate_formula(f);
  return f;
}

std::string graph_to_edge_list(const Graph& graph) {
  std::ostringstream out;
  out << graph.n() << " " << graph.edges().size() << "\n";
  for (const auto& [u, v] : graph.edges()) out << (u + 1) << " " << (v + 1) << "\n";
  return out.str();
}

Graph graph_from_edge_list(const std::string& text) {
  std::istringstream in(text);
  int n, m;
  if (!(in >> n >> m)) throw std::invalid_argument("edge list: missing 'n m' header");
  Graph g(n);
  for (int i = 0; i < m; ++i) {
    int u, v;
    if (!(in >> u >> v)) throw std::invalid_argument("edge list: truncated");
    g.add_edge(u - 1, v - 1);
  }
  return g;
}

std::string free_game_manifest_json(const FreeGame& fg) {
  json j;
  j["seed"] = fg.seed;
  j["n_vars"] = fg.formula.n_vars;
  j["n_clauses"] = fg.formula.clauses.size();
  j["clause_groups"] = fg.clause_groups;
  j["var_groups"] = fg.var_groups;
  j["clause_group_vars"] = fg.clause_group_vars;
  return j.dump();
}

void write_family(const GameFamily& family, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["size"] = family.games.size();
  manifest["params"] = {{"eps", to_string(family.eps)},
                        {"delta", to_string(family.delta)},
                        {"tau", to_string(family.tau)},
                        {"c", to_string(family.c)}};
  manifest["index_ground"] = family.index_sets.ground;
  manifest["index_sets"] = family.index_sets.sets;
  if (family.index_sets.min_l1) {
    manifest["min_l1"] = to_string(*family.index_sets.min_l1);
  }
  manifest["witness"] = json::parse(profile_to_json(family.shared_witness));
  json games = json::array(), canonical = json::array();
  for (size_t i = 0; i < family.games.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "game_%03zu.json", i);
    write_text_file(dir / name, game_to_json(family.games[i]));
    games.push_back(name);
    canonical.push_back(json::parse(profile_to_json(family.canonical[i])));
  }
  manifest["games"] = games;
  manifest["canonical"] = canonical;
  write_text_file(dir / "family.json", manifest.dump(2));
}

GameFamily read_family(const std::filesystem::path& dir) {
  json manifest = json::parse(read_text_file(dir / "family.json"));
  GameFamily fam;
  fam.eps = parse_rational(manifest.at("params").at("eps").get<std::string>());
  fam.delta = parse_rational(manifest.at("params").at("delta").get<std::string>());
  fam.tau = parse_rational(manifest.at("params").at("tau").get<std::string>());
  fam.c = parse_rational(manifest.at("params").at("c").get<std::string>());
  fam.index_sets.ground = manifest.at("index_ground").get<int>();
  for (const auto& s : manifest.at("index_sets")) {
    fam.index_sets.sets.push_back(s.get<IndexSet>());
  }
  if (manifest.contains("min_l1")) {
    fam.index_sets.min_l1 = parse_rational(manifest.at("min_l1").get<std::string>());
  }
  fam.shared_witness = profile_from_json(manifest.at("witness").dump());
  for (const auto& c : manifest.at("canonical")) {
    fam.canonical.push_back(profile_from_json(c.dump()));
  }
  for (const auto& name : manifest.at("games")) {
    fam.games.push_back(game_from_json(read_text_file(dir / name.get<std::string>())));
  }
  if (fam.games.size() != fam.canonical.size()) {
    throw std::invalid_argument("family manifest: games/canonical size mismatch");
  }
  return fam;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace nashkit
