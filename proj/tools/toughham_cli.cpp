// Command-line front end: invariant reports, the cycle construction driver,
// exact oracles, property-test suites, the tightness search, and certified
// family generators. Reports go to stdout as JSON (schema_version 1),
// diagnostics to stderr. Exit 0 means the run completed, including runs that
// found violations; exit 2 means the input or a hypothesis was rejected.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "toughham/generators.hpp"
#include "toughham/graph.hpp"
#include "toughham/harness.hpp"
#include "toughham/invariants.hpp"
#include "toughham/io.hpp"
#include "toughham/oracle.hpp"
#include "toughham/patterns.hpp"
#include "toughham/pipeline.hpp"
#include "toughham/rational.hpp"

namespace {

using nlohmann::json;
using namespace toughham;

constexpr int kSchemaVersion = 1;

struct InputSpec {
  std::string file;           // empty or "-": stdin
  std::string format = "auto";  // auto | graph6 | edges
};

void add_input_options(CLI::App* cmd, InputSpec& in) {
  cmd->add_option("file", in.file, "graph file (graph6 or edge list); omit or '-' for stdin");
  cmd->add_option("--format", in.format, "input format: auto, graph6, edges")
      ->check(CLI::IsMember({"auto", "graph6", "edges"}));
}

std::string slurp(const InputSpec& in) {
  if (in.file.empty() || in.file == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(in.file);
  if (!f) throw std::invalid_argument("cannot open input file: " + in.file);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Graph read_graph(const InputSpec& in) {
  std::string text = slurp(in);
  if (in.format == "edges") return parse_edge_list(text);
  if (in.format == "graph6") {
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty()) return parse_graph6(line);
    }
    throw ParseError("empty graph6 input", 0);
  }
  return parse_graph_auto(text);
}

json rational_json(const Rational& r) { return r.str(); }

json vertexset_json(const VertexSet& s) {
  json arr = json::array();
  for (int v = s.first(); v != -1; v = s.next(v)) arr.push_back(v);
  return arr;
}

json cycle_json(const Cycle& c) {
  json arr = json::array();
  for (int v : c.verts) arr.push_back(v);
  return arr;
}

json path_json(const Path& p) {
  json arr = json::array();
  for (int v : p.verts) arr.push_back(v);
  return arr;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int run_analyze(const InputSpec& in) {
  Graph g = read_graph(in);
  json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "analyze";
  out["n"] = g.n();
  out["m"] = g.m();
  out["graph6"] = emit_graph6(g);
  out["connected"] = is_connected(g);
  auto conn = connectivity(g);
  out["connectivity"] = conn.kappa;
  auto ind = independence_number(g);
  out["independence_number"] = ind.alpha;
  out["min_degree"] = g.n() > 0 ? min_degree(g).delta : 0;
  json freeness;
  for (int k = 1; k <= 3; ++k) freeness[std::to_string(k)] = is_p3_kp1_free(g, k);
  out["p3_kp1_free"] = freeness;
  if (g.n() <= 18) {
    auto t = toughness(g);
    out["toughness"] = rational_json(t.value);
    out["tough_set"] = t.tough_set ? vertexset_json(*t.tough_set) : json(nullptr);
  } else {
    out["toughness"] = nullptr;
    out["tough_set"] = nullptr;
    std::cerr << "toughness skipped: exact computation requires n <= 18\n";
  }
  emit(out);
  return 0;
}

int run_cycle(const InputSpec& in, const std::string& t_str, const std::string& cert) {
  Graph g = read_graph(in);
  TheoremInstance inst;
  if (!t_str.empty()) {
    Rational bound = Rational::parse(t_str);
    inst = make_analytic_instance(g, kRequiredToughness, bound,
                                  cert.empty() ? "analytic" : cert, true);
  } else if (g.n() <= kToughnessExactLimit) {
    inst = make_computed_instance(g, kRequiredToughness);
  } else {
    throw std::invalid_argument(
        "graph too large for exact toughness; pass --t with a certified bound");
  }
  if (!t_str.empty() && g.n() > 60)
    std::cerr << "freeness trusted from the analytic certificate (n > 60)\n";

  json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "cycle";
  out["n"] = g.n();
  out["graph6"] = emit_graph6(g);
  out["t"] = rational_json(inst.t);
  out["certified_bound"] = rational_json(inst.certified_bound);
  out["certificate"] = inst.provenance;
  out["freeness_verified"] = inst.freeness_verified;
  try {
    CycleTrace tr = construct_hamiltonian_cycle(inst);
    bool ok = false;
    if (tr.cycle) {
      std::string why;
      ok = is_hamiltonian_cycle(g, *tr.cycle, &why);
      if (!ok) std::cerr << "emitted cycle failed validation: " << why << "\n";
    }
    out["cycle"] = tr.cycle ? cycle_json(*tr.cycle) : json(nullptr);
    out["hamiltonian"] = ok;
    out["branch_log"] = tr.branch_log;
    out["splice_log"] = tr.splice_log;
  } catch (const structural_anomaly& e) {
    out["cycle"] = nullptr;
    out["hamiltonian"] = false;
    out["anomaly"] = e.what();
    std::cerr << "structural anomaly: " << e.what() << "\n";
  }
  emit(out);
  return 0;
}

int run_oracle(const InputSpec& in, bool path_mode, const std::vector<int>& ends) {
  Graph g = read_graph(in);
  json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "oracle";
  out["n"] = g.n();
  out["graph6"] = emit_graph6(g);
  OracleAnswer ans;
  if (!ends.empty()) {
    int u = ends[0], v = ends[1];
    if (u < 0 || v < 0 || u >= g.n() || v >= g.n() || u == v)
      throw std::invalid_argument("--ends wants two distinct vertices in range");
    out["mode"] = "path";
    out["ends"] = json::array({u, v});
    ans = hamiltonian_path_oracle(g, u, v);
    out["witness"] = ans.yes && ans.path ? path_json(*ans.path) : json(nullptr);
  } else if (path_mode) {
    out["mode"] = "path";
    ans = hamiltonian_path_oracle(g);
    out["witness"] = ans.yes && ans.path ? path_json(*ans.path) : json(nullptr);
  } else {
    out["mode"] = "cycle";
    ans = hamiltonian_cycle_oracle(g);
    out["witness"] = ans.yes && ans.cycle ? cycle_json(*ans.cycle) : json(nullptr);
  }
  out["yes"] = ans.yes;
  out["nodes_explored"] = ans.nodes_explored;
  out["method"] = ans.method == OracleMethod::DP ? "dp" : "backtrack";
  emit(out);
  return 0;
}

int run_lemma(const std::string& id, bool list, const SuiteOptions& opt) {
  if (list) {
    json out;
    out["schema_version"] = kSchemaVersion;
    out["command"] = "lemma";
    out["lemmas"] = registered_lemma_ids();
    emit(out);
    return 0;
  }
  if (id.empty()) throw std::invalid_argument("lemma: give a suite id or --list");
  LemmaReport rep = run_lemma_suite(id, opt);
  json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "lemma";
  out["lemma_id"] = rep.lemma_id;
  out["instances_tested"] = rep.instances_tested;
  out["pass"] = rep.pass();
  json viols = json::array();
  for (const auto& v : rep.violations)
    viols.push_back({{"graph6", v.graph6}, {"clause", v.clause}, {"details", v.details}});
  out["violations"] = viols;
  out["violation_count"] = rep.violations.size();
  out["runtime_seconds"] = rep.runtime_seconds;
  out["seed"] = rep.seed;
  out["stats"] = rep.stats;
  emit(out);
  return 0;
}

int run_search(const std::string& t_max, int n_max, long long budget, std::uint64_t seed,
               int threads) {
  TightnessReport rep = tightness_search(Rational::parse(t_max), n_max, budget, seed, threads);
  json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "search";
  out["t_max"] = rational_json(rep.threshold);
  out["n_max"] = rep.n_max;
  out["budget"] = rep.budget;
  out["seed"] = rep.seed;
  out["instances_tested"] = rep.instances_tested;
  json recs = json::array();
  for (const auto& r : rep.records)
    recs.push_back({{"graph6", r.graph6}, {"n", r.n}, {"tau", rational_json(r.tau)}});
  out["records"] = recs;
  out["record_count"] = rep.records.size();
  out["max_tau"] = rational_json(rep.max_tau);
  out["at_or_above_threshold"] = rep.at_or_above_threshold;
  out["runtime_seconds"] = rep.runtime_seconds;
  emit(out);
  return 0;
}

int run_gen(const std::string& family, const std::vector<int>& params, const std::string& out_file,
            bool raw) {
  CertifiedGraph cg;
  if (family == "multipartite") {
    if (params.empty()) throw std::invalid_argument("gen multipartite: give part sizes");
    cg = certified_complete_multipartite(params);
  } else if (family == "join") {
    if (params.size() < 2)
      throw std::invalid_argument("gen join: give the joined clique size then component sizes");
    cg = certified_clique_join_cliques(params[0],
                                       std::vector<int>(params.begin() + 1, params.end()));
  } else if (family == "bridged") {
    if (params.size() != 3)
      throw std::invalid_argument("gen bridged: give exactly s q p");
    cg = certified_bridged_clique_pair(params[0], params[1], params[2]);
  } else {
    throw std::invalid_argument("gen: unknown family '" + family +
                                "' (multipartite, join, bridged)");
  }
  std::string g6 = emit_graph6(cg.graph);
  if (!out_file.empty()) {
    std::ofstream f(out_file);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_file);
    f << g6 << "\n";
  }
  if (raw) {
    std::cout << g6 << "\n";
    return 0;
  }
  json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "gen";
  out["family"] = family;
  out["params"] = params;
  out["n"] = cg.graph.n();
  out["m"] = cg.graph.m();
  out["toughness_bound"] = rational_json(cg.toughness_bound);
  out["freeness_k"] = cg.freeness_k;
  out["formula"] = cg.formula;
  out["graph6"] = g6;
  if (!out_file.empty()) out["out"] = out_file;
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structural toughness and hamiltonicity toolkit"};
  app.require_subcommand(1);

  InputSpec analyze_in;
  auto* analyze = app.add_subcommand("analyze", "invariants and freeness report");
  add_input_options(analyze, analyze_in);

  InputSpec cycle_in;
  std::string cycle_t, cycle_cert;
  auto* cycle = app.add_subcommand("cycle", "run the hamiltonian cycle construction");
  add_input_options(cycle, cycle_in);
  cycle->add_option("--t", cycle_t, "certified toughness lower bound, e.g. 15 or 47/3");
  cycle->add_option("--certificate", cycle_cert, "label of the family backing the bound");

  InputSpec oracle_in;
  bool oracle_path = false;
  std::vector<int> oracle_ends;
  auto* oracle = app.add_subcommand("oracle", "exact hamiltonian cycle/path search");
  add_input_options(oracle, oracle_in);
  oracle->add_flag("--path", oracle_path, "search for a spanning path instead of a cycle");
  oracle->add_option("--ends", oracle_ends, "fix the two endpoints of the spanning path")
      ->expected(2);

  std::string lemma_id;
  bool lemma_list = false;
  SuiteOptions lemma_opt;
  auto* lemma = app.add_subcommand("lemma", "run a registered property-test suite");
  lemma->add_option("id", lemma_id, "suite id (see --list)");
  lemma->add_flag("--list", lemma_list, "print the registered suite ids");
  lemma->add_option("--n-max", lemma_opt.n_max, "order cap for enumeration suites");
  lemma->add_option("--budget", lemma_opt.budget, "instance count for sampled suites");
  lemma->add_option("--seed", lemma_opt.seed, "base seed for sampled suites");
  lemma->add_option("--threads", lemma_opt.threads, "worker override (default TOUGHHAM_THREADS)");

  std::string search_t = "15";
  int search_n_max = 10;
  long long search_budget = 2000;
  std::uint64_t search_seed = 1;
  int search_threads = 0;
  auto* search = app.add_subcommand("search", "hunt for tough nonhamiltonian free graphs");
  search->add_option("--t-max", search_t, "toughness threshold to report against");
  search->add_option("--n-max", search_n_max, "largest order to sample (max 18)");
  search->add_option("--budget", search_budget, "random samples beyond the enumerated range");
  search->add_option("--seed", search_seed, "sampling seed");
  search->add_option("--threads", search_threads, "worker override (default TOUGHHAM_THREADS)");

  std::string gen_family;
  std::vector<int> gen_params;
  std::string gen_out;
  bool gen_raw = false;
  auto* gen = app.add_subcommand("gen", "emit a certified family instance");
  gen->add_option("family", gen_family, "multipartite | join | bridged")->required();
  gen->add_option("params", gen_params, "family parameters (sizes)")->required();
  gen->add_option("--out", gen_out, "also write the graph6 line to this file");
  gen->add_flag("--raw", gen_raw, "print only the graph6 line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; malformed invocations count as input errors.
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return run_analyze(analyze_in);
    if (*cycle) return run_cycle(cycle_in, cycle_t, cycle_cert);
    if (*oracle) return run_oracle(oracle_in, oracle_path, oracle_ends);
    if (*lemma) return run_lemma(lemma_id, lemma_list, lemma_opt);
    if (*search)
      return run_search(search_t, search_n_max, search_budget, search_seed, search_threads);
    if (*gen) return run_gen(gen_family, gen_params, gen_out, gen_raw);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
