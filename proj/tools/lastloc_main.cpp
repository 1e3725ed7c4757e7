#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lastloc/boolean_function.hpp"
#include "lastloc/codes.hpp"
#include "lastloc/protocols.hpp"
#include "lastloc/report.hpp"
#include "lastloc/theory.hpp"

namespace {

using namespace lastloc;

struct ProtocolOpts {
  std::string name;
  int n = 0;
  int t = 0;
  int j = 1;
  int k0 = 16;
  int deletion_budget = 0;
  double theta = 0.8;
  int retries = 200;
  std::string fn;  // built-in name or hex:... for the function bridge
};

void add_protocol_flags(CLI::App* cmd, ProtocolOpts* opts) {
  cmd->add_option("protocol", opts->name,
                  "and_or, zeros, syndrome, iterated, block_code, or function")
      ->required();
  cmd->add_option("--n", opts->n, "number of cells (or variables)")->required();
  cmd->add_option("--t", opts->t, "syndrome tail length (default k^2 capped at n-1)");
  cmd->add_option("--j", opts->j, "iterated protocol depth");
  cmd->add_option("--k0", opts->k0, "iterated schedule floor");
  cmd->add_option("--deletion-budget", opts->deletion_budget,
                  "override the per-level deletion budget below the last level");
  cmd->add_option("--theta", opts->theta, "block_code tail fraction");
  cmd->add_option("--retries", opts->retries, "block_code construction attempts");
  cmd->add_option("--fn", opts->fn,
                  "function bridge: or, and, xor, and_or, majority, or hex:<table>");
}

nlohmann::json protocol_options_json(const ProtocolOpts& o, std::uint64_t seed) {
  nlohmann::json opts = {{"n", o.n}};
  if (o.name == "syndrome" && o.t > 0) opts["t"] = o.t;
  if (o.name == "iterated") {
    opts["j"] = o.j;
    opts["k0"] = o.k0;
    if (o.deletion_budget > 0) opts["deletion_budget"] = o.deletion_budget;
  }
  if (o.name == "block_code") {
    opts["theta"] = o.theta;
    opts["seed"] = seed;
    opts["retries"] = o.retries;
  }
  if (o.name == "function") opts["fn"] = o.fn;
  return opts;
}

Protocol build_protocol(const ProtocolOpts& o, std::uint64_t seed) {
  if (o.name == "function") {
    if (o.fn.empty()) throw ValidationError("function protocol needs --fn");
    const auto f = o.fn.rfind("hex:", 0) == 0
                       ? theory::BooleanFunction::from_hex(o.n, o.fn.substr(4))
                       : theory::BooleanFunction::named(o.fn, o.n);
    // Restrict to a full-degree core first; the compiler requires it.
    const auto restricted = theory::full_degree_subfunction(f);
    auto p = theory::function_to_protocol(restricted.sub);
    p.params["source"] = o.fn;
    p.params["kept_variables"] = restricted.variables;
    return p;
  }
  return protocols::make_protocol(o.name, protocol_options_json(o, seed));
}

Permutation parse_sigma(const std::string& text) {
  std::vector<Location> order;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      order.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ValidationError("could not parse --sigma entry '" + item + "'");
    }
  }
  Permutation sigma{order};
  sigma.validate();
  return sigma;
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("LASTLOC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

std::uint64_t word_digest(const std::vector<std::uint64_t>& words) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint64_t w : words) h = Rng::mix_seed(h, w);
  return h;
}

std::uint64_t proper_digest(const codes::ProperCode& code) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t idx = 0; idx < code.size(); ++idx) {
    h = Rng::mix_seed(h, idx);
    for (Location loc : code.support(idx)) {
      h = Rng::mix_seed(h, (static_cast<std::uint64_t>(loc) << 1) |
                               static_cast<std::uint64_t>(code.embedded_bit(idx, loc)));
    }
  }
  return h;
}

void emit(const nlohmann::json& doc, bool pretty) {
  std::cout << doc.dump(pretty ? 2 : -1) << "\n";
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator and analysis toolkit for the last-location game"};
  app.require_subcommand(1);

  bool pretty = false;
  std::uint64_t seed = 1;
  int threads_flag = 0;
  app.fallthrough();
  app.add_flag("--pretty", pretty, "indent the JSON output");
  app.add_option("--seed", seed, "seed for anything randomized (default 1)");
  app.add_option("--threads", threads_flag,
                 "worker threads for permutation sweeps (default $LASTLOC_THREADS or 1)");

  // run
  auto* run_cmd = app.add_subcommand("run", "run one game and report the record");
  ProtocolOpts run_opts;
  add_protocol_flags(run_cmd, &run_opts);
  std::string sigma_text;
  bool random_sigma = false;
  int b_flag = -1;
  bool trace = false;
  run_cmd->add_option("--sigma", sigma_text, "arrival order, comma separated");
  run_cmd->add_flag("--random", random_sigma, "draw the arrival order from --seed");
  run_cmd->add_option("--b", b_flag, "forced final symbol: a bit for binary, 1..w otherwise");
  run_cmd->add_flag("--trace", trace, "print per-step writes to stderr");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "edge graph and metrics");
  ProtocolOpts analyze_opts;
  add_protocol_flags(analyze_cmd, &analyze_opts);
  std::string metric = "cost";
  std::string mode = "auto";
  std::uint64_t trials = 10000;
  std::string dot_path;
  EnumLimits limit_defaults;
  int max_sweep = limit_defaults.perm_sweep;
  int max_dfs = limit_defaults.state_dfs;
  int max_entropy = limit_defaults.entropy;
  analyze_cmd->add_option("--metric", metric, "cost, expected, or entropy")
      ->check(CLI::IsMember({"cost", "expected", "entropy"}));
  analyze_cmd->add_option("--mode", mode, "auto, sweep, dfs, or mc")
      ->check(CLI::IsMember({"auto", "sweep", "dfs", "mc"}));
  analyze_cmd->add_option("--trials", trials, "samples for --mode mc");
  analyze_cmd->add_option("--dot", dot_path, "write the edge graph as Graphviz text");
  analyze_cmd->add_option("--max-sweep", max_sweep, "n ceiling for full permutation sweeps");
  analyze_cmd->add_option("--max-dfs", max_dfs, "n ceiling for reachable-state walks");
  analyze_cmd->add_option("--max-entropy", max_entropy, "n ceiling for exhaustive metrics");

  // witness
  auto* witness_cmd = app.add_subcommand("witness", "lower-bound witness construction");
  ProtocolOpts witness_opts;
  add_protocol_flags(witness_cmd, &witness_opts);
  std::string kind = "monotone";
  witness_cmd->add_option("--kind", kind, "monotone or assignment")
      ->check(CLI::IsMember({"monotone", "assignment"}));

  // search
  auto* search_cmd = app.add_subcommand("search", "exact optimal cost for tiny n");
  int search_n = 0;
  int search_budget = 0;
  search_cmd->add_option("--n", search_n, "cells (at most 4)")->required();
  search_cmd->add_option("--budget", search_budget, "test one budget instead of minimizing");

  // code build / code verify
  auto* code_cmd = app.add_subcommand("code", "build or verify code families");
  code_cmd->require_subcommand(1);
  auto* build_cmd = code_cmd->add_subcommand("build", "construct a code and report it");
  std::string code_kind;
  int vt_t = 0;
  int vt_residue = 0;
  std::uint64_t vt_min_size = 0;
  int greedy_k = 0;
  int greedy_d = 1;
  int proper_n = 0;
  int proper_m = 0;
  int proper_distance = 0;
  int proper_retries = 200;
  build_cmd->add_option("kind", code_kind, "vt, greedy, or proper")
      ->required()
      ->check(CLI::IsMember({"vt", "greedy", "proper"}));
  build_cmd->add_option("--t", vt_t, "vt word length");
  build_cmd->add_option("--residue", vt_residue, "vt syndrome residue");
  build_cmd->add_option("--min-size", vt_min_size, "vt words to materialize (default: all)");
  build_cmd->add_option("--k", greedy_k, "greedy word length");
  build_cmd->add_option("--d", greedy_d, "greedy deletion budget");
  build_cmd->add_option("--n", proper_n, "proper code word length");
  build_cmd->add_option("--m", proper_m, "proper code support size");
  build_cmd->add_option("--distance", proper_distance,
                        "proper code target distance (default 2*ceil_sqrt(m)+1)");
  build_cmd->add_option("--retries", proper_retries, "proper code attempts");
  auto* verify_cmd = code_cmd->add_subcommand("verify", "rebuild a stored report and compare");
  std::string verify_file;
  verify_cmd->add_option("--file", verify_file, "path of a code build report")->required();

  CLI11_PARSE(app, argc, argv);

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*run_cmd) {
      const Protocol p = build_protocol(run_opts, seed);
      Permutation sigma = Permutation::identity(p.n);
      if (!sigma_text.empty()) {
        sigma = parse_sigma(sigma_text);
      } else if (random_sigma) {
        Rng rng(seed);
        sigma = random_permutation(p.n, rng);
      }
      int b = b_flag >= 0 ? b_flag : (p.w == 2 ? 0 : 1);
      const Symbol forced = p.w == 2 ? bit_to_symbol(b) : static_cast<Symbol>(b);
      const auto record = run_protocol(p, sigma, forced);
      if (trace) {
        for (std::size_t i = 0; i < record.transcript.size(); ++i) {
          const auto& [loc, s] = record.transcript[i];
          std::cerr << "step " << (i + 1) << ": location " << loc << " <- "
                    << report::external_symbol(s, p.w) << "\n";
        }
      }
      nlohmann::json params = protocol_options_json(run_opts, seed);
      params["protocol"] = run_opts.name;
      params["sigma"] = sigma.order;
      params["b"] = b;
      emit(report::envelope("run", params, seed, elapsed_ms(start),
                            report::run_record_json(p, record)),
           pretty);
      return 0;
    }

    if (*analyze_cmd) {
      const Protocol p = build_protocol(analyze_opts, seed);
      ExecConfig cfg;
      cfg.threads = resolve_threads(threads_flag);
      cfg.limits.perm_sweep = max_sweep;
      cfg.limits.state_dfs = max_dfs;
      cfg.limits.entropy = max_entropy;
      nlohmann::json result;
      if (metric == "cost") {
        if (mode == "mc") throw ValidationError("cost has no Monte Carlo mode");
        const EnumMode m = mode == "sweep"  ? EnumMode::kPermSweep
                           : mode == "dfs"  ? EnumMode::kStateDfs
                                            : EnumMode::kAuto;
        const auto graph = enumerate_edge_graph(p, cfg, m);
        result = report::edge_graph_json(graph);
        result["cost"] = graph.max_degree();
        if (!dot_path.empty()) {
          std::ofstream out(dot_path);
          if (!out) throw ValidationError("cannot write " + dot_path);
          out << report::to_dot(graph);
          result["dot_path"] = dot_path;
        }
      } else if (metric == "expected") {
        const auto r = mode == "mc" ? expected_cost_mc(p, trials, seed, cfg)
                                    : expected_cost(p, cfg);
        result = report::expected_cost_json(r);
      } else {
        const auto r = mode == "mc" ? conditional_entropy_mc(p, trials, seed)
                                    : conditional_entropy(p, cfg);
        result = report::entropy_json(r);
      }
      nlohmann::json params = protocol_options_json(analyze_opts, seed);
      params["protocol"] = analyze_opts.name;
      params["metric"] = metric;
      params["mode"] = mode;
      if (mode == "mc") params["trials"] = trials;
      emit(report::envelope("analyze", params, seed, elapsed_ms(start), std::move(result)),
           pretty);
      return 0;
    }

    if (*witness_cmd) {
      const Protocol p = build_protocol(witness_opts, seed);
      const auto rep = kind == "monotone" ? theory::monotone_witness(p)
                                          : theory::assignment_oblivious_witness(p);
      nlohmann::json params = protocol_options_json(witness_opts, seed);
      params["protocol"] = witness_opts.name;
      params["kind"] = kind;
      emit(report::envelope("witness", params, seed, elapsed_ms(start),
                            report::witness_json(rep)),
           pretty);
      return 0;
    }

    if (*search_cmd) {
      nlohmann::json result;
      if (search_budget > 0) {
        std::uint64_t nodes = 0;
        const bool ok = theory::solver_feasible(search_n, search_budget, &nodes);
        result = {{"n", search_n}, {"budget", search_budget}, {"feasible", ok}, {"nodes", nodes}};
      } else {
        result = report::solver_json(theory::solve_min_cost(search_n));
      }
      nlohmann::json params = {{"n", search_n}};
      if (search_budget > 0) params["budget"] = search_budget;
      emit(report::envelope("search", params, seed, elapsed_ms(start), std::move(result)),
           pretty);
      return 0;
    }

    if (*build_cmd) {
      nlohmann::json result;
      nlohmann::json params;
      if (code_kind == "vt") {
        if (vt_t < 1) throw ValidationError("code build vt needs --t");
        std::uint64_t min_size = vt_min_size;
        if (min_size == 0) {
          if (vt_t > 20) throw ValidationError("pass --min-size for t > 20");
          min_size = codes::VtCode::exact_count(vt_t, vt_residue);
        }
        const codes::VtCode code(vt_t, vt_residue, min_size);
        result = {{"kind", "vt"},
                  {"t", vt_t},
                  {"residue", vt_residue},
                  {"deletion_budget", 1},
                  {"size", code.size()},
                  {"digest", word_digest(code.words())}};
        if (vt_t <= 20) result["exact_count"] = codes::VtCode::exact_count(vt_t, vt_residue);
        if (code.size() <= 4096) result["words"] = code.words();
        params = {{"kind", "vt"}, {"t", vt_t}, {"residue", vt_residue}, {"min_size", min_size}};
      } else if (code_kind == "greedy") {
        if (greedy_k < 2) throw ValidationError("code build greedy needs --k");
        const codes::GreedyDeletionCode code(greedy_k, greedy_d);
        result = {{"kind", "greedy"},
                  {"k", greedy_k},
                  {"d", greedy_d},
                  {"size", code.size()},
                  {"digest", word_digest(code.words())},
                  {"words", code.words()}};
        params = {{"kind", "greedy"}, {"k", greedy_k}, {"d", greedy_d}};
      } else {
        if (proper_n < 1 || proper_m < 1) throw ValidationError("code build proper needs --n and --m");
        const int target =
            proper_distance > 0 ? proper_distance : 2 * ceil_sqrt(proper_m) + 1;
        const codes::ProperCode code(proper_n, proper_m, seed, target, proper_retries);
        result = {{"kind", "proper"},
                  {"n", proper_n},
                  {"m", proper_m},
                  {"seed", seed},
                  {"target_distance", target},
                  {"retries", proper_retries},
                  {"distance", code.distance()},
                  {"met_target", code.met_target()},
                  {"attempts", code.attempts_used()},
                  {"size", code.size()},
                  {"digest", proper_digest(code)}};
        params = {{"kind", "proper"},
                  {"n", proper_n},
                  {"m", proper_m},
                  {"seed", seed},
                  {"target_distance", target},
                  {"retries", proper_retries}};
      }
      emit(report::envelope("code build", params, seed, elapsed_ms(start), std::move(result)),
           pretty);
      return 0;
    }

    if (*verify_cmd) {
      std::ifstream in(verify_file);
      if (!in) throw ValidationError("cannot read " + verify_file);
      nlohmann::json doc = nlohmann::json::parse(in);
      const nlohmann::json& stored = doc.contains("result") ? doc.at("result") : doc;
      const std::string stored_kind = stored.value("kind", "");
      nlohmann::json result = {{"kind", stored_kind}, {"file", verify_file}};
      bool ok = false;
      if (stored_kind == "vt") {
        const codes::VtCode code(stored.at("t").get<int>(), stored.at("residue").get<int>(),
                                 stored.at("size").get<std::size_t>());
        ok = word_digest(code.words()) == stored.at("digest").get<std::uint64_t>() &&
             code.size() == stored.at("size").get<std::size_t>();
        if (ok && stored.contains("words")) {
          ok = code.words() == stored.at("words").get<std::vector<std::uint64_t>>();
        }
      } else if (stored_kind == "greedy") {
        const codes::GreedyDeletionCode code(stored.at("k").get<int>(),
                                             stored.at("d").get<int>());
        ok = code.size() == stored.at("size").get<std::size_t>() &&
             word_digest(code.words()) == stored.at("digest").get<std::uint64_t>();
        if (ok && stored.contains("words")) {
          ok = code.words() == stored.at("words").get<std::vector<std::uint64_t>>();
        }
      } else if (stored_kind == "proper") {
        const codes::ProperCode code(
            stored.at("n").get<int>(), stored.at("m").get<int>(),
            stored.at("seed").get<std::uint64_t>(), stored.at("target_distance").get<int>(),
            stored.at("retries").get<int>());
        ok = code.distance() == stored.at("distance").get<int>() &&
             code.attempts_used() == stored.at("attempts").get<int>() &&
             proper_digest(code) == stored.at("digest").get<std::uint64_t>();
      } else {
        throw ValidationError("unknown code kind '" + stored_kind + "' in " + verify_file);
      }
      result["verified"] = ok;
      emit(report::envelope("code verify", {{"file", verify_file}}, seed, elapsed_ms(start),
                            std::move(result)),
           pretty);
      if (!ok) {
        std::cerr << "error: stored report does not match the rebuilt code\n";
        return 1;
      }
      return 0;
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
