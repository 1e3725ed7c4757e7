#include "lastloc/report.hpp"

#include <algorithm>
#include <sstream>

#include "lastloc/codes.hpp"

namespace lastloc::report {

int external_symbol(Symbol s, int w) {
  return w == 2 ? s - 1 : static_cast<int>(s);
}

nlohmann::json run_record_json(const Protocol& p, const GameRunRecord& record) {
  nlohmann::json transcript = nlohmann::json::array();
  for (const auto& [loc, s] : record.transcript) {
    transcript.push_back({{"location", loc}, {"symbol", external_symbol(s, p.w)}});
  }
  nlohmann::json out = {
      {"protocol", p.name},
      {"n", p.n},
      {"w", p.w},
      {"sigma", record.sigma.order},
      {"last", record.sigma.last()},
      {"b", external_symbol(record.final_symbol, p.w)},
      {"transcript", transcript},
      {"edge", record.edge.render()},
      {"final", record.final_array.render()},
  };
  if (record.has_bob) {
    out["bob"] = {{"ok", record.bob_ok},
                  {"output", record.bob_output},
                  {"size", record.bob_output.size()}};
    if (!record.bob_error.empty()) out["bob"]["error"] = record.bob_error;
  }
  if (p.name == "syndrome" && p.w == 2) {
    const auto g = codes::gamma(record.final_array);
    const int k = p.params.value("k", codes::index_bits(p.n));
    std::string bits;
    for (int i = k - 1; i >= 0; --i) bits += static_cast<char>('0' + ((g >> i) & 1));
    out["gamma"] = bits;
  }
  return out;
}

nlohmann::json edge_graph_json(const EdgeGraph& graph) {
  nlohmann::json histogram = nlohmann::json::object();
  for (const auto& [deg, count] : graph.degree_histogram()) {
    histogram[std::to_string(deg)] = count;
  }
  return {{"n", graph.n()},
          {"w", graph.w()},
          {"edge_count", graph.edge_count()},
          {"max_degree", graph.max_degree()},
          {"degree_histogram", histogram}};
}

nlohmann::json expected_cost_json(const ExpectedCostResult& r) {
  nlohmann::json out = {{"estimate", r.estimate},
                        {"exhaustive", r.exhaustive},
                        {"samples", r.samples}};
  if (r.exhaustive) {
    out["exact"] = {{"num", r.exact.num}, {"den", r.exact.den}};
  }
  return out;
}

nlohmann::json entropy_json(const EntropyResult& r) {
  return {{"bits", r.bits},
          {"exhaustive", r.exhaustive},
          {"plugin_biased", r.plugin_biased},
          {"samples", r.samples},
          {"distinct_arrays", r.distinct_arrays}};
}

nlohmann::json verification_json(const theory::Verification& v) {
  nlohmann::json out = {{"ok", v.ok}};
  if (!v.ok) out["detail"] = v.detail;
  return out;
}

nlohmann::json monotone_json(const theory::MonotoneReport& r) {
  nlohmann::json out = {{"monotone", r.monotone},
                        {"states", r.states},
                        {"pairs_checked", r.pairs_checked},
                        {"skipped", r.skipped}};
  if (!r.monotone) {
    out["violation"] = {{"alpha", r.alpha}, {"beta", r.beta}, {"location", r.location}};
  }
  return out;
}

nlohmann::json witness_json(const theory::WitnessReport& r) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const auto& v : r.vertices) {
    vertices.push_back({{"vertex", v.vertex}, {"claimed", v.claimed}, {"verified", v.verified}});
  }
  return {{"protocol", r.protocol},
          {"kind", r.kind},
          {"n", r.n},
          {"sigma", r.sigma},
          {"vertices", vertices},
          {"bound", r.bound},
          {"verified", r.verified},
          {"details", r.details}};
}

nlohmann::json solver_json(const theory::SolverResult& r) {
  return {{"n", r.n},
          {"cost", r.cost},
          {"feasible_budgets", r.feasible_budgets},
          {"nodes", r.nodes}};
}

nlohmann::json envelope(const std::string& command, const nlohmann::json& parameters,
                        std::uint64_t seed, double wall_time_ms, nlohmann::json result) {
  return {{"command", command},
          {"parameters", parameters},
          {"seed", seed},
          {"tool_version", kToolVersion},
          {"wall_time_ms", wall_time_ms},
          {"result", std::move(result)}};
}

std::string to_dot(const EdgeGraph& graph) {
  std::vector<std::uint64_t> keys(graph.edges().begin(), graph.edges().end());
  std::sort(keys.begin(), keys.end());
  std::ostringstream out;
  out << "graph edges {\n";
  for (std::uint64_t key : keys) {
    const Location star = packed_star_location(key, graph.n());
    if (graph.w() == 2) {
      const auto u = CellArray::unpack(packed_complete(key, graph.n(), 1), graph.n(), 2);
      const auto v = CellArray::unpack(packed_complete(key, graph.n(), 2), graph.n(), 2);
      out << "  \"" << u.render() << "\" -- \"" << v.render() << "\" [label=\"" << star
          << "\"];\n";
    } else {
      const auto hub = CellArray::unpack(key, graph.n(), graph.w());
      out << "  \"" << hub.render() << "\" [shape=point];\n";
      for (Symbol s = 1; s <= static_cast<Symbol>(graph.w()); ++s) {
        const auto v =
            CellArray::unpack(packed_complete(key, graph.n(), s), graph.n(), graph.w());
        out << "  \"" << hub.render() << "\" -- \"" << v.render() << "\" [label=\"" << star
            << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace lastloc::report
