#ifndef LASTLOC_REPORT_HPP
#define LASTLOC_REPORT_HPP

#include <string>

#include "lastloc/game.hpp"
#include "lastloc/theory.hpp"

namespace lastloc::report {

inline constexpr const char* kToolVersion = "0.1.0";

// All serializers emit plain nlohmann::json, whose object keys are
// stored sorted; identical data therefore dumps to identical text.

// w = 2 reports symbols as the bits 0/1; wider alphabets keep 1..w.
int external_symbol(Symbol s, int w);

nlohmann::json run_record_json(const Protocol& p, const GameRunRecord& record);
nlohmann::json edge_graph_json(const EdgeGraph& graph);
nlohmann::json expected_cost_json(const ExpectedCostResult& r);
nlohmann::json entropy_json(const EntropyResult& r);
nlohmann::json verification_json(const theory::Verification& v);
nlohmann::json monotone_json(const theory::MonotoneReport& r);
nlohmann::json witness_json(const theory::WitnessReport& r);
nlohmann::json solver_json(const theory::SolverResult& r);

// Self-describing wrapper: {command, parameters, seed, tool_version,
// wall_time_ms, result}. Rerunning the command with the recorded
// parameters and seed reproduces the result payload exactly.
nlohmann::json envelope(const std::string& command, const nlohmann::json& parameters,
                        std::uint64_t seed, double wall_time_ms, nlohmann::json result);

// Graphviz text, edges sorted by packed key. Binary graphs list one
// vertex--vertex line per edge labeled with the free location; wider
// alphabets draw the starred array as a point joined to each completion.
std::string to_dot(const EdgeGraph& graph);

}  // namespace lastloc::report

#endif  // LASTLOC_REPORT_HPP
