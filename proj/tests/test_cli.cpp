#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "lastloc/protocols.hpp"
#include "lastloc/report.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(LASTLOC_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  while (fgets(buffer, sizeof(buffer), pipe) != nullptr) result.out += buffer;
  const int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

nlohmann::json payload(const CliResult& r) {
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.contains("result"));
  return doc;
}

}  // namespace

TEST_CASE("cli run reports the game record") {
  const auto doc = payload(run_cli("run zeros --n 4 --sigma 1,2,3,4 --b 1"));
  CHECK(doc.at("command") == "run");
  CHECK(doc.at("tool_version") == "0.1.0");
  CHECK(doc.at("seed") == 1);
  const auto& result = doc.at("result");
  CHECK(result.at("protocol") == "zeros");
  CHECK(result.at("final") == "0001");
  CHECK(result.at("edge") == "000*");
  CHECK(result.at("b") == 1);
  CHECK(result.at("last") == 4);
  CHECK(result.at("bob").at("ok") == true);
  CHECK(result.at("bob").at("output") == nlohmann::json::array({4}));
  CHECK(result.at("transcript").size() == 4);
}

TEST_CASE("cli run reports the parity label on the worked example") {
  const auto zero = payload(run_cli("run syndrome --n 4 --t 3 --sigma 4,1,2,3 --b 0"));
  CHECK(zero.at("result").at("gamma") == "11");
  CHECK(zero.at("result").at("final") == "1100");

  const auto one = payload(run_cli("run syndrome --n 4 --t 3 --sigma 4,1,2,3 --b 1"));
  CHECK(one.at("result").at("gamma") == "00");
}

TEST_CASE("cli run is deterministic under a fixed seed") {
  const std::string args = "run and_or --n 9 --random --seed 5 --b 1";
  const auto a = payload(run_cli(args));
  const auto b = payload(run_cli(args));
  CHECK(a.at("result") == b.at("result"));
  CHECK(a.at("parameters") == b.at("parameters"));
}

TEST_CASE("cli run drives the function bridge") {
  const auto doc = payload(run_cli("run function --n 3 --fn or --sigma 3,1,2 --b 1"));
  CHECK(doc.at("result").at("bob").at("ok") == true);
  const auto hex = payload(run_cli("run function --n 2 --fn hex:e --sigma 2,1 --b 0"));
  CHECK(hex.at("result").at("bob").at("ok") == true);
}

TEST_CASE("cli trace keeps stdout pure json") {
  const auto doc = payload(run_cli("run zeros --n 5 --random --seed 2 --b 0 --trace"));
  CHECK(doc.at("result").at("bob").at("ok") == true);
}

TEST_CASE("cli analyze cost") {
  const auto doc = payload(run_cli("analyze and_or --n 4"));
  const auto& result = doc.at("result");
  CHECK(result.at("cost") == 2);
  CHECK(result.at("max_degree") == 2);
  CHECK(result.at("n") == 4);
  CHECK(result.at("edge_count").get<int>() > 0);
  CHECK(result.at("degree_histogram").is_object());
}

TEST_CASE("cli analyze entropy of the all-zeros writer is one bit") {
  const auto doc = payload(run_cli("analyze zeros --n 4 --metric entropy"));
  CHECK(doc.at("result").at("bits").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(doc.at("result").at("exhaustive") == true);
}

TEST_CASE("cli analyze expected cost of the all-zeros writer") {
  const auto doc = payload(run_cli("analyze zeros --n 5 --metric expected"));
  const auto& result = doc.at("result");
  CHECK(result.at("exhaustive") == true);
  CHECK(result.at("exact").at("num") == 3);
  CHECK(result.at("exact").at("den") == 1);
}

TEST_CASE("cli analyze monte carlo modes") {
  const auto doc = payload(
      run_cli("analyze and_or --n 12 --metric expected --mode mc --trials 2000 --seed 7"));
  CHECK(doc.at("result").at("exhaustive") == false);
  CHECK(doc.at("result").at("samples") == 2000);
  const auto ent = payload(
      run_cli("analyze and_or --n 12 --metric entropy --mode mc --trials 2000 --seed 7"));
  CHECK(ent.at("result").at("plugin_biased") == true);
}

TEST_CASE("cli analyze agrees across thread counts") {
  const auto one = payload(run_cli("analyze and_or --n 6 --mode sweep --threads 1"));
  const auto four = payload(run_cli("analyze and_or --n 6 --mode sweep --threads 4"));
  CHECK(one.at("result") == four.at("result"));
}

TEST_CASE("cli analyze writes graphviz text") {
  const std::string path = "/tmp/lastloc_cli_test_graph.dot";
  std::remove(path.c_str());
  const auto doc = payload(run_cli("analyze and_or --n 2 --dot " + path));
  CHECK(doc.at("result").at("dot_path") == path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"00\" -- \"01\" [label=\"2\"]") != std::string::npos);
  CHECK(text.find("\"00\" -- \"10\" [label=\"1\"]") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("cli witness commands") {
  const auto mono = payload(run_cli("witness and_or --n 8 --kind monotone"));
  CHECK(mono.at("result").at("verified") == true);
  CHECK(mono.at("result").at("kind") == "monotone");

  const auto assign = payload(run_cli("witness zeros --n 8 --kind assignment"));
  CHECK(assign.at("result").at("verified") == true);
  CHECK(assign.at("result").at("bound").get<int>() >= 2);
}

TEST_CASE("cli search") {
  const auto full = payload(run_cli("search --n 2"));
  CHECK(full.at("result").at("cost") == 2);
  const auto budget = payload(run_cli("search --n 3 --budget 3"));
  CHECK(budget.at("result").at("feasible") == true);
  CHECK(budget.at("result").at("nodes").get<std::uint64_t>() > 0);
}

TEST_CASE("cli code build and verify round trip") {
  for (const std::string build :
       {std::string("code build vt --t 8"), std::string("code build greedy --k 6 --d 2"),
        std::string("code build proper --n 10 --m 9 --seed 3")}) {
    const auto result = run_cli(build);
    const auto doc = payload(result);
    const std::string path = "/tmp/lastloc_cli_test_code.json";
    {
      std::ofstream out(path);
      out << result.out;
    }
    const auto verify = run_cli("code verify --file " + path);
    CAPTURE(build);
    CHECK(verify.exit_code == 0);
    CHECK(nlohmann::json::parse(verify.out).at("result").at("verified") == true);
    std::remove(path.c_str());
  }
}

TEST_CASE("cli code verify rejects a tampered report") {
  const auto result = run_cli("code build vt --t 8");
  auto doc = payload(result);
  doc["result"]["digest"] = doc["result"]["digest"].get<std::uint64_t>() ^ 1;
  const std::string path = "/tmp/lastloc_cli_test_tampered.json";
  {
    std::ofstream out(path);
    out << doc.dump();
  }
  const auto verify = run_cli("code verify --file " + path);
  CHECK(verify.exit_code == 1);
  std::remove(path.c_str());
}

TEST_CASE("cli code build vt reports the syndrome class") {
  const auto doc = payload(run_cli("code build vt --t 8"));
  const auto& result = doc.at("result");
  CHECK(result.at("size") == result.at("exact_count"));
  CHECK(result.at("deletion_budget") == 1);
  CHECK(result.at("words").is_array());
  CHECK(result.at("words").size() == result.at("size").get<std::size_t>());
}

TEST_CASE("cli exit codes distinguish bad input from infeasible builds") {
  CHECK(run_cli("run syndrome --n 4 --t 9 --sigma 1,2,3,4").exit_code == 1);
  CHECK(run_cli("run nope --n 4").exit_code == 1);
  CHECK(run_cli("run and_or --n 4 --sigma 1,2").exit_code == 1);
  CHECK(run_cli("run and_or --n 4 --sigma 1,2,3,4 --b 7").exit_code == 1);
  CHECK(run_cli("code build vt --t 4 --min-size 100").exit_code == 2);
  CHECK(run_cli("analyze and_or --n 4 --metric cost --mode mc").exit_code == 1);
}

TEST_CASE("cli pretty printing stays parseable") {
  const auto result = run_cli("analyze zeros --n 3 --pretty");
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find('\n') != std::string::npos);
  const auto doc = nlohmann::json::parse(result.out);
  CHECK(doc.at("result").at("cost") == 3);
}

TEST_CASE("dot rendering for wide alphabets uses a hub per edge") {
  using namespace lastloc;
  const Protocol p = protocols::iterated_protocol({1, 6, 16, std::nullopt});
  const auto graph = enumerate_edge_graph(p);
  const auto text = report::to_dot(graph);
  CHECK(text.find("[shape=point]") != std::string::npos);
  CHECK(text.find("graph edges {") == 0);
}
