#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "../support/oracles.hpp"
#include "fc/error.hpp"
#include "fc/graph.hpp"

using namespace fc;

namespace {

using Arrow = std::pair<std::string, std::string>;

// The closing figure, read off box by box.
const std::vector<Arrow> figure = {
    {"AP&CCC", "MCP"},      {"MCP", "AP&NIPs"},     {"AP&NIPs", "AP&NIPw"},  {"AP&NIPw", "BWP"},
    {"BWP", "AP&CCC"},      {"AP&NIPw", "ES"},      {"ES", "I1"},            {"I1", "I2"},
    {"I2", "I3"},           {"I3", "IVT"},          {"IVT", "I4"},           {"I4", "CA"},
    {"CA", "MCP"},          {"BWP", "EVT"},         {"ES", "EVT"},           {"EVT", "RT"},
    {"RT", "eMVT"},         {"eMVT", "MVT"},        {"MVT", "TT_L"},         {"TT_L", "PCP"},
    {"TT_L", "CFT"},        {"TT_L", "IFT"},        {"PCP", "CVT"},          {"CFT", "CVT"},
    {"IFT", "CVT"},         {"CVT", "I1"},          {"AP&NIPw", "I5"},       {"I5", "AP&LCL"},
    {"AP&LCL", "AP&UCT"},   {"AP&UCT", "UAS"},      {"UAS", "CC&BVT"},       {"CC&BVT", "MCP"},
    {"UAS", "CC&DIT"},      {"UAS", "CC&RIT"},      {"CC&DIT", "CC&BVT"},    {"CC&RIT", "CC&BVT"},
    {"MVT", "FTC1&IAT"},    {"MVT", "FTC2"},        {"FTC1&IAT", "ADT"},     {"FTC2", "ADT"},
    {"ADT", "CVT"},
};

const std::vector<Arrow> closing = {
    {"BWP", "AP&CCC"}, {"CA", "MCP"}, {"CVT", "I1"}, {"CC&BVT", "MCP"}, {"ADT", "CVT"}};

std::string read_file(const char* path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::set<std::string>> adjacency(const PrincipleGraph& g) {
  std::map<std::string, std::set<std::string>> adj;
  for (const auto& n : g.nodes()) adj[n.id];
  for (const auto& e : g.edges()) adj[e.from].insert(e.to);
  return adj;
}

// Every node reaches every other, by repeated depth-first search.
bool mutually_reachable(const PrincipleGraph& g) {
  const auto adj = adjacency(g);
  for (const auto& [start, _] : adj) {
    std::set<std::string> seen{start};
    std::vector<std::string> stack{start};
    while (!stack.empty()) {
      const std::string v = stack.back();
      stack.pop_back();
      for (const auto& w : adj.at(v))
        if (seen.insert(w).second) stack.push_back(w);
    }
    if (seen.size() != adj.size()) return false;
  }
  return true;
}

// All simple paths up to the shortest length, then the least id sequence.
std::vector<std::string> brute_path(const PrincipleGraph& g, const std::string& from, const std::string& to) {
  const auto adj = adjacency(g);
  for (std::size_t len = 0; len <= adj.size(); ++len) {
    std::vector<std::vector<std::string>> found;
    std::vector<std::string> cur{from};
    std::function<void()> go = [&] {
      if (cur.size() == len + 1) {
        if (cur.back() == to) found.push_back(cur);
        return;
      }
      for (const auto& w : adj.at(cur.back())) {
        cur.push_back(w);
        go();
        cur.pop_back();
      }
    };
    go();
    if (!found.empty()) return *std::min_element(found.begin(), found.end());
  }
  return {};
}

}  // namespace

TEST_CASE("shipped graph matches the figure and the data file") {
  const PrincipleGraph& g = build();
  CHECK(g.nodes().size() == 31);
  CHECK(g.edges().size() == 41);

  std::set<Arrow> got;
  for (const auto& e : g.edges()) got.insert({e.from, e.to});
  CHECK(got.size() == g.edges().size());
  CHECK(got == std::set<Arrow>(figure.begin(), figure.end()));

  const auto data = nlohmann::json::parse(read_file(FC_DATA_FILE));
  REQUIRE(data.at("edges").size() == g.edges().size());
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    CHECK(data["edges"][i]["from"] == g.edges()[i].from);
    CHECK(data["edges"][i]["to"] == g.edges()[i].to);
    CHECK(data["edges"][i]["provenance"] == g.edges()[i].provenance);
  }
  REQUIRE(data.at("nodes").size() == g.nodes().size());
  for (std::size_t i = 0; i < g.nodes().size(); ++i) CHECK(data["nodes"][i]["id"] == g.nodes()[i].id);

  for (const auto& e : g.edges()) {
    if (e.from == "AP&CCC" && e.to == "MCP") CHECK(e.provenance.rfind("Theorem 1", 0) == 0);
    if (e.from == "ADT") CHECK(e.to == "CVT");
    const char circle = e.provenance.at(8);
    CHECK(circle >= '1');
    CHECK(circle <= '5');
  }
  CHECK(g.node("MCP").circles == std::vector<int>{1, 2, 4});
}

TEST_CASE("graph construction errors") {
  CHECK_THROWS_AS(PrincipleGraph({{"A", "a", {1}}, {"A", "b", {1}}}, {}), UsageError);
  CHECK_THROWS_AS(PrincipleGraph({{"A", "a", {1}}}, {{"A", "B", "p"}}), UsageError);
  CHECK_THROWS_AS(PrincipleGraph({{"A", "a", {1}}, {"B", "b", {1}}}, {{"A", "B", "p"}, {"A", "B", "q"}}), UsageError);
  CHECK_THROWS_AS(build().index("NOPE"), UsageError);
  CHECK_THROWS_AS(build().without_edge("MCP", "I1"), UsageError);
  CHECK_THROWS_AS(graph_from_json("{\"nodes\": 3}"), UsageError);
}

TEST_CASE("JSON round trip") {
  const PrincipleGraph back = graph_from_json(graph_to_json(build()));
  CHECK(back.edges() == build().edges());
  CHECK(back.nodes().size() == build().nodes().size());
  for (std::size_t i = 0; i < back.nodes().size(); ++i) {
    CHECK(back.nodes()[i].id == build().nodes()[i].id);
    CHECK(back.nodes()[i].name == build().nodes()[i].name);
    CHECK(back.nodes()[i].circles == build().nodes()[i].circles);
  }
}

TEST_CASE("paths") {
  const PrincipleGraph& g = build();
  const auto mvt = path(g, "MVT", "CVT");
  REQUIRE(mvt.size() == 3);
  CHECK(mvt[0].to == "FTC1&IAT");
  CHECK(mvt[1].to == "ADT");
  CHECK(mvt[2].to == "CVT");
  CHECK(path(g, "MCP", "MCP").empty());
  const auto one = path(g, "I1", "I2");
  REQUIRE(one.size() == 1);
  CHECK(one[0].provenance.rfind("Theorem 2", 0) == 0);
  CHECK_THROWS_AS(path(g, "MCP", "NOPE"), UsageError);

  // Every ordered pair against exhaustive search.
  for (const auto& a : g.nodes()) {
    for (const auto& b : g.nodes()) {
      const auto p = path(g, a.id, b.id);
      std::vector<std::string> ids{a.id};
      for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p[i].from == ids.back());
        ids.push_back(p[i].to);
      }
      CHECK(ids == brute_path(g, a.id, b.id));
    }
  }

  const PrincipleGraph cut = g.without_edge("CA", "MCP");
  try {
    path(PrincipleGraph({{"A", "a", {1}}, {"B", "b", {1}}}, {{"A", "B", "p"}}), "B", "A");
    FAIL("no throw");
  } catch (const MathError& e) {
    CHECK(e.failure() == Failure::no_witness);
  }
  CHECK_THROWS_AS(path(cut, "CA", "MCP"), MathError);
  CHECK(path(cut, "MCP", "CA").size() == 9);
}

TEST_CASE("equivalence") {
  const PrincipleGraph& g = build();
  CHECK(check_equivalence(g));
  CHECK(mutually_reachable(g));
  CHECK(components(g).size() == 1);
  for (const auto& [from, to] : closing) {
    const PrincipleGraph cut = g.without_edge(from, to);
    CHECK(cut.edges().size() == 40);
    CHECK_FALSE(check_equivalence(cut));
    CHECK_FALSE(mutually_reachable(cut));
  }
  // Edges whose removal keeps the graph strongly connected agree too.
  for (const auto& e : g.edges()) {
    const PrincipleGraph cut = g.without_edge(e.from, e.to);
    CHECK(check_equivalence(cut) == mutually_reachable(cut));
  }
  CHECK(check_equivalence(PrincipleGraph({{"X", "x", {1}}}, {})));

  const auto parts = components(g.without_edge("CA", "MCP"));
  CHECK(parts.size() > 1);
  std::size_t total = 0;
  for (const auto& c : parts) total += c.size();
  CHECK(total == 31);
}

TEST_CASE("DOT export") {
  const PrincipleGraph& g = build();
  const std::string dot = export_dot(g);
  CHECK(oracle::dot_syntax_error(dot).empty());
  const oracle::DotGraph parsed = oracle::dot_parse(dot);
  CHECK(parsed.nodes.size() == g.nodes().size());
  CHECK(parsed.edges.size() == g.edges().size());
  std::set<Arrow> edges(parsed.edges.begin(), parsed.edges.end());
  CHECK(edges == std::set<Arrow>(figure.begin(), figure.end()));
  CHECK(dot.find("\"MVT\" -> \"TT_L\"") != std::string::npos);
  CHECK(dot.find("label=\"Theorem 3: (MVT) => (TT_L)\"") != std::string::npos);

  CHECK_FALSE(oracle::dot_syntax_error("digraph { \"a\" -> }").empty());
  const std::string tricky = export_dot(PrincipleGraph({{"A\"q", "x\\y", {1}}}, {}));
  CHECK(oracle::dot_syntax_error(tricky).empty());
}
