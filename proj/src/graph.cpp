#include "fc/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fc/error.hpp"
#include "principles.hpp"

namespace fc {

PrincipleGraph::PrincipleGraph(std::vector<Principle> nodes, std::vector<ImplicationEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), out_(nodes_.size()) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i].id, i).second) throw UsageError("duplicate principle id '" + nodes_[i].id + "'");
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const std::size_t from = index(edges_[e].from);
    const std::size_t to = index(edges_[e].to);
    for (std::size_t f = 0; f < e; ++f) {
      if (edges_[f].from == edges_[e].from && edges_[f].to == edges_[e].to) {
        throw UsageError("duplicate edge " + edges_[e].from + " -> " + edges_[e].to);
      }
    }
    out_[from].push_back(to);
  }
}

bool PrincipleGraph::contains(std::string_view id) const { return index_.count(std::string(id)) != 0; }

std::size_t PrincipleGraph::index(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) throw UsageError("unknown principle '" + std::string(id) + "'");
  return it->second;
}

PrincipleGraph PrincipleGraph::without_edge(std::string_view from, std::string_view to) const {
  std::vector<ImplicationEdge> kept;
  for (const auto& e : edges_) {
    if (e.from != from || e.to != to) kept.push_back(e);
  }
  if (kept.size() == edges_.size()) {
    throw UsageError("no edge " + std::string(from) + " -> " + std::string(to));
  }
  return PrincipleGraph(nodes_, std::move(kept));
}

PrincipleGraph graph_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("graph data: ") + e.what());
  }
  try {
    std::vector<Principle> nodes;
    for (const auto& n : doc.at("nodes")) {
      nodes.push_back({n.at("id").get<std::string>(), n.at("name").get<std::string>(),
                       n.at("circles").get<std::vector<int>>()});
    }
    std::vector<ImplicationEdge> edges;
    for (const auto& e : doc.at("edges")) {
      edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                       e.at("provenance").get<std::string>()});
    }
    return PrincipleGraph(std::move(nodes), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("graph data: ") + e.what());
  }
}

std::string graph_to_json(const PrincipleGraph& g) {
  nlohmann::ordered_json doc;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : g.nodes()) doc["nodes"].push_back({{"id", n.id}, {"name", n.name}, {"circles", n.circles}});
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) doc["edges"].push_back({{"from", e.from}, {"to", e.to}, {"provenance", e.provenance}});
  return doc.dump(2);
}

const PrincipleGraph& build() {
  static const PrincipleGraph g = graph_from_json(detail::principles_json);
  return g;
}

std::vector<ImplicationEdge> path(const PrincipleGraph& g, std::string_view from, std::string_view to) {
  const std::size_t s = g.index(from);
  const std::size_t t = g.index(to);
  const std::size_t n = g.nodes().size();
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();

  // Distances to t along reversed edges, so the forward walk can pick the
  // smallest id among successors that stay on a shortest path.
  std::vector<std::vector<std::size_t>> in(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const std::size_t j : g.successors(i)) in[j].push_back(i);
  }
  std::vector<std::size_t> dist(n, inf);
  std::deque<std::size_t> queue{t};
  dist[t] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (const std::size_t u : in[v]) {
      if (dist[u] == inf) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  if (dist[s] == inf) {
    throw MathError(Failure::no_witness, "no path from " + std::string(from) + " to " + std::string(to));
  }

  std::vector<ImplicationEdge> result;
  std::size_t v = s;
  while (v != t) {
    std::size_t next = inf;
    for (const std::size_t w : g.successors(v)) {
      if (dist[w] + 1 == dist[v] && (next == inf || g.nodes()[w].id < g.nodes()[next].id)) next = w;
    }
    for (const auto& e : g.edges()) {
      if (e.from == g.nodes()[v].id && e.to == g.nodes()[next].id) {
        result.push_back(e);
        break;
      }
    }
    v = next;
  }
  return result;
}

std::vector<std::vector<std::string>> components(const PrincipleGraph& g) {
  const std::size_t n = g.nodes().size();
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> order(n, unset);
  std::vector<std::size_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> found;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const std::size_t w : g.successors(v)) {
      if (order[w] == unset) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] == order[v]) {
      std::vector<std::size_t> comp;
      std::size_t w = 0;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      found.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (order[v] == unset) visit(v);
  }

  std::sort(found.begin(), found.end());
  std::vector<std::vector<std::string>> result;
  for (const auto& comp : found) {
    auto& ids = result.emplace_back();
    for (const std::size_t v : comp) ids.push_back(g.nodes()[v].id);
  }
  return result;
}

bool check_equivalence(const PrincipleGraph& g) { return components(g).size() <= 1; }

namespace {

std::string dot_id(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string export_dot(const PrincipleGraph& g) {
  std::ostringstream os;
  os << "digraph principles {\n";
  os << "  node [shape=box];\n";
  for (const auto& n : g.nodes()) os << "  " << dot_id(n.id) << " [tooltip=" << dot_id(n.name) << "];\n";
  for (const auto& e : g.edges()) {
    os << "  " << dot_id(e.from) << " -> " << dot_id(e.to) << " [label=" << dot_id(e.provenance) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fc
