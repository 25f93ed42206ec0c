#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fc {

struct Principle {
  std::string id;
  std::string name;
  std::vector<int> circles;
};

struct ImplicationEdge {
  std::string from;
  std::string to;
  std::string provenance;

  friend bool operator==(const ImplicationEdge&, const ImplicationEdge&) = default;
};

/// Directed graph of principles, one edge per proved implication. Immutable
/// once constructed.
class PrincipleGraph {
 public:
  /// Throws UsageError on duplicate ids, duplicate edges or edges that name
  /// an unknown principle.
  PrincipleGraph(std::vector<Principle> nodes, std::vector<ImplicationEdge> edges);

  const std::vector<Principle>& nodes() const noexcept { return nodes_; }
  const std::vector<ImplicationEdge>& edges() const noexcept { return edges_; }
  bool contains(std::string_view id) const;
  /// Position of `id` in nodes(); UsageError when absent.
  std::size_t index(std::string_view id) const;
  const Principle& node(std::string_view id) const { return nodes_[index(id)]; }
  /// Indices of direct successors, in edge order.
  const std::vector<std::size_t>& successors(std::size_t i) const { return out_[i]; }

  /// A copy with the edge from -> to removed; UsageError if there is none.
  PrincipleGraph without_edge(std::string_view from, std::string_view to) const;

 private:
  std::vector<Principle> nodes_;
  std::vector<ImplicationEdge> edges_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> out_;
};

/// The shipped graph, read from the data file compiled into the library.
const PrincipleGraph& build();

/// Parses {nodes:[{id,name,circles}], edges:[{from,to,provenance}]}.
PrincipleGraph graph_from_json(std::string_view text);
std::string graph_to_json(const PrincipleGraph& g);

/// Shortest directed path; among shortest paths the one whose successive ids
/// are lexicographically smallest. Empty when from == to. MathError(no_witness)
/// when `to` is unreachable.
std::vector<ImplicationEdge> path(const PrincipleGraph& g, std::string_view from, std::string_view to);

/// Strongly connected components (Tarjan), each listed in node order.
std::vector<std::vector<std::string>> components(const PrincipleGraph& g);

/// True iff every principle lies in a single strongly connected component.
bool check_equivalence(const PrincipleGraph& g);

std::string export_dot(const PrincipleGraph& g);

}  // namespace fc
