#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relbn/dependency.hpp"
#include "relbn/relation.hpp"

namespace relbn {

// Conditional distribution of one attribute given an ordered parent list.
// Row keys range over the full parent domain product; a row observed in no
// tuple is UNDEFINED (nullopt) rather than invented. Defined rows hold one
// probability per child domain value (child domain order) and sum to 1.
struct ConditionalTable {
  AttributeDecl child;
  std::vector<AttributeDecl> parents;
  std::map<std::vector<int>, std::optional<std::vector<double>>> rows;

  std::size_t defined_rows() const;
  std::size_t undefined_rows() const;
};

// Directed graph induced by dependencies <X, A>: one node per scheme
// attribute, an edge parent -> A for every parent in X. Always acyclic.
struct BeliefNetwork {
  Scheme nodes;
  std::vector<std::pair<std::string, std::string>> edges;  // parent -> child
};

// Undirected graph over attributes; two attributes are adjacent iff they
// co-occur in some family (a dependency's lhs plus its child).
class NeighborhoodGraph {
 public:
  NeighborhoodGraph() = default;
  explicit NeighborhoodGraph(std::vector<std::string> nodes);

  const std::vector<std::string>& nodes() const { return nodes_; }
  int node_index(const std::string& name) const;
  bool has_node(const std::string& name) const;

  void add_edge(const std::string& a, const std::string& b);
  bool has_edge(int a, int b) const { return adj_[a][b] != 0; }
  bool has_edge(const std::string& a, const std::string& b) const;

  std::vector<int> neighbors(int v) const;
  // Edges as (smaller node index, larger node index), ordered.
  std::vector<std::pair<std::string, std::string>> edges() const;
  std::size_t edge_count() const;

 private:
  std::vector<std::string> nodes_;
  std::map<std::string, int> index_;
  std::vector<std::vector<char>> adj_;
};

// A marginal distribution over a small attribute set, used both as a Jeffrey
// constraint and as a propagation message. Entries are keyed by symbolic
// value combinations in `scheme` order; missing combinations carry mass 0.
struct MarginalConstraint {
  std::vector<std::string> scheme;
  std::map<std::vector<std::string>, double> table;
};

// One conditional table per dependency <X, A>, estimated from the first
// relation whose scheme contains X u {A} (input order); configurations with
// zero count stay UNDEFINED. A dependency covered by no relation is a
// Coverage error.
std::vector<ConditionalTable> extract_ccs(const std::vector<Relation>& relations,
                                          const std::vector<Dependency>& deps);

// Builds the dependency-induced DAG over `scheme`; a directed cycle is
// reported as a CyclicDependencies error naming one cycle.
BeliefNetwork build_bn(const Scheme& scheme, const std::vector<Dependency>& deps);

// Union of complete subgraphs, one per family.
NeighborhoodGraph neighborhood_graph(const std::vector<std::string>& scheme,
                                     const std::vector<std::vector<std::string>>& families);

// Families ({child} u parents) of the dependencies, for neighborhood_graph.
std::vector<std::vector<std::string>> dependency_families(
    const std::vector<Dependency>& deps);

}  // namespace relbn
