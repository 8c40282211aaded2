#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relbn/network.hpp"

namespace relbn {

using DomainSizes = std::map<std::string, int>;

// Result of triangulating a graph along an elimination order.
struct Triangulation {
  std::vector<std::pair<std::string, std::string>> fill_edges;
  std::vector<std::vector<std::string>> cliques;  // subset-reduced
};

// A clique decomposition selected by an optimizer, with its objective value.
struct CliqueDecomposition {
  std::vector<std::string> order;  // elimination order used
  Triangulation triangulation;
  long long total_states = 0;
};

// Junction tree over a set of cliques: a spanning tree maximizing separator
// sizes. Cliques keep the caller's order; edges carry their separators.
struct JunctionTree {
  std::vector<std::vector<std::string>> cliques;
  struct Edge {
    int a = 0, b = 0;                     // indices into `cliques`, a < b
    std::vector<std::string> separator;   // intersection, node order
  };
  std::vector<Edge> edges;
};

// Graham (GYO) reduction: repeatedly drop vertices unique to one hyperedge
// and hyperedges contained in another; acyclic iff everything reduces away.
bool graham_is_acyclic(const std::vector<std::vector<std::string>>& hyperedges);

// Vertex elimination along `order` (a permutation of g's nodes): neighbors of
// the vertex being eliminated are pairwise connected; records the added fill
// edges and the subset-reduced elimination cliques.
Triangulation triangulate(const NeighborhoodGraph& g,
                          const std::vector<std::string>& order);

// True when the graph is chordal (zero-fill elimination order exists).
bool is_chordal(const NeighborhoodGraph& g);

// Sum over cliques of the product of member domain sizes.
long long total_states(const std::vector<std::vector<std::string>>& cliques,
                       const DomainSizes& domains);

// Greedy elimination: repeatedly removes the vertex adding the fewest fill
// edges; ties broken by smaller resulting clique state count, then by name.
CliqueDecomposition greedy_decompose(const NeighborhoodGraph& g,
                                     const DomainSizes& domains);

struct AnnealSchedule {
  double t0 = 0;             // initial temperature; 0 = greedy cost / 10
  double alpha = 0.95;       // geometric cooling factor, in (0, 1)
  int steps_per_temp = 0;    // proposals per temperature; 0 = 100 * |V|
  double floor_ratio = 1e-3; // stop when T < floor_ratio * t0
  int patience = 20;         // stop after this many temperatures without improvement
};

// Simulated annealing over elimination orders (moves swap two positions,
// Metropolis acceptance, geometric cooling). Starts from the greedy order and
// returns the best order seen, so the result never costs more than greedy.
// Fully deterministic for a given seed.
CliqueDecomposition anneal_decompose(const NeighborhoodGraph& g,
                                     const DomainSizes& domains,
                                     std::uint64_t seed,
                                     const AnnealSchedule& schedule = {});

// Maximum-weight spanning tree over pairwise clique intersections (Kruskal;
// ties resolved toward the lexicographically smallest clique pair; components
// sharing no attribute are joined by empty separators). The clique set must
// be an acyclic hypergraph.
JunctionTree build_junction_tree(const std::vector<std::vector<std::string>>& cliques);

// True when, for every attribute, the cliques containing it induce a
// connected subtree (running intersection property).
bool has_running_intersection(const JunctionTree& tree);

}  // namespace relbn
