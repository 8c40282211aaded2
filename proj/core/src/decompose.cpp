#include "relbn/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace relbn {

namespace {

// Deterministic replacements for the distribution classes (whose outputs are
// implementation-defined): a 53-bit uniform double and a bounded integer.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_below(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

long long clique_states(const std::vector<int>& members,
                        const std::vector<long long>& sizes) {
  long long prod = 1;
  for (int v : members) prod *= sizes[v];
  return prod;
}

std::vector<long long> domain_vector(const NeighborhoodGraph& g,
                                     const DomainSizes& domains) {
  std::vector<long long> sizes;
  sizes.reserve(g.nodes().size());
  for (const auto& name : g.nodes()) {
    auto it = domains.find(name);
    if (it == domains.end())
      throw Error(ErrorKind::Schema, "no domain size for attribute '" + name + "'");
    if (it->second < 1)
      throw Error(ErrorKind::Schema, "non-positive domain size for '" + name + "'");
    sizes.push_back(it->second);
  }
  return sizes;
}

// Elimination cliques (as index sets, subset-reduced) plus fill count for an
// order given as node indices. Shared by triangulate/greedy/anneal.
struct EliminationResult {
  std::vector<std::vector<int>> cliques;
  std::vector<std::pair<int, int>> fills;
};

EliminationResult eliminate(const NeighborhoodGraph& g, const std::vector<int>& order) {
  const int n = static_cast<int>(g.nodes().size());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) adj[i][j] = g.has_edge(i, j) ? 1 : 0;
  std::vector<char> alive(n, 1);

  EliminationResult result;
  std::vector<std::vector<int>> cliques;
  for (int v : order) {
    std::vector<int> nb;
    for (int w = 0; w < n; ++w)
      if (alive[w] && adj[v][w]) nb.push_back(w);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (!adj[nb[i]][nb[j]]) {
          adj[nb[i]][nb[j]] = adj[nb[j]][nb[i]] = 1;
          result.fills.emplace_back(std::min(nb[i], nb[j]), std::max(nb[i], nb[j]));
        }
    std::vector<int> clique = nb;
    clique.push_back(v);
    std::sort(clique.begin(), clique.end());
    cliques.push_back(std::move(clique));
    alive[v] = 0;
  }

  // Subset reduction; elimination cliques of later vertices can duplicate or
  // contain earlier ones.
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    bool contained = false;
    for (std::size_t j = 0; j < cliques.size() && !contained; ++j) {
      if (i == j) continue;
      bool subset = std::includes(cliques[j].begin(), cliques[j].end(),
                                  cliques[i].begin(), cliques[i].end());
      if (subset && (cliques[i].size() < cliques[j].size() || i > j)) contained = true;
    }
    if (!contained) result.cliques.push_back(cliques[i]);
  }
  return result;
}

std::vector<int> order_indices(const NeighborhoodGraph& g,
                               const std::vector<std::string>& order) {
  if (order.size() != g.nodes().size())
    throw Error(ErrorKind::Schema, "elimination order must list every node exactly once");
  std::vector<int> idx;
  std::set<int> seen;
  for (const auto& name : order) {
    int v = g.node_index(name);
    if (!seen.insert(v).second)
      throw Error(ErrorKind::Schema, "elimination order repeats '" + name + "'");
    idx.push_back(v);
  }
  return idx;
}

long long order_cost(const NeighborhoodGraph& g, const std::vector<int>& order,
                     const std::vector<long long>& sizes) {
  EliminationResult r = eliminate(g, order);
  long long total = 0;
  for (const auto& c : r.cliques) total += clique_states(c, sizes);
  return total;
}

Triangulation to_triangulation(const NeighborhoodGraph& g, const EliminationResult& r) {
  Triangulation t;
  for (const auto& [a, b] : r.fills)
    t.fill_edges.emplace_back(g.nodes()[a], g.nodes()[b]);
  for (const auto& c : r.cliques) {
    std::vector<std::string> names;
    names.reserve(c.size());
    for (int v : c) names.push_back(g.nodes()[v]);
    t.cliques.push_back(std::move(names));
  }
  return t;
}

// Greedy min-fill order as node indices.
std::vector<int> greedy_order(const NeighborhoodGraph& g,
                              const std::vector<long long>& sizes) {
  const int n = static_cast<int>(g.nodes().size());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) adj[i][j] = g.has_edge(i, j) ? 1 : 0;
  std::vector<char> alive(n, 1);
  std::vector<int> order;
  order.reserve(n);

  for (int step = 0; step < n; ++step) {
    int best = -1;
    long long best_fill = 0, best_states = 0;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      std::vector<int> nb;
      for (int w = 0; w < n; ++w)
        if (alive[w] && adj[v][w]) nb.push_back(w);
      long long fill = 0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (!adj[nb[i]][nb[j]]) ++fill;
      long long states = sizes[v];
      for (int w : nb) states *= sizes[w];
      // fewest fill edges, then fewest clique states, then name order
      bool better = best < 0 || fill < best_fill ||
                    (fill == best_fill && states < best_states) ||
                    (fill == best_fill && states == best_states &&
                     g.nodes()[v] < g.nodes()[best]);
      if (better) {
        best = v;
        best_fill = fill;
        best_states = states;
      }
    }
    std::vector<int> nb;
    for (int w = 0; w < n; ++w)
      if (alive[w] && adj[best][w]) nb.push_back(w);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        adj[nb[i]][nb[j]] = adj[nb[j]][nb[i]] = 1;
    alive[best] = 0;
    order.push_back(best);
  }
  return order;
}

CliqueDecomposition decomposition_for(const NeighborhoodGraph& g,
                                      const std::vector<long long>& sizes,
                                      const std::vector<int>& order) {
  CliqueDecomposition d;
  for (int v : order) d.order.push_back(g.nodes()[v]);
  EliminationResult r = eliminate(g, order);
  d.triangulation = to_triangulation(g, r);
  d.total_states = 0;
  for (const auto& c : r.cliques) d.total_states += clique_states(c, sizes);
  return d;
}

}  // namespace

bool graham_is_acyclic(const std::vector<std::vector<std::string>>& hyperedges) {
  std::vector<std::set<std::string>> edges;
  for (const auto& e : hyperedges) edges.emplace_back(e.begin(), e.end());

  bool changed = true;
  while (changed && !edges.empty()) {
    changed = false;
    // Rule 1: drop vertices appearing in exactly one hyperedge.
    std::map<std::string, int> occurrences;
    for (const auto& e : edges)
      for (const auto& v : e) ++occurrences[v];
    for (auto& e : edges) {
      for (auto it = e.begin(); it != e.end();) {
        if (occurrences[*it] == 1) {
          it = e.erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
    }
    // Rule 2: drop empty hyperedges and hyperedges contained in another.
    for (std::size_t i = 0; i < edges.size(); ++i) {
      bool removable = edges[i].empty();
      for (std::size_t j = 0; j < edges.size() && !removable; ++j)
        if (i != j && std::includes(edges[j].begin(), edges[j].end(),
                                    edges[i].begin(), edges[i].end()) &&
            (edges[i].size() < edges[j].size() || i > j))
          removable = true;
      if (removable) {
        edges.erase(edges.begin() + static_cast<long>(i));
        changed = true;
        --i;
      }
    }
  }
  return edges.empty();
}

Triangulation triangulate(const NeighborhoodGraph& g,
                          const std::vector<std::string>& order) {
  return to_triangulation(g, eliminate(g, order_indices(g, order)));
}

bool is_chordal(const NeighborhoodGraph& g) {
  // Maximum-cardinality search produces a perfect elimination order iff the
  // graph is chordal; verify the reversed order adds no fill.
  const int n = static_cast<int>(g.nodes().size());
  std::vector<int> weight(n, 0);
  std::vector<char> numbered(n, 0);
  std::vector<int> mcs;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!numbered[v] && (best < 0 || weight[v] > weight[best])) best = v;
    numbered[best] = 1;
    mcs.push_back(best);
    for (int w = 0; w < n; ++w)
      if (!numbered[w] && g.has_edge(best, w)) ++weight[w];
  }
  std::reverse(mcs.begin(), mcs.end());
  return eliminate(g, mcs).fills.empty();
}

long long total_states(const std::vector<std::vector<std::string>>& cliques,
                       const DomainSizes& domains) {
  long long total = 0;
  for (const auto& c : cliques) {
    long long prod = 1;
    for (const auto& name : c) {
      auto it = domains.find(name);
      if (it == domains.end())
        throw Error(ErrorKind::Schema, "no domain size for attribute '" + name + "'");
      prod *= it->second;
    }
    total += prod;
  }
  return total;
}

CliqueDecomposition greedy_decompose(const NeighborhoodGraph& g,
                                     const DomainSizes& domains) {
  std::vector<long long> sizes = domain_vector(g, domains);
  return decomposition_for(g, sizes, greedy_order(g, sizes));
}

CliqueDecomposition anneal_decompose(const NeighborhoodGraph& g,
                                     const DomainSizes& domains,
                                     std::uint64_t seed,
                                     const AnnealSchedule& schedule) {
  if (schedule.t0 < 0 || schedule.alpha <= 0 || schedule.alpha >= 1 ||
      schedule.steps_per_temp < 0 || schedule.floor_ratio <= 0 || schedule.patience < 1)
    throw Error(ErrorKind::Configuration, "invalid annealing schedule");

  std::vector<long long> sizes = domain_vector(g, domains);
  const std::size_t n = g.nodes().size();
  std::vector<int> current = greedy_order(g, sizes);
  long long current_cost = order_cost(g, current, sizes);
  std::vector<int> best = current;
  long long best_cost = current_cost;

  if (n >= 2) {
    const double t0 =
        schedule.t0 > 0 ? schedule.t0 : std::max(1e-12, static_cast<double>(current_cost) / 10.0);
    const int steps = schedule.steps_per_temp > 0 ? schedule.steps_per_temp
                                                  : 100 * static_cast<int>(n);
    std::mt19937_64 rng(seed);
    double temperature = t0;
    int stagnant = 0;
    while (temperature >= schedule.floor_ratio * t0 && stagnant < schedule.patience) {
      bool improved = false;
      for (int s = 0; s < steps; ++s) {
        std::size_t i = uniform_below(rng, n);
        std::size_t j = uniform_below(rng, n - 1);
        if (j >= i) ++j;
        std::swap(current[i], current[j]);
        long long cost = order_cost(g, current, sizes);
        long long delta = cost - current_cost;
        if (delta <= 0 || uniform01(rng) < std::exp(-static_cast<double>(delta) / temperature)) {
          current_cost = cost;
          if (cost < best_cost) {
            best_cost = cost;
            best = current;
            improved = true;
          }
        } else {
          std::swap(current[i], current[j]);  // reject
        }
      }
      stagnant = improved ? 0 : stagnant + 1;
      temperature *= schedule.alpha;
    }
  }
  return decomposition_for(g, sizes, best);
}

JunctionTree build_junction_tree(const std::vector<std::vector<std::string>>& cliques) {
  if (cliques.empty())
    throw Error(ErrorKind::Decomposition, "junction tree needs at least one clique");
  if (!graham_is_acyclic(cliques))
    throw Error(ErrorKind::Decomposition,
                "clique set is not an acyclic hypergraph");

  JunctionTree tree;
  tree.cliques = cliques;
  const int n = static_cast<int>(cliques.size());

  // Name-sorted member views drive the deterministic tie-breaking.
  std::vector<std::vector<std::string>> sorted(n);
  for (int i = 0; i < n; ++i) {
    sorted[i] = cliques[i];
    std::sort(sorted[i].begin(), sorted[i].end());
  }

  struct Candidate {
    int weight;
    std::vector<std::string> lo, hi;  // name-sorted member lists of the pair
    int a, b;
  };
  std::vector<Candidate> candidates;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<std::string> inter;
      std::set_intersection(sorted[i].begin(), sorted[i].end(), sorted[j].begin(),
                            sorted[j].end(), std::back_inserter(inter));
      Candidate c;
      c.weight = static_cast<int>(inter.size());
      c.a = i;
      c.b = j;
      if (sorted[i] <= sorted[j]) {
        c.lo = sorted[i];
        c.hi = sorted[j];
      } else {
        c.lo = sorted[j];
        c.hi = sorted[i];
      }
      candidates.push_back(std::move(c));
    }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    if (x.lo != y.lo) return x.lo < y.lo;
    return x.hi < y.hi;
  });

  // Kruskal; zero-weight candidates connect attribute-disjoint components.
  std::vector<int> root(n);
  for (int i = 0; i < n; ++i) root[i] = i;
  auto find = [&root](int v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  };
  for (const auto& c : candidates) {
    int ra = find(c.a), rb = find(c.b);
    if (ra == rb) continue;
    root[ra] = rb;
    JunctionTree::Edge e;
    e.a = std::min(c.a, c.b);
    e.b = std::max(c.a, c.b);
    // Separator in the order the clique lists its members.
    for (const auto& name : cliques[e.a])
      if (std::count(cliques[e.b].begin(), cliques[e.b].end(), name))
        e.separator.push_back(name);
    tree.edges.push_back(std::move(e));
  }
  return tree;
}

bool has_running_intersection(const JunctionTree& tree) {
  const int n = static_cast<int>(tree.cliques.size());
  std::vector<std::vector<int>> adjacency(n);
  for (const auto& e : tree.edges) {
    adjacency[e.a].push_back(e.b);
    adjacency[e.b].push_back(e.a);
  }
  std::set<std::string> attrs;
  for (const auto& c : tree.cliques) attrs.insert(c.begin(), c.end());
  for (const auto& a : attrs) {
    std::vector<int> holders;
    for (int i = 0; i < n; ++i)
      if (std::count(tree.cliques[i].begin(), tree.cliques[i].end(), a))
        holders.push_back(i);
    if (holders.empty()) continue;
    // BFS within holder cliques only.
    std::set<int> holder_set(holders.begin(), holders.end());
    std::set<int> seen{holders[0]};
    std::vector<int> queue{holders[0]};
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int w : adjacency[v])
        if (holder_set.count(w) && seen.insert(w).second) queue.push_back(w);
    }
    if (seen.size() != holder_set.size()) return false;
  }
  return true;
}

}  // namespace relbn
