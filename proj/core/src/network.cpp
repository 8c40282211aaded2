#include "relbn/network.hpp"

#include <algorithm>
#include <set>

namespace relbn {

namespace {

// All parent configurations in lexicographic order of their index vectors.
std::vector<std::vector<int>> domain_product(const std::vector<AttributeDecl>& attrs) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(attrs.size(), 0);
  while (true) {
    out.push_back(current);
    int i = static_cast<int>(attrs.size()) - 1;
    for (; i >= 0; --i) {
      if (++current[i] < static_cast<int>(attrs[i].domain.size())) break;
      current[i] = 0;
    }
    if (i < 0) break;
  }
  if (attrs.empty()) return {std::vector<int>{}};
  return out;
}

}  // namespace

std::size_t ConditionalTable::defined_rows() const {
  std::size_t n = 0;
  for (const auto& [key, row] : rows) {
    (void)key;
    if (row.has_value()) ++n;
  }
  return n;
}

std::size_t ConditionalTable::undefined_rows() const {
  return rows.size() - defined_rows();
}

NeighborhoodGraph::NeighborhoodGraph(std::vector<std::string> nodes)
    : nodes_(std::move(nodes)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (!index_.emplace(nodes_[i], static_cast<int>(i)).second)
      throw Error(ErrorKind::Schema, "duplicate node '" + nodes_[i] + "'");
  adj_.assign(nodes_.size(), std::vector<char>(nodes_.size(), 0));
}

int NeighborhoodGraph::node_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw Error(ErrorKind::Schema, "unknown node '" + name + "'");
  return it->second;
}

bool NeighborhoodGraph::has_node(const std::string& name) const {
  return index_.count(name) != 0;
}

void NeighborhoodGraph::add_edge(const std::string& a, const std::string& b) {
  int i = node_index(a), j = node_index(b);
  if (i == j) return;  // families may repeat an attribute; no self loops
  adj_[i][j] = adj_[j][i] = 1;
}

bool NeighborhoodGraph::has_edge(const std::string& a, const std::string& b) const {
  return has_edge(node_index(a), node_index(b));
}

std::vector<int> NeighborhoodGraph::neighbors(int v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (adj_[v][i]) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<std::pair<std::string, std::string>> NeighborhoodGraph::edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    for (std::size_t j = i + 1; j < nodes_.size(); ++j)
      if (adj_[i][j]) out.emplace_back(nodes_[i], nodes_[j]);
  return out;
}

std::size_t NeighborhoodGraph::edge_count() const { return edges().size(); }

std::vector<ConditionalTable> extract_ccs(const std::vector<Relation>& relations,
                                          const std::vector<Dependency>& deps) {
  std::vector<ConditionalTable> tables;
  for (const auto& dep : split_singleton_rhs(deps)) {
    const std::string& child = dep.rhs[0];
    // First relation (input order) whose scheme contains the whole family.
    const Relation* source = nullptr;
    for (const auto& r : relations) {
      bool ok = r.has_attribute(child);
      for (const auto& p : dep.lhs) ok = ok && r.has_attribute(p);
      if (ok) { source = &r; break; }
    }
    if (!source) {
      std::string family = child;
      for (const auto& p : dep.lhs) family += "," + p;
      throw Error(ErrorKind::Coverage,
                  "no relation covers the dependency family {" + family + "}");
    }

    ConditionalTable table;
    int child_col = source->attribute_index(child);
    table.child = source->scheme()[child_col];

    // Parents in the source relation's scheme order.
    std::vector<int> parent_cols;
    {
      std::set<int> cols;
      for (const auto& p : dep.lhs) {
        int c = source->attribute_index(p);
        if (c == child_col)
          throw Error(ErrorKind::Schema,
                      "dependency child '" + child + "' repeated among its parents");
        cols.insert(c);
      }
      parent_cols.assign(cols.begin(), cols.end());
    }
    for (int c : parent_cols) table.parents.push_back(source->scheme()[c]);

    // Joint counts of (parents, child), then normalized per parent block.
    std::map<std::vector<int>, std::vector<long long>> counts;
    for (const auto& [row, n] : source->rows()) {
      std::vector<int> key;
      key.reserve(parent_cols.size());
      for (int c : parent_cols) key.push_back(row[c]);
      auto& block = counts[key];
      block.resize(table.child.domain.size(), 0);
      block[row[child_col]] += n;
    }
    for (const auto& config : domain_product(table.parents)) {
      auto it = counts.find(config);
      if (it == counts.end()) {
        table.rows[config] = std::nullopt;
        continue;
      }
      long long total = 0;
      for (long long c : it->second) total += c;
      std::vector<double> dist(table.child.domain.size(), 0.0);
      for (std::size_t v = 0; v < dist.size(); ++v)
        if (v < it->second.size())
          dist[v] = static_cast<double>(it->second[v]) / static_cast<double>(total);
      table.rows[config] = std::move(dist);
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

BeliefNetwork build_bn(const Scheme& scheme, const std::vector<Dependency>& deps) {
  BeliefNetwork bn;
  bn.nodes = scheme;
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < scheme.size(); ++i) index[scheme[i].name] = static_cast<int>(i);

  std::set<std::pair<int, int>> edge_set;
  for (const auto& dep : split_singleton_rhs(deps)) {
    auto child_it = index.find(dep.rhs[0]);
    if (child_it == index.end())
      throw Error(ErrorKind::Schema, "unknown attribute '" + dep.rhs[0] + "'");
    for (const auto& p : dep.lhs) {
      auto parent_it = index.find(p);
      if (parent_it == index.end())
        throw Error(ErrorKind::Schema, "unknown attribute '" + p + "'");
      if (parent_it->second == child_it->second)
        throw Error(ErrorKind::CyclicDependencies,
                    "dependency makes '" + p + "' depend on itself");
      edge_set.emplace(parent_it->second, child_it->second);
    }
  }

  // Cycle detection with an explicit cycle in the diagnostic.
  const int n = static_cast<int>(scheme.size());
  std::vector<std::vector<int>> out_edges(n);
  for (const auto& [a, b] : edge_set) out_edges[a].push_back(b);
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::vector<int> parent(n, -1);
  for (int start = 0; start < n; ++start) {
    if (state[start]) continue;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int v = stack.back();
      if (state[v] == 0) {
        state[v] = 1;
        for (int w : out_edges[v]) {
          if (state[w] == 1) {
            std::string cycle = scheme[w].name;
            for (int u = v; u != -1 && u != w; u = parent[u])
              cycle = scheme[u].name + " -> " + cycle;
            throw Error(ErrorKind::CyclicDependencies,
                        "dependencies form a cycle: " + scheme[w].name + " -> " + cycle);
          }
          if (state[w] == 0) {
            parent[w] = v;
            stack.push_back(w);
          }
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }

  for (const auto& [a, b] : edge_set)
    bn.edges.emplace_back(scheme[a].name, scheme[b].name);
  return bn;
}

NeighborhoodGraph neighborhood_graph(const std::vector<std::string>& scheme,
                                     const std::vector<std::vector<std::string>>& families) {
  NeighborhoodGraph g(scheme);
  for (const auto& family : families) {
    if (family.empty())
      throw Error(ErrorKind::Schema, "empty dependency family");
    for (const auto& a : family)
      if (!g.has_node(a)) throw Error(ErrorKind::Schema, "unknown attribute '" + a + "'");
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = i + 1; j < family.size(); ++j)
        g.add_edge(family[i], family[j]);
  }
  return g;
}

std::vector<std::vector<std::string>> dependency_families(
    const std::vector<Dependency>& deps) {
  std::vector<std::vector<std::string>> families;
  for (const auto& dep : split_singleton_rhs(deps)) {
    std::vector<std::string> family = dep.lhs;
    family.push_back(dep.rhs[0]);
    families.push_back(std::move(family));
  }
  return families;
}

}  // namespace relbn
