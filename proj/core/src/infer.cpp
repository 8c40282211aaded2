#include "relbn/infer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace relbn {

namespace {

constexpr double kConstraintMassTolerance = 1e-6;

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

// Cliques compared as name-sorted member lists; used for routing and for the
// propagation root so results do not depend on optimizer output order.
std::vector<int> lexicographic_clique_order(
    const std::vector<std::vector<std::string>>& cliques) {
  std::vector<std::vector<std::string>> sorted(cliques.size());
  for (std::size_t i = 0; i < cliques.size(); ++i) {
    sorted[i] = cliques[i];
    std::sort(sorted[i].begin(), sorted[i].end());
  }
  std::vector<int> order(cliques.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&sorted](int a, int b) {
    if (sorted[static_cast<std::size_t>(a)] != sorted[static_cast<std::size_t>(b)])
      return sorted[static_cast<std::size_t>(a)] < sorted[static_cast<std::size_t>(b)];
    return a < b;
  });
  return order;
}

bool clique_covers(const std::vector<std::string>& clique,
                   const std::vector<std::string>& attrs) {
  for (const auto& a : attrs)
    if (std::find(clique.begin(), clique.end(), a) == clique.end()) return false;
  return true;
}

// First clique (in lexicographic clique order) containing every attribute.
int route_to_clique(const std::vector<std::vector<std::string>>& cliques,
                    const std::vector<int>& order,
                    const std::vector<std::string>& attrs, const char* what) {
  for (int idx : order)
    if (clique_covers(cliques[static_cast<std::size_t>(idx)], attrs)) return idx;
  throw Error(ErrorKind::Scope, std::string("no clique covers the ") + what +
                                    " over {" + join_names(attrs) + "}");
}

// Positions of q.scheme attributes inside the potential (q.scheme order).
std::vector<int> constraint_positions(const CliquePotential& p,
                                      const MarginalConstraint& q) {
  std::vector<int> positions;
  positions.reserve(q.scheme.size());
  for (const auto& name : q.scheme) {
    int pos = -1;
    for (std::size_t i = 0; i < p.attrs.size(); ++i)
      if (p.attrs[i].name == name) { pos = static_cast<int>(i); break; }
    if (pos < 0)
      throw Error(ErrorKind::Scope,
                  "constraint attribute '" + name + "' is not covered by the clique");
    positions.push_back(pos);
  }
  return positions;
}

// Rejects constraints whose keys fall outside the attribute domains or whose
// mass is not a probability distribution.
void validate_constraint(const MarginalConstraint& q,
                         const std::vector<AttributeDecl>& decls) {
  double mass = 0;
  for (const auto& [key, prob] : q.table) {
    if (key.size() != q.scheme.size())
      throw Error(ErrorKind::Schema, "constraint entry width does not match its scheme");
    for (std::size_t i = 0; i < key.size(); ++i) {
      const auto& dom = decls[i].domain;
      if (std::find(dom.begin(), dom.end(), key[i]) == dom.end())
        throw Error(ErrorKind::Schema, "constraint value '" + key[i] +
                                           "' is not in the domain of '" +
                                           decls[i].name + "'");
    }
    if (prob < 0)
      throw Error(ErrorKind::Schema, "constraint probabilities must be nonnegative");
    mass += prob;
  }
  if (std::abs(mass - 1.0) > kConstraintMassTolerance)
    throw Error(ErrorKind::Schema, "constraint over {" + join_names(q.scheme) +
                                       "} must sum to 1");
}

}  // namespace

// ---- Model ------------------------------------------------------------------

double CliqueTreeModel::separator_disagreement() const {
  double worst = 0;
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const auto& edge = tree.edges[e];
    auto ma = potentials[static_cast<std::size_t>(edge.a)].marginal(edge.separator);
    auto mb = potentials[static_cast<std::size_t>(edge.b)].marginal(edge.separator);
    std::set<std::vector<int>> keys;
    for (const auto& [k, v] : ma) { (void)v; keys.insert(k); }
    for (const auto& [k, v] : mb) { (void)v; keys.insert(k); }
    for (const auto& k : keys) {
      auto ia = ma.find(k);
      auto ib = mb.find(k);
      double va = ia == ma.end() ? 0.0 : ia->second;
      double vb = ib == mb.end() ? 0.0 : ib->second;
      worst = std::max(worst, std::abs(va - vb));
    }
  }
  return worst;
}

CliqueTreeModel build_model(const Relation& r, const std::vector<Dependency>& deps,
                            const ModelBuildOptions& options) {
  // Validates acyclicity of the dependency graph as a side effect.
  (void)build_bn(r.scheme(), deps);

  NeighborhoodGraph g =
      neighborhood_graph(r.attribute_names(), dependency_families(deps));
  DomainSizes domains;
  for (const auto& a : r.scheme())
    domains[a.name] = static_cast<int>(a.domain.size());

  CliqueDecomposition decomposition =
      options.optimizer == Optimizer::Greedy
          ? greedy_decompose(g, domains)
          : anneal_decompose(g, domains, options.seed, options.schedule);

  CliqueTreeModel model;
  model.tree = build_junction_tree(decomposition.triangulation.cliques);
  model.potentials.reserve(model.tree.cliques.size());
  for (const auto& clique : model.tree.cliques)
    model.potentials.push_back(frequency_prior(r, clique));
  model.edge_refs.reserve(model.tree.edges.size());
  for (const auto& edge : model.tree.edges)
    model.edge_refs.push_back(
        model.potentials[static_cast<std::size_t>(edge.a)].marginal(edge.separator));
  return model;
}

// ---- Jeffrey updating -----------------------------------------------------------

FrequencyTable belief_extract(const CliquePotential& p,
                              const std::vector<std::string>& attrs) {
  std::vector<int> positions;
  positions.reserve(attrs.size());
  for (const auto& name : attrs) {
    int pos = -1;
    for (std::size_t i = 0; i < p.attrs.size(); ++i)
      if (p.attrs[i].name == name) { pos = static_cast<int>(i); break; }
    if (pos < 0)
      throw Error(ErrorKind::Scope, "attribute '" + name + "' is not covered by clique");
    positions.push_back(pos);
  }
  FrequencyTable out;
  out.attrs = attrs;
  for (const auto& [config, prob] : p.table) {
    std::vector<std::string> key;
    key.reserve(positions.size());
    for (int pos : positions)
      key.push_back(p.attrs[static_cast<std::size_t>(pos)]
                        .domain[static_cast<std::size_t>(config[static_cast<std::size_t>(pos)])]);
    out.entries[key] += prob;
  }
  return out;
}

CliquePotential jeffrey_update(const CliquePotential& p, const JeffreyConstraint& q) {
  std::vector<int> positions = constraint_positions(p, q);
  std::vector<AttributeDecl> decls;
  decls.reserve(positions.size());
  for (int pos : positions) decls.push_back(p.attrs[static_cast<std::size_t>(pos)]);
  validate_constraint(q, decls);

  // Current marginal P(X = x), keyed symbolically in constraint order.
  std::map<std::vector<std::string>, double> current;
  for (const auto& [config, prob] : p.table) {
    std::vector<std::string> key;
    key.reserve(positions.size());
    for (std::size_t j = 0; j < positions.size(); ++j)
      key.push_back(decls[j].domain[static_cast<std::size_t>(
          config[static_cast<std::size_t>(positions[j])])]);
    current[key] += prob;
  }
  for (const auto& [key, prob] : q.table) {
    if (prob <= 0) continue;
    auto it = current.find(key);
    if (it == current.end() || it->second <= 0) {
      std::string shown;
      for (std::size_t i = 0; i < key.size(); ++i)
        shown += (i ? "," : "") + key[i];
      throw Error(ErrorKind::IncompatibleEvidence,
                  "constraint puts probability on impossible configuration (" + shown +
                      ") of {" + join_names(q.scheme) + "}");
    }
  }

  CliquePotential out;
  out.attrs = p.attrs;
  for (const auto& [config, prob] : p.table) {
    std::vector<std::string> key;
    key.reserve(positions.size());
    for (std::size_t j = 0; j < positions.size(); ++j)
      key.push_back(decls[j].domain[static_cast<std::size_t>(
          config[static_cast<std::size_t>(positions[j])])]);
    auto qit = q.table.find(key);
    double target = qit == q.table.end() ? 0.0 : qit->second;
    if (target <= 0) continue;
    out.table[config] = prob * target / current[key];
  }
  return out;
}

// ---- Propagation ----------------------------------------------------------------

namespace {

// Receiver absorbs the sender's separator marginal as a ratio update against
// the edge's stored separator table, then the table is replaced by the
// message. When the receiver still agrees with the stored table this is
// exactly a Jeffrey update with the message as constraint.
void absorb(CliquePotential& receiver, const std::map<std::vector<int>, double>& message,
            std::map<std::vector<int>, double>& edge_ref,
            const std::vector<std::string>& separator) {
  std::vector<int> positions = receiver.attr_positions(separator);
  std::map<std::vector<int>, double> updated;
  double total = 0;
  for (const auto& [config, prob] : receiver.table) {
    std::vector<int> key;
    key.reserve(positions.size());
    for (int pos : positions) key.push_back(config[static_cast<std::size_t>(pos)]);
    auto mit = message.find(key);
    double q = mit == message.end() ? 0.0 : mit->second;
    if (q <= 0) continue;
    auto rit = edge_ref.find(key);
    double ref = rit == edge_ref.end() ? 0.0 : rit->second;
    if (ref <= 0) continue;  // stale mass the edge no longer supports
    double value = prob * q / ref;
    updated[config] = value;
    total += value;
  }
  if (total <= 0)
    throw Error(ErrorKind::IncompatibleEvidence,
                "propagation emptied a clique potential; the constraints are "
                "jointly unsatisfiable");
  for (auto& [config, prob] : updated) {
    (void)config;
    prob /= total;
  }
  receiver.table = std::move(updated);
  edge_ref = message;
}

}  // namespace

CliqueTreeModel propagate(const CliqueTreeModel& model,
                          const std::vector<JeffreyConstraint>& constraints,
                          const PropagateOptions& options) {
  if (model.potentials.size() != model.tree.cliques.size() ||
      model.edge_refs.size() != model.tree.edges.size())
    throw Error(ErrorKind::Schema, "model potentials do not match its tree");
  if (options.max_sweeps < 1)
    throw Error(ErrorKind::Configuration, "max_sweeps must be at least 1");

  CliqueTreeModel out = model;
  std::vector<int> order = lexicographic_clique_order(out.tree.cliques);

  for (const auto& constraint : constraints) {
    int idx = route_to_clique(out.tree.cliques, order, constraint.scheme, "constraint");
    out.potentials[static_cast<std::size_t>(idx)] =
        jeffrey_update(out.potentials[static_cast<std::size_t>(idx)], constraint);
  }

  const std::size_t n = out.tree.cliques.size();
  if (n == 0) return out;

  // Rooted traversal order from the lexicographically smallest clique.
  std::vector<std::vector<std::pair<int, int>>> adjacent(n);  // (neighbor, edge)
  for (std::size_t e = 0; e < out.tree.edges.size(); ++e) {
    const auto& edge = out.tree.edges[e];
    adjacent[static_cast<std::size_t>(edge.a)].emplace_back(edge.b, static_cast<int>(e));
    adjacent[static_cast<std::size_t>(edge.b)].emplace_back(edge.a, static_cast<int>(e));
  }
  const int root = order[0];
  std::vector<int> bfs{root};
  std::vector<int> parent(n, -1), parent_edge(n, -1);
  std::vector<char> seen(n, 0);
  seen[static_cast<std::size_t>(root)] = 1;
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    int u = bfs[head];
    for (auto [v, e] : adjacent[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      parent[static_cast<std::size_t>(v)] = u;
      parent_edge[static_cast<std::size_t>(v)] = e;
      bfs.push_back(v);
    }
  }

  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    if (out.separator_disagreement() <= options.tolerance) return out;

    // Collect: leaves toward the root.
    for (std::size_t i = bfs.size(); i-- > 1;) {
      int v = bfs[i];
      int u = parent[static_cast<std::size_t>(v)];
      int e = parent_edge[static_cast<std::size_t>(v)];
      const auto& sep = out.tree.edges[static_cast<std::size_t>(e)].separator;
      auto message = out.potentials[static_cast<std::size_t>(v)].marginal(sep);
      absorb(out.potentials[static_cast<std::size_t>(u)], message,
             out.edge_refs[static_cast<std::size_t>(e)], sep);
    }
    // Distribute: root toward the leaves.
    for (std::size_t i = 1; i < bfs.size(); ++i) {
      int v = bfs[i];
      int u = parent[static_cast<std::size_t>(v)];
      int e = parent_edge[static_cast<std::size_t>(v)];
      const auto& sep = out.tree.edges[static_cast<std::size_t>(e)].separator;
      auto message = out.potentials[static_cast<std::size_t>(u)].marginal(sep);
      absorb(out.potentials[static_cast<std::size_t>(v)], message,
             out.edge_refs[static_cast<std::size_t>(e)], sep);
    }
  }
  if (out.separator_disagreement() <= options.tolerance) return out;
  throw Error(ErrorKind::Convergence,
              "separator marginals did not calibrate within " +
                  std::to_string(options.max_sweeps) + " sweeps");
}

std::vector<FrequencyTable> query(const CliqueTreeModel& model,
                                  const std::vector<JeffreyConstraint>& constraints,
                                  const std::vector<std::vector<std::string>>& targets) {
  CliqueTreeModel posterior = propagate(model, constraints);
  std::vector<int> order = lexicographic_clique_order(posterior.tree.cliques);
  std::vector<FrequencyTable> out;
  out.reserve(targets.size());
  for (const auto& target : targets) {
    int idx = route_to_clique(posterior.tree.cliques, order, target, "target");
    out.push_back(belief_extract(posterior.potentials[static_cast<std::size_t>(idx)], target));
  }
  return out;
}

// ---- Brute-force reference over the universal relation --------------------------

std::vector<FrequencyTable> oracle_query(const Relation& universal,
                                         const std::vector<JeffreyConstraint>& constraints,
                                         const std::vector<std::vector<std::string>>& targets) {
  if (universal.empty())
    throw Error(ErrorKind::NoData, "the universal relation has no rows");

  std::map<std::vector<int>, double> weights;
  for (const auto& [row, count] : universal.rows())
    weights[row] = static_cast<double>(count);

  for (const auto& constraint : constraints) {
    std::vector<int> columns;
    std::vector<AttributeDecl> decls;
    for (const auto& name : constraint.scheme) {
      int c = universal.attribute_index(name);
      columns.push_back(c);
      decls.push_back(universal.scheme()[static_cast<std::size_t>(c)]);
    }
    validate_constraint(constraint, decls);

    std::map<std::vector<std::string>, double> mass;
    double total = 0;
    for (const auto& [row, w] : weights) {
      std::vector<std::string> key;
      key.reserve(columns.size());
      for (std::size_t j = 0; j < columns.size(); ++j)
        key.push_back(decls[j].domain[static_cast<std::size_t>(
            row[static_cast<std::size_t>(columns[j])])]);
      mass[key] += w;
      total += w;
    }
    for (const auto& [key, prob] : constraint.table) {
      if (prob <= 0) continue;
      auto it = mass.find(key);
      if (it == mass.end() || it->second <= 0) {
        std::string shown;
        for (std::size_t i = 0; i < key.size(); ++i)
          shown += (i ? "," : "") + key[i];
        throw Error(ErrorKind::IncompatibleEvidence,
                    "constraint puts probability on impossible configuration (" + shown +
                        ") of {" + join_names(constraint.scheme) + "}");
      }
    }
    for (auto& [row, w] : weights) {
      std::vector<std::string> key;
      key.reserve(columns.size());
      for (std::size_t j = 0; j < columns.size(); ++j)
        key.push_back(decls[j].domain[static_cast<std::size_t>(
            row[static_cast<std::size_t>(columns[j])])]);
      auto qit = constraint.table.find(key);
      double target = qit == constraint.table.end() ? 0.0 : qit->second;
      w = target <= 0 ? 0.0 : w * (target * total / mass[key]);
    }
  }

  double total = 0;
  for (const auto& [row, w] : weights) {
    (void)row;
    total += w;
  }
  if (total <= 0)
    throw Error(ErrorKind::IncompatibleEvidence,
                "the constraints drove every row's weight to zero");

  std::vector<FrequencyTable> out;
  out.reserve(targets.size());
  for (const auto& target : targets) {
    FrequencyTable table;
    table.attrs = target;
    std::vector<int> columns;
    for (const auto& name : target) columns.push_back(universal.attribute_index(name));
    for (const auto& [row, w] : weights) {
      if (w <= 0) continue;
      std::vector<std::string> key;
      key.reserve(columns.size());
      for (int c : columns)
        key.push_back(universal.value_at(c, row[static_cast<std::size_t>(c)]));
      table.entries[key] += w / total;
    }
    out.push_back(std::move(table));
  }
  return out;
}

}  // namespace relbn
