#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relbn/decompose.hpp"
#include "relbn/learn.hpp"
#include "relbn/network.hpp"

namespace relbn {

using JeffreyConstraint = MarginalConstraint;

// A junction tree with one potential per clique and, per tree edge, the
// separator table the two endpoints last agreed on. In a calibrated model
// adjacent potentials agree on their separator marginals within tolerance.
struct CliqueTreeModel {
  JunctionTree tree;
  std::vector<CliquePotential> potentials;                 // parallel to tree.cliques
  std::vector<std::map<std::vector<int>, double>> edge_refs;  // parallel to tree.edges

  // Largest L-inf disagreement between adjacent separator marginals.
  double separator_disagreement() const;
};

enum class Optimizer { Greedy, Anneal };

struct ModelBuildOptions {
  Optimizer optimizer = Optimizer::Greedy;
  std::uint64_t seed = 0;
  AnnealSchedule schedule{};
};

// Full pipeline: dependencies -> DAG validation -> neighborhood graph ->
// clique decomposition -> junction tree -> frequency priors from `r`.
CliqueTreeModel build_model(const Relation& r, const std::vector<Dependency>& deps,
                            const ModelBuildOptions& options = {});

// Marginal of a potential over X (X must be contained in the clique; Scope
// error otherwise). Keys are symbolic value combinations.
FrequencyTable belief_extract(const CliquePotential& p,
                              const std::vector<std::string>& attrs);

// Jeffrey's rule: P'(s) = P(s) * Q(x_s) / P(X = x_s). The constraint scheme
// must be contained in the potential's attributes; Q mass on a configuration
// of probability zero is an IncompatibleEvidence error. The result's marginal
// on X equals Q.
CliquePotential jeffrey_update(const CliquePotential& p, const JeffreyConstraint& q);

struct PropagateOptions {
  double tolerance = 1e-9;
  int max_sweeps = 100;
};

// Applies the constraints in input order (each routed to the first covering
// clique in lexicographic clique order), then calibrates by collect/distribute
// sweeps. Each message carries the sender's separator marginal and the
// receiver absorbs it as a ratio update against the edge's stored separator
// table -- exactly a Jeffrey update whenever the receiver still agrees with
// that edge. Sweeps repeat until every separator disagreement is below
// tolerance (Convergence error past max_sweeps).
CliqueTreeModel propagate(const CliqueTreeModel& model,
                          const std::vector<JeffreyConstraint>& constraints,
                          const PropagateOptions& options = {});

// propagate + belief_extract for each target (targets routed like
// constraints; a target covered by no clique is a Scope error).
std::vector<FrequencyTable> query(const CliqueTreeModel& model,
                                  const std::vector<JeffreyConstraint>& constraints,
                                  const std::vector<std::vector<std::string>>& targets);

// Brute-force reference: applies the constraints to the universal relation by
// row reweighting (w *= Q(x)/F(x) with F the current weighted frequency) and
// reads the requested marginals off the reweighted table.
std::vector<FrequencyTable> oracle_query(const Relation& universal,
                                         const std::vector<JeffreyConstraint>& constraints,
                                         const std::vector<std::vector<std::string>>& targets);

}  // namespace relbn
