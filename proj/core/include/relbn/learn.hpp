#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relbn/network.hpp"
#include "relbn/relation.hpp"

namespace relbn {

// ---- Index encoding -------------------------------------------------------

// Binary width of one attribute's domain position code: ceil(log2(|domain|)),
// so binary domains take 1 bit and three-valued domains take 2.
int attribute_code_width(const AttributeDecl& attr);

// Encodes a configuration (domain indices, `attrs` order) as lowercase hex:
// per-attribute position codes are concatenated in order and the resulting
// bit string is zero-padded to ceil(total bits / 4) digits.
std::string encode_index(const std::vector<int>& config,
                         const std::vector<AttributeDecl>& attrs);
std::string encode_index_values(const std::vector<std::string>& values,
                                const std::vector<AttributeDecl>& attrs);

// Exact inverse of encode_index; rejects strings of the wrong length and
// codes outside an attribute's domain.
std::vector<int> decode_index(const std::string& hex,
                              const std::vector<AttributeDecl>& attrs);

// ---- Clique potentials ------------------------------------------------------

// A joint distribution over a clique's attributes. Only configurations with
// positive probability are stored; entries sum to 1 within tolerance.
struct CliquePotential {
  std::vector<AttributeDecl> attrs;
  std::map<std::vector<int>, double> table;

  double total_mass() const;
  // Marginal over a subset of `attrs` (result keyed in `attrs` order
  // restricted to the subset).
  std::map<std::vector<int>, double> marginal(const std::vector<std::string>& subset) const;
  std::vector<int> attr_positions(const std::vector<std::string>& subset) const;
};

// Normalized multiset projection of `r` onto the clique: the relative
// frequency prior of each observed clique configuration.
CliquePotential frequency_prior(const Relation& r,
                                const std::vector<std::string>& clique);

// ---- Smoothed conditionals --------------------------------------------------

// Conditional table from raw counts with add-one (Laplace/Dirichlet)
// smoothing: P(x | pi) = (C(x, pi) + 1) / (C(pi) + |domain of child|).
// Configurations absent from `counts` become uniform rows. Every row is
// defined.
ConditionalTable dirichlet_table(
    const AttributeDecl& child, const std::vector<AttributeDecl>& parents,
    const std::map<std::vector<int>, std::vector<long long>>& counts);

// Convenience: counts taken from a relation for dependency <parents, child>.
ConditionalTable dirichlet_from_relation(const Relation& r,
                                         const std::vector<std::string>& parents,
                                         const std::string& child);

// ---- Boolean minimization ---------------------------------------------------

struct SopLiteral {
  std::string attr;
  bool negated = false;
};

// Sum-of-products formula. Zero terms = constant false ("0"); a single empty
// term = constant true ("1"). Complexity counts connectives: total literal
// occurrences minus one for non-constant formulas, 0 for constants.
struct SopFormula {
  std::vector<std::vector<SopLiteral>> terms;

  bool is_constant() const;
  int complexity() const;
  std::string to_string() const;
  bool evaluate(const std::map<std::string, bool>& assignment) const;
};

// Complete truth table over binary variables; `values` is indexed by the
// concatenated variable bits, most significant bit = vars[0].
struct TruthTable {
  std::vector<std::string> vars;
  std::vector<bool> values;  // size == 2^vars.size()
};

// Exact minimal sum-of-products cover (prime implicants + branch-and-bound
// exact cover), minimizing total literal occurrences. At most 6 variables.
SopFormula sop_minimize(const TruthTable& table);

// ---- Neighbor completion of sparse conditional maps ------------------------

// Map of P(child = designated value | parent configuration) with UNSEEN cells
// (nullopt). Two cells are neighbors when they differ in exactly one
// attribute by one step of its declared domain order.
struct KMap {
  AttributeDecl child;                   // binary child; cell value = P(child = domain[1] | cell)
  std::vector<AttributeDecl> parents;
  std::map<std::vector<int>, std::optional<double>> cells;  // full key set
};

// KMap view of a conditional table (binary child required; UNDEFINED rows
// become UNSEEN cells).
KMap kmap_from_table(const ConditionalTable& table);

// Restricts every attribute with more than two domain values to its first
// and last value; cells (and seen data) outside the slice are dropped.
KMap binary_slice(const KMap& map);
ConditionalTable binary_slice(const ConditionalTable& table);

enum class CellOrigin { Data, NnFill, OrFill, MeanFill };

struct NnorResult {
  KMap completed;
  std::optional<SopFormula> formula;  // present for all-binary deterministic maps
  std::map<std::vector<int>, CellOrigin> origins;
};

// One joint {0,1} assignment of the map's unseen cells (cell-key order) with
// the minimized formula of the completed map.
struct OrAssignmentScore {
  std::vector<int> assignment;
  SopFormula formula;
  int complexity = 0;
};

// Scores every {0,1} assignment of the UNSEEN cells of a deterministic
// all-binary map (Capacity error above `cap` assignments). Results are in
// assignment-lexicographic order.
std::vector<OrAssignmentScore> enumerate_or_assignments(const KMap& map,
                                                        std::size_t cap = std::size_t{1} << 16);

struct NnorOptions {
  double tolerance = 1e-9;            // unanimity comparison tolerance
  std::size_t or_cap = std::size_t{1} << 16;  // assignment-enumeration cap
};

// Three-phase completion:
//   1. nearest-neighbor fill: any unseen cell whose seen neighbors agree
//      (within tolerance) takes that value; cells with more seen neighbors
//      first, ties by cell key; repeated to fixpoint.
//   2. for deterministic {0,1} maps over binary attributes only: remaining
//      unseen cells take the joint assignment minimizing the minimal
//      sum-of-products complexity (ties: fewer 1-cells, then lexicographic).
//   3. otherwise: remaining unseen cells take the arithmetic mean of their
//      seen/filled neighbors, same processing order as phase 1, to fixpoint.
// Never overwrites a seen cell. A map with no seen cell is a NoData error.
NnorResult nnor_complete(const KMap& map, const NnorOptions& options = {});

// Completed conditional table corresponding to an nnor result (binary child:
// row = (1 - v, v) in child domain order).
ConditionalTable nnor_table(const NnorResult& result);

}  // namespace relbn
