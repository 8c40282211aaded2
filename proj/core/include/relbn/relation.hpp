#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relbn/error.hpp"

namespace relbn {

// An attribute together with its finite ordered domain. The declaration order
// of the domain is semantic: it drives index encoding, map adjacency and the
// printed order of distributions, so two attributes are interchangeable only
// if both name and domain (including order) agree.
struct AttributeDecl {
  std::string name;
  std::vector<std::string> domain;

  bool operator==(const AttributeDecl& o) const {
    return name == o.name && domain == o.domain;
  }
};

using Scheme = std::vector<AttributeDecl>;

// A finite multiset relation: a scheme plus rows with positive multiplicities.
// Rows are stored as vectors of domain indices (one per scheme position) so
// all set/statistical operations reduce to integer manipulation; symbolic
// values only appear at the API boundary.
class Relation {
 public:
  Relation() = default;
  explicit Relation(Scheme scheme);

  const Scheme& scheme() const { return scheme_; }
  const std::vector<std::string>& attribute_names() const { return names_; }

  // Index of an attribute in the scheme; Schema error when absent.
  int attribute_index(const std::string& name) const;
  bool has_attribute(const std::string& name) const;

  // Resolve a symbolic value for the given column to its domain index.
  int value_index(int column, const std::string& value) const;
  const std::string& value_at(int column, int index) const;

  // Adds `count` copies of the row (symbolic values, scheme order).
  void add_row(const std::vector<std::string>& values, long long count = 1);
  void add_row_indices(const std::vector<int>& indices, long long count = 1);

  // row (as domain indices) -> multiplicity, ordered lexicographically.
  const std::map<std::vector<int>, long long>& rows() const { return rows_; }

  long long total_count() const { return total_; }
  std::size_t distinct_rows() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  // Symbolic view of one stored row.
  std::vector<std::string> row_values(const std::vector<int>& row) const;

 private:
  Scheme scheme_;
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  std::map<std::vector<int>, long long> rows_;
  long long total_ = 0;
};

enum class ProjectionMode { Set, Multiset };

// A (possibly conditional) frequency table over a subset of attributes.
// Entries are keyed by symbolic value combinations in `attrs` order and are
// nonnegative; an unconditioned table sums to 1.
struct FrequencyTable {
  std::vector<std::string> attrs;
  std::map<std::vector<std::string>, double> entries;
};

// ---- Relational algebra -------------------------------------------------

// Rows matching every (attribute, value) pair; multiplicities preserved.
Relation select(const Relation& r,
                const std::map<std::string, std::string>& assignment);

// Projection onto `attrs` (treated as a set; result columns keep the order of
// r's scheme). Set mode collapses duplicates to multiplicity 1, multiset mode
// sums multiplicities.
Relation project(const Relation& r, const std::vector<std::string>& attrs,
                 ProjectionMode mode);

// Natural join on shared attribute names (set semantics). Shared attributes
// must carry identical domain declarations.
Relation natural_join(const Relation& r, const Relation& s);

// Reorders columns to the given attribute list (a permutation superset check
// is applied: `attrs` must name exactly r's attributes).
Relation reorder_columns(const Relation& r, const std::vector<std::string>& attrs);

// ---- Statistics ---------------------------------------------------------

// Marginal frequency of each X-combination present in r. X may be empty
// (yields a single entry of 1). Empty relation -> UndefinedFrequency.
FrequencyTable frequency(const Relation& r, const std::vector<std::string>& attrs);

// Conditional frequency of X given the assignment; zero-count condition ->
// UndefinedConditional.
FrequencyTable cond_frequency(const Relation& r,
                              const std::vector<std::string>& attrs,
                              const std::map<std::string, std::string>& given);

// ---- Dependency tests (multiplicities matter only for pd) ----------------

// Functional dependency X -> Y over the distinct rows of r.
bool fd_holds(const Relation& r, const std::vector<std::string>& lhs,
              const std::vector<std::string>& rhs);

// Multivalued dependency X ->> Y: within every X-group the (Y, rest)
// combinations form a full cross product.
bool md_holds(const Relation& r, const std::vector<std::string>& lhs,
              const std::vector<std::string>& rhs);

// Probabilistic dependency X |-> Y tested by the exact integer identity
//   |sel(XYZ=xyz)| * |sel(X=x)| == |sel(XY=xy)| * |sel(XZ=xz)|
// for every tuple of r, with Z the complement of X u Y.
bool pd_holds(const Relation& r, const std::vector<std::string>& lhs,
              const std::vector<std::string>& rhs);

// Same identity with a caller-chosen Z (conditional independence of Y and Z
// given X); Z must be disjoint from X u Y.
bool pd_holds_wrt(const Relation& r, const std::vector<std::string>& x,
                  const std::vector<std::string>& y,
                  const std::vector<std::string>& z);

}  // namespace relbn
