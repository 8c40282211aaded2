#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relbn/relation.hpp"

namespace relbn {

enum class DependencyKind { Functional, Multivalued, Probabilistic };

// A declared dependency lhs -> rhs (functional), lhs ->> rhs (multivalued)
// or lhs |-> rhs (probabilistic). lhs may be empty, rhs may not.
struct Dependency {
  DependencyKind kind = DependencyKind::Functional;
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;
};

// Rewrites every dependency to single-attribute rhs form (one copy per rhs
// attribute). Empty rhs -> Schema error.
std::vector<Dependency> split_singleton_rhs(const std::vector<Dependency>& deps);

// A decomposition of a universal scheme into subschemes. `schemes` contains
// no duplicates and no scheme contained in another; `key_scheme`, when
// present, points at the scheme added for a candidate key.
struct Decomposition {
  std::vector<std::vector<std::string>> schemes;
  std::optional<std::vector<std::string>> key_scheme;
};

// Closure of X under the functional dependencies in `fds` (non-FD entries are
// rejected with an UnsupportedDependency error).
std::set<std::string> attribute_closure(const std::vector<Dependency>& fds,
                                        const std::vector<std::string>& x);

// K is a key of R iff closure(K) covers R and no proper subset's closure does.
bool is_key(const std::vector<Dependency>& fds,
            const std::vector<std::string>& scheme,
            const std::vector<std::string>& candidate);

// First key in (size, lexicographic) order, or nullopt when only R itself
// closes R. Schemes beyond 24 attributes are rejected (SizeLimit).
std::optional<std::vector<std::string>> find_key(
    const std::vector<Dependency>& fds,
    const std::vector<std::string>& scheme);

// Scheme-level fourth-normal-form decomposition:
//   - if some dependency spans the whole scheme, the result is {R};
//   - attributes mentioned by no dependency become singleton schemes;
//   - every dependency <X, A> contributes the scheme XA;
//   - when the functional subset admits a key K != R, K is appended.
// Multi-attribute rhs are split internally; schemes are de-duplicated and
// subset-reduced. Attribute order inside a scheme follows `scheme`.
Decomposition decompose_4nf(const std::vector<std::string>& scheme,
                            const std::vector<Dependency>& deps);

// Instance-level lossless-join test: natural-joining the set projections of r
// onto the schemes reproduces exactly the distinct tuples of r. The schemes
// must cover r's attributes.
bool verify_lossless_join(const Relation& r,
                          const std::vector<std::vector<std::string>>& schemes);

// Dependency preservation for functional dependencies: the union of the
// projections of `fds` onto the schemes implies every dependency in `fds`.
bool preserves_fds(const std::vector<Dependency>& fds,
                   const std::vector<std::vector<std::string>>& schemes);

}  // namespace relbn
