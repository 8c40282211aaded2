#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relbn/decompose.hpp"
#include "relbn/dependency.hpp"
#include "relbn/infer.hpp"
#include "relbn/learn.hpp"
#include "relbn/network.hpp"
#include "relbn/relation.hpp"

namespace relbn::io {

// ---- Parsing ---------------------------------------------------------------
//
// All text formats share the same conventions: UTF-8, one record per line,
// `#` starts a comment, blank lines are ignored, fields are separated by
// commas and/or whitespace. Parse errors carry the 1-based line number.

// Relation file: a header line of attribute names (optional trailing
// `__count` column holding multiplicities) followed by value rows. When
// `domains` is given it fixes each attribute's domain and order; otherwise
// domains collect values in order of first appearance.
Relation parse_relation_text(const std::string& text,
                             const std::optional<Scheme>& domains = std::nullopt);
Relation load_relation(const std::string& path,
                       const std::optional<std::string>& domains_path = std::nullopt);

// Domain file: lines of the form `attr: v1,v2,...`.
Scheme parse_domains_text(const std::string& text);
Scheme load_domains(const std::string& path);

// Dependency file: `X1,X2 -> A` (functional), `X ->> Y` (multivalued),
// `X |-> Y` (probabilistic). lhs may be empty, rhs may list several
// attributes.
std::vector<Dependency> parse_dependencies_text(const std::string& text);
std::vector<Dependency> load_dependencies(const std::string& path);

// Evidence file: `attr=value` lines (point-mass constraints) and
//   marginal X,Y {
//     x,y : p
//   }
// blocks (general constraints), in application order.
std::vector<MarginalConstraint> parse_evidence_text(const std::string& text);
std::vector<MarginalConstraint> load_evidence(const std::string& path);

// Scheme-list file: one comma-separated attribute list per line (used for
// hyperedge sets and decomposition schemes).
std::vector<std::vector<std::string>> parse_scheme_list_text(const std::string& text);
std::vector<std::vector<std::string>> load_scheme_list(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// ---- Serialization -----------------------------------------------------------
//
// All writers are deterministic: map iteration order is fixed, probabilities
// are printed with nine fractional digits, and exact 0 / 1 print as "0" / "1".

std::string format_probability(double p);

std::string write_relation(const Relation& r, bool with_counts);
std::string write_decomposition(const Decomposition& d);
std::string write_network(const BeliefNetwork& bn,
                          const std::vector<ConditionalTable>& tables);
std::string write_conditional_table(const ConditionalTable& table);
std::string write_clique_decomposition(const CliqueDecomposition& d,
                                       const JunctionTree& tree,
                                       const DomainSizes& domains,
                                       const std::string& objective);
std::string write_potential(const CliquePotential& p);

// Query result: per-clique posterior blocks (hex-indexed) and/or per-target
// marginal blocks, tagged with the engine that produced them.
std::string write_query_result(const std::string& engine,
                               const std::vector<CliquePotential>& cliques,
                               const std::vector<FrequencyTable>& targets);

}  // namespace relbn::io
