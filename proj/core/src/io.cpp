#include "relbn/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace relbn::io {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  std::size_t pos = s.find('#');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

// Fields are separated by commas and/or whitespace.
std::vector<std::string> split_fields(const std::string& s) {
  std::string normalized = s;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::vector<std::string> out;
  std::istringstream in(normalized);
  std::string field;
  while (in >> field) out.push_back(field);
  return out;
}

std::string join(const std::vector<std::string>& fields, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += sep;
    out += fields[i];
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw Error(ErrorKind::Io, "line " + std::to_string(line) + ": " + message);
}

// Non-blank content lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string line = trim(strip_comment(raw));
    if (!line.empty()) out.emplace_back(number, line);
  }
  return out;
}

long long parse_count(const std::string& field, std::size_t line) {
  char* end = nullptr;
  long long value = std::strtoll(field.c_str(), &end, 10);
  if (end == field.c_str() || *end != '\0')
    fail(line, "'" + field + "' is not an integer count");
  if (value <= 0) fail(line, "row counts must be positive");
  return value;
}

double parse_probability(const std::string& field, std::size_t line) {
  char* end = nullptr;
  double value = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    fail(line, "'" + field + "' is not a number");
  if (value < 0) fail(line, "probabilities must be nonnegative");
  return value;
}

template <typename F>
auto with_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

}  // namespace

// ---- Parsing ----------------------------------------------------------------

Relation parse_relation_text(const std::string& text,
                             const std::optional<Scheme>& domains) {
  auto lines = content_lines(text);
  if (lines.empty()) throw Error(ErrorKind::Io, "relation file has no header line");

  std::vector<std::string> header = split_fields(lines[0].second);
  bool with_counts = !header.empty() && header.back() == "__count";
  if (with_counts) header.pop_back();
  if (header.empty()) fail(lines[0].first, "relation header names no attributes");
  for (const auto& name : header)
    if (name == "__count")
      fail(lines[0].first, "__count may only be the last header column");

  struct Row {
    std::size_t line;
    std::vector<std::string> values;
    long long count;
  };
  std::vector<Row> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields = split_fields(lines[i].second);
    long long count = 1;
    if (with_counts) {
      if (fields.size() != header.size() + 1)
        fail(lines[i].first, "expected " + std::to_string(header.size()) +
                                 " values plus a count");
      count = parse_count(fields.back(), lines[i].first);
      fields.pop_back();
    } else if (fields.size() != header.size()) {
      fail(lines[i].first, "expected " + std::to_string(header.size()) + " values, got " +
                               std::to_string(fields.size()));
    }
    rows.push_back({lines[i].first, std::move(fields), count});
  }

  Scheme scheme;
  if (domains.has_value()) {
    for (const auto& name : header) {
      auto it = std::find_if(domains->begin(), domains->end(),
                             [&name](const AttributeDecl& d) { return d.name == name; });
      if (it == domains->end())
        fail(lines[0].first, "attribute '" + name + "' has no domain declaration");
      scheme.push_back(*it);
    }
  } else {
    // Domains collect values in order of first appearance.
    scheme.reserve(header.size());
    for (const auto& name : header) scheme.push_back({name, {}});
    for (const auto& row : rows)
      for (std::size_t c = 0; c < header.size(); ++c) {
        auto& domain = scheme[c].domain;
        if (std::find(domain.begin(), domain.end(), row.values[c]) == domain.end())
          domain.push_back(row.values[c]);
      }
    for (auto& decl : scheme)
      if (decl.domain.empty()) decl.domain.push_back("0");  // headerless column
  }

  std::optional<Relation> r;
  try {
    r.emplace(scheme);
  } catch (const Error& e) {
    fail(lines[0].first, e.what());
  }
  for (const auto& row : rows) {
    try {
      r->add_row(row.values, row.count);
    } catch (const Error& e) {
      fail(row.line, e.what());
    }
  }
  return *r;
}

Relation load_relation(const std::string& path,
                       const std::optional<std::string>& domains_path) {
  std::optional<Scheme> domains;
  if (domains_path.has_value()) domains = load_domains(*domains_path);
  return with_path(path,
                   [&] { return parse_relation_text(read_file(path), domains); });
}

Scheme parse_domains_text(const std::string& text) {
  Scheme out;
  for (const auto& [number, line] : content_lines(text)) {
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) fail(number, "expected 'attribute: v1,v2,...'");
    std::string name = trim(line.substr(0, colon));
    if (name.empty() || name.find_first_of(" \t,") != std::string::npos)
      fail(number, "invalid attribute name '" + name + "'");
    for (const auto& decl : out)
      if (decl.name == name) fail(number, "duplicate domain for '" + name + "'");
    std::vector<std::string> values = split_fields(line.substr(colon + 1));
    if (values.empty()) fail(number, "attribute '" + name + "' declares no values");
    for (std::size_t i = 0; i < values.size(); ++i)
      for (std::size_t j = i + 1; j < values.size(); ++j)
        if (values[i] == values[j])
          fail(number, "duplicate domain value '" + values[i] + "'");
    out.push_back({name, std::move(values)});
  }
  return out;
}

Scheme load_domains(const std::string& path) {
  return with_path(path, [&] { return parse_domains_text(read_file(path)); });
}

std::vector<Dependency> parse_dependencies_text(const std::string& text) {
  std::vector<Dependency> out;
  for (const auto& [number, line] : content_lines(text)) {
    DependencyKind kind;
    std::size_t arrow_pos;
    std::size_t arrow_len;
    if ((arrow_pos = line.find("|->")) != std::string::npos) {
      kind = DependencyKind::Probabilistic;
      arrow_len = 3;
    } else if ((arrow_pos = line.find("->>")) != std::string::npos) {
      kind = DependencyKind::Multivalued;
      arrow_len = 3;
    } else if ((arrow_pos = line.find("->")) != std::string::npos) {
      kind = DependencyKind::Functional;
      arrow_len = 2;
    } else {
      fail(number, "expected one of '->', '->>' or '|->'");
    }
    Dependency dep;
    dep.kind = kind;
    dep.lhs = split_fields(line.substr(0, arrow_pos));
    dep.rhs = split_fields(line.substr(arrow_pos + arrow_len));
    if (dep.rhs.empty()) fail(number, "dependency names no right-hand attributes");
    out.push_back(std::move(dep));
  }
  return out;
}

std::vector<Dependency> load_dependencies(const std::string& path) {
  return with_path(path, [&] { return parse_dependencies_text(read_file(path)); });
}

std::vector<MarginalConstraint> parse_evidence_text(const std::string& text) {
  std::vector<MarginalConstraint> out;
  auto lines = content_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& [number, line] = lines[i];
    if (line.rfind("marginal", 0) == 0 &&
        (line.size() == 8 || line[8] == ' ' || line[8] == '\t')) {
      std::string rest = trim(line.substr(8));
      if (rest.empty() || rest.back() != '{')
        fail(number, "expected 'marginal X,Y {'");
      MarginalConstraint constraint;
      constraint.scheme = split_fields(rest.substr(0, rest.size() - 1));
      if (constraint.scheme.empty()) fail(number, "marginal block names no attributes");
      bool closed = false;
      while (++i < lines.size()) {
        const auto& [entry_number, entry] = lines[i];
        if (entry == "}") {
          closed = true;
          break;
        }
        std::size_t colon = entry.rfind(':');
        if (colon == std::string::npos)
          fail(entry_number, "expected 'values : probability'");
        std::vector<std::string> key = split_fields(entry.substr(0, colon));
        if (key.size() != constraint.scheme.size())
          fail(entry_number, "expected " + std::to_string(constraint.scheme.size()) +
                                 " values before ':'");
        std::vector<std::string> prob = split_fields(entry.substr(colon + 1));
        if (prob.size() != 1) fail(entry_number, "expected one probability after ':'");
        if (constraint.table.count(key))
          fail(entry_number, "duplicate combination '" + join(key) + "'");
        constraint.table[key] = parse_probability(prob[0], entry_number);
      }
      if (!closed) fail(number, "marginal block is never closed with '}'");
      out.push_back(std::move(constraint));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(number, "expected 'attr=value' or a 'marginal' block");
    std::string attr = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (attr.empty() || value.empty()) fail(number, "expected 'attr=value'");
    MarginalConstraint constraint;
    constraint.scheme = {attr};
    constraint.table[{value}] = 1.0;
    out.push_back(std::move(constraint));
  }
  return out;
}

std::vector<MarginalConstraint> load_evidence(const std::string& path) {
  return with_path(path, [&] { return parse_evidence_text(read_file(path)); });
}

std::vector<std::vector<std::string>> parse_scheme_list_text(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  for (const auto& [number, line] : content_lines(text)) {
    std::vector<std::string> attrs = split_fields(line);
    std::set<std::string> seen;
    for (const auto& name : attrs)
      if (!seen.insert(name).second)
        fail(number, "duplicate attribute '" + name + "' in scheme");
    out.push_back(std::move(attrs));
  }
  return out;
}

std::vector<std::vector<std::string>> load_scheme_list(const std::string& path) {
  return with_path(path, [&] { return parse_scheme_list_text(read_file(path)); });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
}

// ---- Serialization ------------------------------------------------------------

std::string format_probability(double p) {
  if (p == 0.0) return "0";
  if (p == 1.0) return "1";
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.9f", p);
  return buffer;
}

std::string write_relation(const Relation& r, bool with_counts) {
  std::string out = join(r.attribute_names());
  if (with_counts) out += ",__count";
  out += "\n";
  for (const auto& [row, count] : r.rows()) {
    out += join(r.row_values(row));
    if (with_counts) out += "," + std::to_string(count);
    out += "\n";
  }
  return out;
}

std::string write_decomposition(const Decomposition& d) {
  std::string out;
  for (const auto& scheme : d.schemes) {
    out += join(scheme);
    if (d.key_scheme.has_value() && scheme == *d.key_scheme) out += "  # key";
    out += "\n";
  }
  return out;
}

std::string write_conditional_table(const ConditionalTable& table) {
  std::vector<std::string> parent_names;
  for (const auto& p : table.parents) parent_names.push_back(p.name);
  std::string out = "conditional " + table.child.name;
  if (!parent_names.empty()) out += " | " + join(parent_names);
  out += "\n";
  out += "child-domain: " + join(table.child.domain) + "\n";
  for (const auto& [config, row] : table.rows) {
    std::vector<std::string> key;
    key.reserve(config.size());
    for (std::size_t i = 0; i < config.size(); ++i)
      key.push_back(table.parents[i].domain[static_cast<std::size_t>(config[i])]);
    out += key.empty() ? "()" : join(key);
    out += " : ";
    if (!row.has_value()) {
      out += "?";
    } else {
      for (std::size_t i = 0; i < row->size(); ++i) {
        if (i) out += " ";
        out += format_probability((*row)[i]);
      }
    }
    out += "\n";
  }
  return out;
}

std::string write_network(const BeliefNetwork& bn,
                          const std::vector<ConditionalTable>& tables) {
  std::vector<std::string> names;
  for (const auto& n : bn.nodes) names.push_back(n.name);
  std::string out = "nodes: " + join(names) + "\n";
  out += "edges:\n";
  for (const auto& [parent, child] : bn.edges)
    out += parent + " -> " + child + "\n";
  for (const auto& table : tables) {
    out += "\n";
    out += write_conditional_table(table);
  }
  return out;
}

std::string write_clique_decomposition(const CliqueDecomposition& d,
                                       const JunctionTree& tree,
                                       const DomainSizes& domains,
                                       const std::string& objective) {
  std::string out = "objective: " + objective + "\n";
  out += "order: " + join(d.order) + "\n";
  out += "fill:";
  if (d.triangulation.fill_edges.empty()) {
    out += " none";
  } else {
    for (const auto& [a, b] : d.triangulation.fill_edges) out += " " + a + "-" + b;
  }
  out += "\n";
  out += "total-states: " + std::to_string(d.total_states) + "\n";
  out += "cliques:\n";
  for (const auto& clique : d.triangulation.cliques) {
    long long states = 1;
    for (const auto& name : clique) {
      auto it = domains.find(name);
      states *= it == domains.end() ? 1 : it->second;
    }
    out += join(clique) + "  # states=" + std::to_string(states) + "\n";
  }
  out += "tree:\n";
  for (const auto& edge : tree.edges) {
    out += join(tree.cliques[static_cast<std::size_t>(edge.a)]) + " -- " +
           join(tree.cliques[static_cast<std::size_t>(edge.b)]) + " : ";
    out += edge.separator.empty() ? "()" : join(edge.separator);
    out += "\n";
  }
  return out;
}

std::string write_potential(const CliquePotential& p) {
  std::vector<std::string> names;
  for (const auto& a : p.attrs) names.push_back(a.name);
  std::string out = "potential " + join(names) + "\n";
  for (const auto& [config, prob] : p.table)
    out += encode_index(config, p.attrs) + " : " + format_probability(prob) + "\n";
  return out;
}

std::string write_query_result(const std::string& engine,
                               const std::vector<CliquePotential>& cliques,
                               const std::vector<FrequencyTable>& targets) {
  std::string out = "engine: " + engine + "\n";
  for (const auto& p : cliques) {
    out += "\n";
    out += write_potential(p);
  }
  for (const auto& table : targets) {
    out += "\n";
    out += "marginal " + join(table.attrs) + "\n";
    for (const auto& [key, prob] : table.entries)
      out += (key.empty() ? "()" : join(key)) + " : " + format_probability(prob) + "\n";
  }
  return out;
}

}  // namespace relbn::io
