#include "relbn/learn.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace relbn {

namespace {

constexpr int kMaxSopVars = 6;

std::vector<std::vector<int>> domain_product(const std::vector<AttributeDecl>& attrs) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(attrs.size(), 0);
  if (attrs.empty()) return {std::vector<int>{}};
  while (true) {
    out.push_back(current);
    int i = static_cast<int>(attrs.size()) - 1;
    for (; i >= 0; --i) {
      if (++current[i] < static_cast<int>(attrs[i].domain.size())) break;
      current[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace

// ---- Index encoding ---------------------------------------------------------

int attribute_code_width(const AttributeDecl& attr) {
  int width = 0;
  while ((std::size_t{1} << width) < attr.domain.size()) ++width;
  return width;
}

std::string encode_index(const std::vector<int>& config,
                         const std::vector<AttributeDecl>& attrs) {
  if (config.size() != attrs.size())
    throw Error(ErrorKind::Schema, "configuration width does not match attribute list");
  int total_bits = 0;
  for (const auto& a : attrs) total_bits += attribute_code_width(a);
  if (total_bits > 63)
    throw Error(ErrorKind::SizeLimit, "index encoding supports at most 63 bits");

  unsigned long long value = 0;
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    int width = attribute_code_width(attrs[i]);
    if (config[i] < 0 || config[i] >= static_cast<int>(attrs[i].domain.size()))
      throw Error(ErrorKind::Schema, "domain index out of range for attribute '" +
                                         attrs[i].name + "'");
    value = (value << width) | static_cast<unsigned long long>(config[i]);
  }
  int digits = (total_bits + 3) / 4;
  std::string out(static_cast<std::size_t>(digits), '0');
  static const char* hex = "0123456789abcdef";
  for (int d = digits - 1; d >= 0; --d) {
    out[static_cast<std::size_t>(d)] = hex[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::string encode_index_values(const std::vector<std::string>& values,
                                const std::vector<AttributeDecl>& attrs) {
  if (values.size() != attrs.size())
    throw Error(ErrorKind::Schema, "value list width does not match attribute list");
  std::vector<int> config(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& dom = attrs[i].domain;
    auto it = std::find(dom.begin(), dom.end(), values[i]);
    if (it == dom.end())
      throw Error(ErrorKind::Schema, "value '" + values[i] + "' is not in the domain of '" +
                                         attrs[i].name + "'");
    config[i] = static_cast<int>(it - dom.begin());
  }
  return encode_index(config, attrs);
}

std::vector<int> decode_index(const std::string& hex,
                              const std::vector<AttributeDecl>& attrs) {
  int total_bits = 0;
  for (const auto& a : attrs) total_bits += attribute_code_width(a);
  if (total_bits > 63)
    throw Error(ErrorKind::SizeLimit, "index encoding supports at most 63 bits");
  int digits = (total_bits + 3) / 4;
  if (static_cast<int>(hex.size()) != digits)
    throw Error(ErrorKind::Schema, "index '" + hex + "' must have exactly " +
                                       std::to_string(digits) + " hex digits");
  unsigned long long value = 0;
  for (char c : hex) {
    int nibble;
    if (c >= '0' && c <= '9') nibble = c - '0';
    else if (c >= 'a' && c <= 'f') nibble = c - 'a' + 10;
    else
      throw Error(ErrorKind::Schema, "index '" + hex + "' contains a non-hex digit");
    value = (value << 4) | static_cast<unsigned long long>(nibble);
  }
  if (total_bits < 4 * digits && (value >> total_bits) != 0)
    throw Error(ErrorKind::Schema, "index '" + hex + "' has padding bits set");

  std::vector<int> config(attrs.size());
  for (int i = static_cast<int>(attrs.size()) - 1; i >= 0; --i) {
    int width = attribute_code_width(attrs[static_cast<std::size_t>(i)]);
    unsigned long long code = value & ((1ull << width) - 1);
    value >>= width;
    if (code >= attrs[static_cast<std::size_t>(i)].domain.size())
      throw Error(ErrorKind::Schema, "index '" + hex + "' decodes outside the domain of '" +
                                         attrs[static_cast<std::size_t>(i)].name + "'");
    config[static_cast<std::size_t>(i)] = static_cast<int>(code);
  }
  return config;
}

// ---- Clique potentials --------------------------------------------------------

double CliquePotential::total_mass() const {
  double sum = 0;
  for (const auto& [key, p] : table) {
    (void)key;
    sum += p;
  }
  return sum;
}

std::vector<int> CliquePotential::attr_positions(const std::vector<std::string>& subset) const {
  std::set<int> positions;
  for (const auto& name : subset) {
    bool found = false;
    for (std::size_t i = 0; i < attrs.size(); ++i)
      if (attrs[i].name == name) {
        positions.insert(static_cast<int>(i));
        found = true;
        break;
      }
    if (!found)
      throw Error(ErrorKind::Scope, "attribute '" + name + "' is not covered by clique");
  }
  return {positions.begin(), positions.end()};
}

std::map<std::vector<int>, double> CliquePotential::marginal(
    const std::vector<std::string>& subset) const {
  std::vector<int> positions = attr_positions(subset);
  std::map<std::vector<int>, double> out;
  for (const auto& [config, p] : table) {
    std::vector<int> key;
    key.reserve(positions.size());
    for (int pos : positions) key.push_back(config[pos]);
    out[key] += p;
  }
  return out;
}

CliquePotential frequency_prior(const Relation& r, const std::vector<std::string>& clique) {
  if (r.empty())
    throw Error(ErrorKind::UndefinedFrequency,
                "frequency prior is undefined on an empty relation");
  Relation projected = project(r, clique, ProjectionMode::Multiset);
  CliquePotential p;
  p.attrs = projected.scheme();
  const double total = static_cast<double>(projected.total_count());
  for (const auto& [row, n] : projected.rows())
    p.table[row] = static_cast<double>(n) / total;
  return p;
}

// ---- Smoothed conditionals ---------------------------------------------------

ConditionalTable dirichlet_table(
    const AttributeDecl& child, const std::vector<AttributeDecl>& parents,
    const std::map<std::vector<int>, std::vector<long long>>& counts) {
  ConditionalTable table;
  table.child = child;
  table.parents = parents;
  const std::size_t v = child.domain.size();
  for (const auto& config : domain_product(parents)) {
    std::vector<long long> block(v, 0);
    if (auto it = counts.find(config); it != counts.end()) {
      if (it->second.size() > v)
        throw Error(ErrorKind::Schema, "count block wider than the child domain");
      std::copy(it->second.begin(), it->second.end(), block.begin());
    }
    long long total = 0;
    for (long long c : block) {
      if (c < 0) throw Error(ErrorKind::Schema, "negative count");
      total += c;
    }
    std::vector<double> dist(v);
    for (std::size_t x = 0; x < v; ++x)
      dist[x] = static_cast<double>(block[x] + 1) /
                static_cast<double>(total + static_cast<long long>(v));
    table.rows[config] = std::move(dist);
  }
  return table;
}

ConditionalTable dirichlet_from_relation(const Relation& r,
                                         const std::vector<std::string>& parents,
                                         const std::string& child) {
  int child_col = r.attribute_index(child);
  std::set<int> cols;
  for (const auto& p : parents) {
    int c = r.attribute_index(p);
    if (c == child_col)
      throw Error(ErrorKind::Schema, "child '" + child + "' repeated among its parents");
    cols.insert(c);
  }
  std::vector<int> parent_cols(cols.begin(), cols.end());
  std::vector<AttributeDecl> parent_decls;
  for (int c : parent_cols) parent_decls.push_back(r.scheme()[c]);
  const AttributeDecl& child_decl = r.scheme()[child_col];

  std::map<std::vector<int>, std::vector<long long>> counts;
  for (const auto& [row, n] : r.rows()) {
    std::vector<int> key;
    key.reserve(parent_cols.size());
    for (int c : parent_cols) key.push_back(row[c]);
    auto& block = counts[key];
    block.resize(child_decl.domain.size(), 0);
    block[row[child_col]] += n;
  }
  return dirichlet_table(child_decl, parent_decls, counts);
}

// ---- Boolean minimization -------------------------------------------------------

bool SopFormula::is_constant() const {
  return terms.empty() || (terms.size() == 1 && terms[0].empty());
}

int SopFormula::complexity() const {
  int literals = 0;
  for (const auto& t : terms) literals += static_cast<int>(t.size());
  return literals == 0 ? 0 : literals - 1;
}

std::string SopFormula::to_string() const {
  if (terms.empty()) return "0";
  if (terms.size() == 1 && terms[0].empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " + ";
    for (const auto& lit : terms[i]) {
      if (lit.negated) out += "~";
      out += lit.attr;
    }
  }
  return out;
}

bool SopFormula::evaluate(const std::map<std::string, bool>& assignment) const {
  for (const auto& t : terms) {
    bool product = true;
    for (const auto& lit : t) {
      auto it = assignment.find(lit.attr);
      if (it == assignment.end())
        throw Error(ErrorKind::Schema, "no assignment for variable '" + lit.attr + "'");
      if (it->second == lit.negated) { product = false; break; }
    }
    if (product) return true;
  }
  return false;
}

namespace {

// A cube over n binary variables: `care` marks the specified variables,
// `bits` their values (subset of care).
struct Cube {
  unsigned care = 0;
  unsigned bits = 0;
  int literals() const { return __builtin_popcount(care); }
};

// Exact cover search: choose cubes covering all required minterms with the
// smallest total literal count. Deterministic: cubes are tried in a canonical
// order and only strict improvements replace the incumbent.
struct CoverSearch {
  const std::vector<Cube>& primes;
  const std::vector<std::vector<int>>& coverers;  // minterm -> prime indices
  std::vector<int> minterms;
  std::vector<char> chosen;
  std::vector<int> best;
  int best_cost = -1;

  CoverSearch(const std::vector<Cube>& p, const std::vector<std::vector<int>>& c,
              std::vector<int> m)
      : primes(p), coverers(c), minterms(std::move(m)), chosen(p.size(), 0) {}

  void search(std::vector<char>& covered, int covered_count, int cost,
              std::vector<int>& picked) {
    if (best_cost >= 0 && cost >= best_cost) return;
    if (covered_count == static_cast<int>(minterms.size())) {
      best = picked;
      best_cost = cost;
      return;
    }
    // Branch on the uncovered minterm with the fewest coverers.
    int pick = -1;
    std::size_t fewest = ~std::size_t{0};
    for (std::size_t i = 0; i < minterms.size(); ++i) {
      if (covered[i]) continue;
      if (coverers[i].size() < fewest) {
        fewest = coverers[i].size();
        pick = static_cast<int>(i);
      }
    }
    for (int prime_idx : coverers[static_cast<std::size_t>(pick)]) {
      if (chosen[prime_idx]) continue;
      chosen[prime_idx] = 1;
      picked.push_back(prime_idx);
      std::vector<int> newly;
      for (std::size_t i = 0; i < minterms.size(); ++i) {
        if (covered[i]) continue;
        unsigned m = static_cast<unsigned>(minterms[i]);
        if ((m & primes[prime_idx].care) == primes[prime_idx].bits) {
          covered[i] = 1;
          newly.push_back(static_cast<int>(i));
        }
      }
      search(covered, covered_count + static_cast<int>(newly.size()),
             cost + primes[prime_idx].literals(), picked);
      for (int i : newly) covered[static_cast<std::size_t>(i)] = 0;
      picked.pop_back();
      chosen[prime_idx] = 0;
    }
  }
};

}  // namespace

SopFormula sop_minimize(const TruthTable& table) {
  const int n = static_cast<int>(table.vars.size());
  if (n > kMaxSopVars)
    throw Error(ErrorKind::SizeLimit, "sum-of-products minimization supports at most " +
                                          std::to_string(kMaxSopVars) + " variables");
  const std::size_t size = std::size_t{1} << n;
  if (table.values.size() != size)
    throw Error(ErrorKind::Schema, "truth table must cover every input combination");

  std::vector<int> minterms;
  for (std::size_t m = 0; m < size; ++m)
    if (table.values[m]) minterms.push_back(static_cast<int>(m));

  SopFormula formula;
  if (minterms.empty()) return formula;  // constant false
  if (minterms.size() == size) {         // constant true
    formula.terms.push_back({});
    return formula;
  }

  // All valid cubes by direct enumeration (3^n candidates), keeping the prime
  // ones: no cube obtained by unspecifying one variable is still valid.
  auto cube_valid = [&](unsigned care, unsigned bits) {
    for (std::size_t m = 0; m < size; ++m)
      if ((static_cast<unsigned>(m) & care) == bits && !table.values[m]) return false;
    return true;
  };
  std::vector<Cube> primes;
  const unsigned full = static_cast<unsigned>(size - 1);
  for (unsigned care = 0; care <= full; ++care) {
    for (unsigned bits = care;; bits = (bits - 1) & care) {
      if (cube_valid(care, bits)) {
        bool prime = true;
        for (int v = 0; v < n && prime; ++v) {
          unsigned bit = 1u << v;
          if ((care & bit) && cube_valid(care & ~bit, bits & ~bit)) prime = false;
        }
        if (prime) primes.push_back({care, bits});
      }
      if (bits == 0) break;
    }
  }
  std::sort(primes.begin(), primes.end(), [](const Cube& a, const Cube& b) {
    if (a.literals() != b.literals()) return a.literals() < b.literals();
    if (a.care != b.care) return a.care < b.care;
    return a.bits < b.bits;
  });

  std::vector<std::vector<int>> coverers(minterms.size());
  for (std::size_t i = 0; i < minterms.size(); ++i)
    for (std::size_t p = 0; p < primes.size(); ++p)
      if ((static_cast<unsigned>(minterms[i]) & primes[p].care) == primes[p].bits)
        coverers[i].push_back(static_cast<int>(p));

  CoverSearch cover(primes, coverers, minterms);
  std::vector<char> covered(minterms.size(), 0);
  std::vector<int> picked;
  cover.search(covered, 0, 0, picked);

  // Variable bit v of a minterm index: vars[0] is the most significant bit.
  for (int idx : cover.best) {
    std::vector<SopLiteral> term;
    for (int v = 0; v < n; ++v) {
      unsigned bit = 1u << (n - 1 - v);
      if (primes[static_cast<std::size_t>(idx)].care & bit)
        term.push_back({table.vars[static_cast<std::size_t>(v)],
                        (primes[static_cast<std::size_t>(idx)].bits & bit) == 0});
    }
    formula.terms.push_back(std::move(term));
  }
  // Canonical display order: shorter terms first, then by (variable,
  // negated-before-positive) sequence -- the order minterm values sort in.
  auto term_key = [&table](const std::vector<SopLiteral>& term) {
    std::vector<std::pair<int, int>> key;
    for (const auto& lit : term) {
      int var = static_cast<int>(std::find(table.vars.begin(), table.vars.end(), lit.attr) -
                                 table.vars.begin());
      key.emplace_back(var, lit.negated ? 0 : 1);
    }
    return key;
  };
  std::sort(formula.terms.begin(), formula.terms.end(),
            [&term_key](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return term_key(a) < term_key(b);
            });
  return formula;
}

// ---- Neighbor completion ---------------------------------------------------

KMap kmap_from_table(const ConditionalTable& table) {
  if (table.child.domain.size() != 2)
    throw Error(ErrorKind::UnsupportedDependency,
                "map completion requires a binary child attribute");
  KMap map;
  map.child = table.child;
  map.parents = table.parents;
  for (const auto& [config, row] : table.rows) {
    if (row.has_value())
      map.cells[config] = (*row)[1];  // P(child = second domain value | config)
    else
      map.cells[config] = std::nullopt;
  }
  return map;
}

namespace {

AttributeDecl slice_decl(const AttributeDecl& attr) {
  if (attr.domain.size() <= 2) return attr;
  return {attr.name, {attr.domain.front(), attr.domain.back()}};
}

}  // namespace

KMap binary_slice(const KMap& map) {
  KMap out;
  out.child = map.child;
  for (const auto& p : map.parents) out.parents.push_back(slice_decl(p));
  for (const auto& [config, cell] : map.cells) {
    std::vector<int> key(config.size());
    bool inside = true;
    for (std::size_t i = 0; i < config.size(); ++i) {
      const auto& dom = map.parents[i].domain;
      if (dom.size() <= 2) {
        key[i] = config[i];
      } else if (config[i] == 0) {
        key[i] = 0;
      } else if (config[i] == static_cast<int>(dom.size()) - 1) {
        key[i] = 1;
      } else {
        inside = false;
        break;
      }
    }
    if (inside) out.cells[key] = cell;
  }
  return out;
}

ConditionalTable binary_slice(const ConditionalTable& table) {
  KMap sliced = binary_slice(kmap_from_table(table));
  ConditionalTable out;
  out.child = table.child;
  out.parents = sliced.parents;
  for (const auto& [config, cell] : sliced.cells) {
    if (cell.has_value())
      out.rows[config] = std::vector<double>{1.0 - *cell, *cell};
    else
      out.rows[config] = std::nullopt;
  }
  return out;
}

namespace {

// Neighbors differ in exactly one attribute by one step of its domain order.
std::vector<std::vector<int>> cell_neighbors(const std::vector<int>& key,
                                             const std::vector<AttributeDecl>& parents) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    for (int step : {-1, +1}) {
      int v = key[i] + step;
      if (v < 0 || v >= static_cast<int>(parents[i].domain.size())) continue;
      std::vector<int> nb = key;
      nb[i] = v;
      out.push_back(std::move(nb));
    }
  }
  return out;
}

struct FillCandidate {
  std::size_t seen_neighbors;
  std::vector<int> key;
  double value;
};

// Picks the next phase-1/phase-3 cell: most seen neighbors, then smallest key.
bool pick_candidate(const KMap& map, double tolerance, bool require_unanimous,
                    FillCandidate& out) {
  bool found = false;
  for (const auto& [key, cell] : map.cells) {
    if (cell.has_value()) continue;
    std::vector<double> seen;
    for (const auto& nb : cell_neighbors(key, map.parents)) {
      auto it = map.cells.find(nb);
      if (it != map.cells.end() && it->second.has_value()) seen.push_back(*it->second);
    }
    if (seen.empty()) continue;
    if (require_unanimous) {
      double lo = *std::min_element(seen.begin(), seen.end());
      double hi = *std::max_element(seen.begin(), seen.end());
      if (hi - lo > tolerance) continue;
    }
    double mean = 0;
    for (double v : seen) mean += v;
    mean /= static_cast<double>(seen.size());
    FillCandidate candidate{seen.size(), key, mean};
    if (!found || candidate.seen_neighbors > out.seen_neighbors ||
        (candidate.seen_neighbors == out.seen_neighbors && candidate.key < out.key)) {
      out = std::move(candidate);
      found = true;
    }
  }
  return found;
}

bool map_is_deterministic(const KMap& map, double tolerance) {
  for (const auto& [key, cell] : map.cells) {
    (void)key;
    if (!cell.has_value()) continue;
    if (std::abs(*cell) > tolerance && std::abs(*cell - 1.0) > tolerance) return false;
  }
  return true;
}

bool parents_all_binary(const KMap& map) {
  for (const auto& p : map.parents)
    if (p.domain.size() != 2) return false;
  return true;
}

TruthTable to_truth_table(const KMap& map) {
  TruthTable table;
  table.vars.reserve(map.parents.size());
  for (const auto& p : map.parents) table.vars.push_back(p.name);
  table.values.assign(std::size_t{1} << map.parents.size(), false);
  for (const auto& [key, cell] : map.cells) {
    std::size_t idx = 0;
    for (int b : key) idx = (idx << 1) | static_cast<std::size_t>(b);
    table.values[idx] = cell.has_value() && *cell >= 0.5;
  }
  return table;
}

}  // namespace

std::vector<OrAssignmentScore> enumerate_or_assignments(const KMap& map, std::size_t cap) {
  if (!parents_all_binary(map))
    throw Error(ErrorKind::Configuration,
                "assignment scoring is defined over binary attributes only");
  if (!map_is_deterministic(map, 1e-9))
    throw Error(ErrorKind::Configuration,
                "assignment scoring requires a deterministic 0/1 map");
  std::vector<std::vector<int>> unseen;
  for (const auto& [key, cell] : map.cells)
    if (!cell.has_value()) unseen.push_back(key);
  if (unseen.size() >= 8 * sizeof(std::size_t) ||
      (std::size_t{1} << unseen.size()) > cap)
    throw Error(ErrorKind::Capacity, "too many unseen cells to enumerate");

  std::vector<OrAssignmentScore> scores;
  const std::size_t count = std::size_t{1} << unseen.size();
  for (std::size_t a = 0; a < count; ++a) {
    KMap filled = map;
    OrAssignmentScore score;
    for (std::size_t i = 0; i < unseen.size(); ++i) {
      int bit = (a >> (unseen.size() - 1 - i)) & 1;
      score.assignment.push_back(bit);
      filled.cells[unseen[i]] = static_cast<double>(bit);
    }
    score.formula = sop_minimize(to_truth_table(filled));
    score.complexity = score.formula.complexity();
    scores.push_back(std::move(score));
  }
  return scores;
}

NnorResult nnor_complete(const KMap& map, const NnorOptions& options) {
  NnorResult result;
  result.completed = map;
  bool any_seen = false;
  for (const auto& [key, cell] : map.cells) {
    if (cell.has_value()) {
      any_seen = true;
      result.origins[key] = CellOrigin::Data;
    }
  }
  if (!any_seen)
    throw Error(ErrorKind::NoData, "map has no observed cell to extend");

  // Phase 1: unanimous nearest-neighbor fill, one cell at a time.
  FillCandidate candidate;
  while (pick_candidate(result.completed, options.tolerance, true, candidate)) {
    result.completed.cells[candidate.key] = candidate.value;
    result.origins[candidate.key] = CellOrigin::NnFill;
  }

  bool incomplete = false;
  for (const auto& [key, cell] : result.completed.cells) {
    (void)key;
    if (!cell.has_value()) incomplete = true;
  }

  const bool deterministic = map_is_deterministic(result.completed, options.tolerance);
  const bool binary = parents_all_binary(result.completed);

  if (incomplete && deterministic && binary) {
    // Phase 2: joint assignment minimizing formula complexity; ties prefer
    // fewer 1-cells, then the lexicographically smallest assignment.
    std::vector<OrAssignmentScore> scores =
        enumerate_or_assignments(result.completed, options.or_cap);
    const OrAssignmentScore* chosen = nullptr;
    for (const auto& s : scores) {
      if (!chosen) { chosen = &s; continue; }
      int ones = static_cast<int>(std::count(s.assignment.begin(), s.assignment.end(), 1));
      int chosen_ones =
          static_cast<int>(std::count(chosen->assignment.begin(), chosen->assignment.end(), 1));
      if (s.complexity < chosen->complexity ||
          (s.complexity == chosen->complexity &&
           (ones < chosen_ones ||
            (ones == chosen_ones && s.assignment < chosen->assignment))))
        chosen = &s;
    }
    std::vector<std::vector<int>> unseen;
    for (const auto& [key, cell] : result.completed.cells)
      if (!cell.has_value()) unseen.push_back(key);
    for (std::size_t i = 0; i < unseen.size(); ++i) {
      result.completed.cells[unseen[i]] = static_cast<double>(chosen->assignment[i]);
      result.origins[unseen[i]] = CellOrigin::OrFill;
    }
  } else if (incomplete) {
    // Phase 3: mean of seen/filled neighbors, same ordering as phase 1.
    while (pick_candidate(result.completed, options.tolerance, false, candidate)) {
      result.completed.cells[candidate.key] = candidate.value;
      result.origins[candidate.key] = CellOrigin::MeanFill;
    }
  }

  if (binary && map_is_deterministic(result.completed, options.tolerance))
    result.formula = sop_minimize(to_truth_table(result.completed));
  return result;
}

ConditionalTable nnor_table(const NnorResult& result) {
  ConditionalTable out;
  out.child = result.completed.child;
  out.parents = result.completed.parents;
  for (const auto& [config, cell] : result.completed.cells) {
    if (!cell.has_value())
      throw Error(ErrorKind::NoData, "completed map still has unseen cells");
    out.rows[config] = std::vector<double>{1.0 - *cell, *cell};
  }
  return out;
}

}  // namespace relbn
