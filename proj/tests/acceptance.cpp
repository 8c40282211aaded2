// Acceptance suite: one verdict line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and uses only the public API
// plus the bundled sample data.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "relbn/dependency.hpp"
#include "relbn/infer.hpp"
#include "relbn/io.hpp"

using namespace relbn;
using namespace relbn::io;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok,
            const std::string& detail = "") {
  std::printf("criterion %d: %s: %s%s%s\n", number, what.c_str(),
              ok ? "PASS" : "FAIL", detail.empty() ? "" : " — ",
              detail.c_str());
  if (!ok) ++failures;
}

std::string data_path(const std::string& name) {
  return std::string(RELBN_DATA_DIR) + "/" + name;
}

Relation disease_relation() {
  return load_relation(data_path("sarcophagal.rel"), data_path("sarcophagal.dom"));
}

std::vector<Dependency> disease_deps() {
  return parse_dependencies_text(read_file(data_path("sarcophagal.deps")));
}

Relation cancer_relation() {
  return load_relation(data_path("cancer.rel"), data_path("cancer.dom"));
}

std::vector<Dependency> cancer_deps() {
  return parse_dependencies_text(read_file(data_path("cancer.deps")));
}

std::vector<std::string> scheme_names(const Relation& r) {
  std::vector<std::string> names;
  for (const auto& a : r.scheme()) names.push_back(a.name);
  return names;
}

std::vector<std::vector<std::string>> families_of(const std::vector<Dependency>& deps) {
  std::vector<std::vector<std::string>> out;
  for (const auto& d : deps) {
    std::vector<std::string> fam = d.lhs;
    fam.insert(fam.end(), d.rhs.begin(), d.rhs.end());
    out.push_back(fam);
  }
  return out;
}

std::set<std::set<std::string>> as_sets(const std::vector<std::vector<std::string>>& v) {
  std::set<std::set<std::string>> out;
  for (const auto& s : v) out.insert(std::set<std::string>(s.begin(), s.end()));
  return out;
}

std::map<std::string, double> hex_table(const CliquePotential& p) {
  std::map<std::string, double> out;
  for (const auto& [config, prob] : p.table)
    out[encode_index(config, p.attrs)] = prob;
  return out;
}

bool hex_close(const std::map<std::string, double>& got,
               const std::map<std::string, double>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (const auto& [k, v] : want) {
    auto it = got.find(k);
    if (it == got.end() || std::fabs(it->second - v) > tol) return false;
  }
  return true;
}

// Exact multiset projection counts keyed by symbolic values.
std::map<std::vector<std::string>, long long> counts_of(
    const Relation& r, const std::vector<std::string>& attrs) {
  Relation p = project(r, attrs, ProjectionMode::Multiset);
  std::map<std::vector<std::string>, long long> out;
  for (const auto& [codes, count] : p.rows()) {
    std::vector<std::string> key;
    for (std::size_t i = 0; i < codes.size(); ++i)
      key.push_back(p.scheme()[i].domain[static_cast<std::size_t>(codes[i])]);
    out[key] = count;
  }
  return out;
}

int clique_index(const CliqueTreeModel& model, const std::set<std::string>& members) {
  for (std::size_t i = 0; i < model.tree.cliques.size(); ++i) {
    const auto& c = model.tree.cliques[i];
    if (std::set<std::string>(c.begin(), c.end()) == members)
      return static_cast<int>(i);
  }
  return -1;
}

// Deterministic value hash used to build dependency-consistent instances.
int dependent_value(std::uint64_t salt, const std::vector<int>& lhs_codes,
                    int domain_size) {
  std::uint64_t h = salt;
  for (int c : lhs_codes) {
    h += static_cast<std::uint64_t>(c) * 1000003u;
    h = h * 6364136223846793005ULL + static_cast<std::uint64_t>(c + 1);
  }
  return static_cast<int>(h % static_cast<std::uint64_t>(domain_size));
}

NeighborhoodGraph graph_from_mask(const std::vector<std::string>& names,
                                  unsigned mask) {
  NeighborhoodGraph g(names);
  unsigned bit = 0;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j, ++bit)
      if (mask & (1u << bit)) g.add_edge(names[i], names[j]);
  return g;
}

long long exhaustive_best(const NeighborhoodGraph& g, const DomainSizes& domains) {
  std::vector<std::string> order = g.nodes();
  std::sort(order.begin(), order.end());
  long long best = -1;
  do {
    long long cost = total_states(triangulate(g, order).cliques, domains);
    if (best < 0 || cost < best) best = cost;
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// ---- criteria -------------------------------------------------------------

void criterion_1() {
  bool ok = false;
  std::string detail;
  try {
    Relation r = disease_relation();
    std::vector<Dependency> deps = disease_deps();
    Decomposition d = decompose_4nf(scheme_names(r), deps);

    std::set<std::set<std::string>> want{
        {"u1", "u2", "u3", "u7"}, {"u3", "u4", "u5", "u8"},
        {"u6", "u7", "u8", "u9"}, {"u3", "u7", "u8", "u10"},
        {"u9", "u10", "u11"},     {"u1", "u2", "u3", "u4", "u5", "u6"}};
    bool schemes_ok = d.schemes.size() == 6 && as_sets(d.schemes) == want;
    bool key_ok = d.key_scheme.has_value() &&
                  *d.key_scheme == std::vector<std::string>{"u1", "u2", "u3",
                                                            "u4", "u5", "u6"};

    bool lj = verify_lossless_join(r, d.schemes);
    bool pres = preserves_fds(deps, d.schemes);
    ok = schemes_ok && key_ok && lj && pres;
    if (!ok)
      detail = std::string(schemes_ok ? "" : "schemes differ; ") +
               (key_ok ? "" : "key differs; ") + (lj ? "" : "join lossy; ") +
               (pres ? "" : "dependencies lost");
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(1, "fourth-normal-form split of the symptom scheme into six relations, lossless and dependency-preserving on the sample", ok, detail);
}

void criterion_2() {
  bool ok = false;
  std::string detail;
  try {
    Relation r = cancer_relation();
    bool total_ok = r.total_count() == 100000;

    std::map<std::vector<std::string>, long long> ab{
        {{"0", "0"}, 64000}, {{"0", "1"}, 16000}, {{"1", "0"}, 4000}, {{"1", "1"}, 16000}};
    // The pairwise A/C table: its low corner must be 76000 — the 7600
    // sometimes quoted for that cell cannot be right because the column
    // sums of the full five-way table force the extra digit.
    std::map<std::vector<std::string>, long long> ac{
        {{"0", "0"}, 76000}, {{"0", "1"}, 4000}, {{"1", "0"}, 16000}, {{"1", "1"}, 4000}};
    std::map<std::vector<std::string>, long long> ce{
        {{"0", "0"}, 36800}, {{"0", "1"}, 55200}, {{"1", "0"}, 1600}, {{"1", "1"}, 6400}};
    std::map<std::vector<std::string>, long long> bcd{
        {{"0", "0", "0"}, 60800}, {{"0", "0", "1"}, 3200}, {{"0", "1", "0"}, 800},
        {{"0", "1", "1"}, 3200},  {{"1", "0", "0"}, 5600}, {{"1", "0", "1"}, 22400},
        {{"1", "1", "0"}, 800},   {{"1", "1", "1"}, 3200}};

    bool ab_ok = counts_of(r, {"A", "B"}) == ab;
    bool ac_ok = counts_of(r, {"A", "C"}) == ac;
    bool ce_ok = counts_of(r, {"C", "E"}) == ce;
    bool bcd_ok = counts_of(r, {"B", "C", "D"}) == bcd;
    ok = total_ok && ab_ok && ac_ok && ce_ok && bcd_ok;
    if (!ok) detail = "an exact pairwise/triple count differs";
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(2, "exact integer projections of the tumor sample, including the A,C corner count 76000 that the marginal sums force in place of 7600", ok, detail);
}

void criterion_3() {
  bool ok = false;
  std::string detail;
  try {
    Relation r = cancer_relation();
    // The exact product identity holds where the generating structure says
    // it must, and fails for the A-rooted pairs on these counts even though
    // the sample narrative treats them as independent splits; the computed
    // verdicts are asserted as-is.
    bool bc_d = pd_holds(r, {"B", "C"}, {"D"});
    bool c_e = pd_holds(r, {"C"}, {"E"});
    bool a_b = pd_holds(r, {"A"}, {"B"});
    bool a_c = pd_holds(r, {"A"}, {"C"});
    ok = bc_d && c_e && !a_b && !a_c;
    if (!ok)
      detail = "verdicts: B,C->D=" + std::to_string(bc_d) +
               " C->E=" + std::to_string(c_e) + " A->B=" + std::to_string(a_b) +
               " A->C=" + std::to_string(a_c);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(3, "probabilistic-dependency verdicts on the tumor counts: B,C->D and C->E hold, A->B and A->C fail the literal identity", ok, detail);
}

void criterion_4() {
  bool ok = false;
  std::string detail;
  try {
    Relation r = disease_relation();
    NeighborhoodGraph g = neighborhood_graph(scheme_names(r), families_of(disease_deps()));
    DomainSizes sizes;
    for (const auto& a : r.scheme()) sizes[a.name] = static_cast<int>(a.domain.size());

    bool chordal = is_chordal(g);
    CliqueDecomposition d = greedy_decompose(g, sizes);
    bool zero_fill = d.triangulation.fill_edges.empty();
    std::set<std::set<std::string>> want{
        {"u9", "u10", "u11"},      {"u7", "u8", "u9", "u10"},
        {"u6", "u7", "u8", "u9"},  {"u3", "u7", "u8", "u10"},
        {"u3", "u4", "u5", "u8"},  {"u1", "u2", "u3", "u7"}};
    bool cliques_ok = as_sets(d.triangulation.cliques) == want;
    bool states_ok = d.total_states == 124;
    bool whole_ok = total_states({scheme_names(r)}, sizes) == 4608;
    bool acyclic = graham_is_acyclic(d.triangulation.cliques);
    ok = chordal && zero_fill && cliques_ok && states_ok && whole_ok && acyclic;
    if (!ok)
      detail = "states=" + std::to_string(d.total_states) +
               " fill=" + std::to_string(d.triangulation.fill_edges.size());
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(4, "symptom neighborhood graph is chordal with the six expected cliques, 124 clique states against 4608 undecomposed, and an acyclic clique hypergraph", ok, detail);
}

void criterion_5() {
  bool ok = false;
  std::string detail;
  try {
    Relation r = disease_relation();
    auto cliques = parse_scheme_list_text(read_file(data_path("mc_cliques.schemes")));
    const double e = 0.125;
    std::vector<std::map<std::string, double>> want{
        {{"0", 0.5}, {"3", e}, {"5", e}, {"6", 0.25}},
        {{"0", e}, {"4", e}, {"7", e}, {"8", e}, {"a", e}, {"c", e}, {"d", e}, {"f", e}},
        {{"e", 0.25}, {"0", e}, {"3", e}, {"5", e}, {"7", e}, {"a", e}, {"c", e}},
        {{"14", 0.25}, {"00", e}, {"03", e}, {"07", e}, {"0f", e}, {"12", e}, {"16", e}},
        {{"0d", 0.25}, {"04", e}, {"1d", e}, {"20", e}, {"22", e}, {"25", e}, {"29", e}},
        {{"1d", 0.25}, {"00", e}, {"05", e}, {"0c", e}, {"11", e}, {"13", e}, {"18", e}}};
    ok = cliques.size() == want.size();
    for (std::size_t i = 0; ok && i < cliques.size(); ++i)
      ok = hex_close(hex_table(frequency_prior(r, cliques[i])), want[i], 1e-12);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(5, "relative-frequency priors of all six cliques match their expected hex-indexed tables", ok, detail);
}

void criterion_6() {
  bool ok = false;
  std::string detail;
  try {
    Relation r = disease_relation();
    CliqueTreeModel model = build_model(r, disease_deps());
    auto evidence = parse_evidence_text(read_file(data_path("sarcophagal-recall.ev")));
    CliqueTreeModel after = propagate(model, evidence);

    struct Expect {
      std::set<std::string> members;
      std::map<std::string, double> table;
    };
    std::vector<Expect> point{
        {{"u9", "u10", "u11"}, {{"5", 1.0}}},
        {{"u7", "u8", "u9", "u10"}, {{"a", 1.0}}},
        {{"u6", "u7", "u8", "u9"}, {{"5", 1.0}}},
        {{"u3", "u7", "u8", "u10"}, {{"14", 1.0}}},
        {{"u1", "u2", "u3", "u7"}, {{"1d", 1.0}}},
        {{"u3", "u4", "u5", "u8"}, {{"20", 0.5}, {"22", 0.5}}}};
    ok = true;
    for (const auto& ex : point) {
      int i = clique_index(after, ex.members);
      if (i < 0 || !hex_close(hex_table(after.potentials[static_cast<std::size_t>(i)]),
                              ex.table, 1e-9)) {
        ok = false;
        detail = "propagated potential differs";
      }
    }

    // The exhaustive reference decides every clique, u5 included: exactly
    // one sample row matches the evidence and there u5 is "unknown".
    std::map<std::string, std::vector<std::string>> oracle_points{
        {"u9,u10,u11", {"1", "-1", "1"}},
        {"u7,u8,u9,u10", {"1", "-1", "1", "-1"}},
        {"u6,u7,u8,u9", {"-1", "1", "-1", "1"}},
        {"u3,u7,u8,u10", {"1", "1", "-1", "-1"}},
        {"u1,u2,u3,u7", {"1", "1", "1", "1"}},
        {"u3,u4,u5,u8", {"1", "-1", "0", "-1"}}};
    for (const auto& [names, values] : oracle_points) {
      std::vector<std::string> attrs;
      std::string token;
      for (char c : names + ",") {
        if (c == ',') { attrs.push_back(token); token.clear(); }
        else token += c;
      }
      auto res = oracle_query(r, evidence, {attrs});
      if (res[0].entries.size() != 1 ||
          std::fabs(res[0].entries.at(values) - 1.0) > 1e-9) {
        ok = false;
        detail = "oracle posterior differs on " + names;
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(6, "recall of the first sample row: propagation pins five cliques and splits the treatment clique evenly; the exhaustive reference also pins the unknown-level attribute", ok, detail);
}

void criterion_7() {
  bool ok = false;
  std::string detail;
  try {
    Relation r = disease_relation();
    auto tables = extract_ccs({r}, disease_deps());
    const ConditionalTable* u7 = nullptr;
    const ConditionalTable* u8 = nullptr;
    for (const auto& t : tables) {
      if (t.child.name == "u7") u7 = &t;
      if (t.child.name == "u8") u8 = &t;
    }
    KMap m7 = binary_slice(kmap_from_table(*u7));

    auto scores = enumerate_or_assignments(m7);
    bool scores_ok = scores.size() == 4 && scores[0].complexity == 8 &&
                     scores[1].complexity == 5 && scores[2].complexity == 11 &&
                     scores[3].complexity == 8;

    NnorResult r7 = nnor_complete(m7);
    bool fills_ok = r7.origins.at({0, 1, 0}) == CellOrigin::NnFill &&
                    std::fabs(*r7.completed.cells.at({0, 1, 0}) - 0.0) < 1e-12 &&
                    r7.origins.at({1, 0, 1}) == CellOrigin::NnFill &&
                    std::fabs(*r7.completed.cells.at({1, 0, 1}) - 1.0) < 1e-12;
    bool formula_ok = r7.formula.has_value() &&
                      r7.formula->to_string() == "u1~u2 + u1u3 + ~u2u3" &&
                      r7.formula->complexity() == 5;

    NnorResult r8 = nnor_complete(binary_slice(kmap_from_table(*u8)));
    bool or_ok = r8.origins.at({0, 1, 0}) == CellOrigin::OrFill &&
                 std::fabs(*r8.completed.cells.at({0, 1, 0}) - 1.0) < 1e-12 &&
                 r8.formula.has_value() && r8.formula->to_string() == "u4 + u3u5" &&
                 r8.formula->complexity() == 2;

    // The losing choice for that cell costs complexity 5. Reproduce the
    // map as it stands after the neighbor-fill phase (both unanimous cells
    // already filled), then enumerate the one remaining choice.
    KMap m8 = binary_slice(kmap_from_table(*u8));
    m8.cells[{0, 0, 0}] = 0.0;
    m8.cells[{1, 1, 1}] = 1.0;
    auto pair = enumerate_or_assignments(m8);
    bool margin_ok = pair.size() == 2 && pair[0].complexity == 5 &&
                     pair[1].complexity == 2;

    ok = scores_ok && fills_ok && formula_ok && or_ok && margin_ok;
    if (!ok)
      detail = std::string(scores_ok ? "" : "scores; ") + (fills_ok ? "" : "fills; ") +
               (formula_ok ? "" : "formula; ") + (or_ok ? "" : "or-choice; ") +
               (margin_ok ? "" : "margin");
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(7, "neighbor completion fills the two open cells of the first disease map, assignment scoring yields {8,5,11,8} with minimum u1~u2 + u1u3 + ~u2u3, and the second map resolves to u4 + u3u5 at complexity 2 over 5", ok, detail);
}

void criterion_8() {
  bool ok = false;
  std::string detail;
  try {
    AttributeDecl child{"y", {"a", "b", "c"}};
    std::vector<AttributeDecl> parents{{"x", {"0", "1"}}};
    std::map<std::vector<int>, std::vector<long long>> counts;
    counts[{0}] = {6, 3, 0};
    ConditionalTable t = dirichlet_table(child, parents, counts);

    bool unseen_ok = true;
    for (double p : *t.rows.at({1}))
      unseen_ok = unseen_ok && std::fabs(p - 1.0 / 3.0) < 1e-12;

    bool sums_ok = true;
    for (const auto& [key, row] : t.rows) {
      double s = 0;
      for (double p : *row) s += p;
      sums_ok = sums_ok && std::fabs(s - 1.0) < 1e-12;
    }

    auto scaled = [&](long long k) {
      std::map<std::vector<int>, std::vector<long long>> c;
      c[{0}] = {6 * k, 3 * k, 0};
      return (*dirichlet_table(child, parents, c).rows.at({0}))[0];
    };
    double f = 6.0 / 9.0;
    double d1 = std::fabs(scaled(1) - f), d10 = std::fabs(scaled(10) - f),
           d1000 = std::fabs(scaled(1000) - f);
    bool mono_ok = d1 > d10 && d10 > d1000;

    ok = unseen_ok && sums_ok && mono_ok;
    if (!ok)
      detail = std::string(unseen_ok ? "" : "unseen row; ") +
               (sums_ok ? "" : "row sums; ") + (mono_ok ? "" : "no monotone approach");
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(8, "add-one smoothing: unseen parent rows are uniform 1/V, every row sums to 1, and scaled counts approach the raw frequencies monotonically", ok, detail);
}

void criterion_9() {
  bool ok = true;
  std::string detail;
  try {
    Relation r = cancer_relation();
    CliqueTreeModel model = build_model(r, cancer_deps());
    const std::vector<std::string> attrs{"A", "B", "C", "D", "E"};
    for (const auto& ev : attrs) {
      for (const std::string& value : {"0", "1"}) {
        JeffreyConstraint q;
        q.scheme = {ev};
        q.table[{value}] = 1.0;
        std::vector<std::vector<std::string>> targets;
        for (const auto& t : attrs) targets.push_back({t});
        auto fast = query(model, {q}, targets);
        auto slow = oracle_query(r, {q}, targets);
        for (std::size_t i = 0; i < targets.size(); ++i) {
          std::set<std::vector<std::string>> keys;
          for (const auto& [k, v] : fast[i].entries) keys.insert(k);
          for (const auto& [k, v] : slow[i].entries) keys.insert(k);
          for (const auto& k : keys) {
            double a = fast[i].entries.count(k) ? fast[i].entries.at(k) : 0.0;
            double b = slow[i].entries.count(k) ? slow[i].entries.at(k) : 0.0;
            if (std::fabs(a - b) > 1e-9) {
              ok = false;
              detail = "mismatch at evidence " + ev + "=" + value + " target " +
                       targets[i][0];
            }
          }
        }
      }
    }

    JeffreyConstraint d1;
    d1.scheme = {"D"};
    d1.table[{"1"}] = 1.0;
    auto spot = query(model, {d1}, {{"A"}});
    if (std::fabs(spot[0].entries.at({"1"}) - 0.425) > 1e-9) {
      ok = false;
      detail = "spot value off";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(9, "clique propagation equals the reweighted universal relation for every single-attribute marginal under every single-attribute hard evidence, including P(A=1 | D=1) = 0.425", ok, detail);
}

// ---- criterion 10: property suites ----------------------------------------

bool property_fd_implies_pd() {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 3 + static_cast<int>(rng() % 4);
    Scheme scheme;
    for (int i = 0; i < n; ++i) {
      AttributeDecl a;
      a.name = "a" + std::to_string(i);
      int k = 2 + static_cast<int>(rng() % 2);
      for (int v = 0; v < k; ++v) a.domain.push_back("v" + std::to_string(v));
      scheme.push_back(a);
    }
    int lhs_count = 1 + static_cast<int>(rng() % 2);
    std::vector<int> lhs_idx;
    for (int i = 0; i < lhs_count; ++i) lhs_idx.push_back(i);
    int rhs_idx = lhs_count;  // first attribute after the lhs block

    Relation r(scheme);
    std::uint64_t salt = rng();
    int rows = 6 + static_cast<int>(rng() % 18);
    for (int i = 0; i < rows; ++i) {
      std::vector<int> codes(static_cast<std::size_t>(n));
      for (int c = 0; c < n; ++c)
        codes[static_cast<std::size_t>(c)] =
            static_cast<int>(rng() % scheme[static_cast<std::size_t>(c)].domain.size());
      std::vector<int> key;
      for (int c : lhs_idx) key.push_back(codes[static_cast<std::size_t>(c)]);
      codes[static_cast<std::size_t>(rhs_idx)] = dependent_value(
          salt, key, static_cast<int>(scheme[static_cast<std::size_t>(rhs_idx)].domain.size()));
      std::vector<std::string> row;
      for (int c = 0; c < n; ++c)
        row.push_back(scheme[static_cast<std::size_t>(c)]
                          .domain[static_cast<std::size_t>(codes[static_cast<std::size_t>(c)])]);
      r.add_row(row, 1 + static_cast<long long>(rng() % 3));
    }

    std::vector<std::string> lhs, rhs{scheme[static_cast<std::size_t>(rhs_idx)].name};
    for (int c : lhs_idx) lhs.push_back(scheme[static_cast<std::size_t>(c)].name);
    if (!fd_holds(r, lhs, rhs)) return false;
    if (!pd_holds(r, lhs, rhs)) return false;

    // Conditionals are all 0/1: within each lhs block the rhs is constant.
    FrequencyTable blocks = frequency(r, lhs);
    for (const auto& [key, prob] : blocks.entries) {
      std::map<std::string, std::string> given;
      for (std::size_t i = 0; i < lhs.size(); ++i) given[lhs[i]] = key[i];
      FrequencyTable cond = cond_frequency(r, rhs, given);
      if (cond.entries.size() != 1) return false;
      if (std::fabs(cond.entries.begin()->second - 1.0) > 1e-12) return false;
    }
  }
  return true;
}

bool property_pd_implies_md() {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    AttributeDecl x{"x", {}}, y{"y", {}}, z{"z", {}};
    int nx = 2 + static_cast<int>(rng() % 2);
    int ny = 2 + static_cast<int>(rng() % 2);
    int nz = 2 + static_cast<int>(rng() % 2);
    for (int i = 0; i < nx; ++i) x.domain.push_back("x" + std::to_string(i));
    for (int i = 0; i < ny; ++i) y.domain.push_back("y" + std::to_string(i));
    for (int i = 0; i < nz; ++i) z.domain.push_back("z" + std::to_string(i));

    // Product construction: count(x,y,z) = f(x,y) * g(x,z) with positive
    // factors, which satisfies the exact identity by design.
    std::vector<std::vector<long long>> f(static_cast<std::size_t>(nx)),
        g(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j)
        f[static_cast<std::size_t>(i)].push_back(1 + static_cast<long long>(rng() % 4));
      for (int k = 0; k < nz; ++k)
        g[static_cast<std::size_t>(i)].push_back(1 + static_cast<long long>(rng() % 4));
    }
    Relation r(Scheme{x, y, z});
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j)
        for (int k = 0; k < nz; ++k)
          r.add_row({x.domain[static_cast<std::size_t>(i)],
                     y.domain[static_cast<std::size_t>(j)],
                     z.domain[static_cast<std::size_t>(k)]},
                    f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                        g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);

    if (!pd_holds(r, {"x"}, {"y"})) return false;
    if (!md_holds(r, {"x"}, {"y"})) return false;
  }
  return true;
}

bool property_lossless_join() {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 4 + static_cast<int>(rng() % 4);
    Scheme scheme;
    for (int i = 0; i < n; ++i) {
      AttributeDecl a;
      a.name = "a" + std::to_string(i);
      int k = 2 + static_cast<int>(rng() % 2);
      for (int v = 0; v < k; ++v) a.domain.push_back("v" + std::to_string(v));
      scheme.push_back(a);
    }

    // Dependencies respect a random attribute order, at most one per
    // dependent attribute, so a consistent instance always exists.
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(rng() % static_cast<unsigned>(i + 1))]);

    std::vector<Dependency> deps;
    std::map<int, std::pair<std::vector<int>, std::uint64_t>> rules;
    for (int pos = 1; pos < n; ++pos) {
      if (rng() % 100 < 45) continue;
      int child = perm[static_cast<std::size_t>(pos)];
      int lhs_count = 1 + static_cast<int>(rng() % std::min(pos, 2));
      std::vector<int> lhs_pos;
      while (static_cast<int>(lhs_pos.size()) < lhs_count) {
        int c = static_cast<int>(rng() % static_cast<unsigned>(pos));
        if (std::find(lhs_pos.begin(), lhs_pos.end(), c) == lhs_pos.end())
          lhs_pos.push_back(c);
      }
      Dependency d;
      d.kind = DependencyKind::Functional;
      for (int c : lhs_pos)
        d.lhs.push_back(scheme[static_cast<std::size_t>(perm[static_cast<std::size_t>(c)])].name);
      d.rhs = {scheme[static_cast<std::size_t>(child)].name};
      deps.push_back(d);
      std::vector<int> lhs_attrs;
      for (int c : lhs_pos) lhs_attrs.push_back(perm[static_cast<std::size_t>(c)]);
      rules[child] = {lhs_attrs, rng()};
    }
    if (deps.empty()) continue;

    Relation r(scheme);
    int rows = 8 + static_cast<int>(rng() % 16);
    for (int i = 0; i < rows; ++i) {
      std::vector<int> codes(static_cast<std::size_t>(n));
      for (int pos = 0; pos < n; ++pos) {
        int attr = perm[static_cast<std::size_t>(pos)];
        auto rule = rules.find(attr);
        if (rule == rules.end()) {
          codes[static_cast<std::size_t>(attr)] = static_cast<int>(
              rng() % scheme[static_cast<std::size_t>(attr)].domain.size());
        } else {
          std::vector<int> key;
          for (int dep_attr : rule->second.first)
            key.push_back(codes[static_cast<std::size_t>(dep_attr)]);
          codes[static_cast<std::size_t>(attr)] = dependent_value(
              rule->second.second, key,
              static_cast<int>(scheme[static_cast<std::size_t>(attr)].domain.size()));
        }
      }
      std::vector<std::string> row;
      for (int c = 0; c < n; ++c)
        row.push_back(scheme[static_cast<std::size_t>(c)]
                          .domain[static_cast<std::size_t>(codes[static_cast<std::size_t>(c)])]);
      r.add_row(row, 1);
    }

    std::vector<std::string> names;
    for (const auto& a : scheme) names.push_back(a.name);
    Decomposition d = decompose_4nf(names, deps);
    std::vector<std::vector<std::string>> all = d.schemes;
    if (d.key_scheme.has_value()) all.push_back(*d.key_scheme);
    if (!verify_lossless_join(r, all)) return false;
    if (!preserves_fds(deps, all)) return false;
  }
  return true;
}

bool property_jeffrey() {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    CliquePotential p;
    for (int i = 0; i < n; ++i) {
      AttributeDecl a;
      a.name = "a" + std::to_string(i);
      int k = 2 + static_cast<int>(rng() % 2);
      for (int v = 0; v < k; ++v) a.domain.push_back("v" + std::to_string(v));
      p.attrs.push_back(a);
    }
    std::vector<int> config(static_cast<std::size_t>(n), 0);
    double total = 0;
    bool more = true;
    while (more) {
      double w = 0.05 + (rng() % 100) / 100.0;
      p.table[config] = w;
      total += w;
      more = false;
      for (int i = n - 1; i >= 0; --i) {
        if (++config[static_cast<std::size_t>(i)] <
            static_cast<int>(p.attrs[static_cast<std::size_t>(i)].domain.size())) {
          more = true;
          break;
        }
        config[static_cast<std::size_t>(i)] = 0;
      }
    }
    for (auto& [k, v] : p.table) v /= total;

    // Constraint over a random single attribute, strictly positive.
    std::size_t pick = rng() % p.attrs.size();
    JeffreyConstraint q;
    q.scheme = {p.attrs[pick].name};
    double qt = 0;
    std::vector<double> weights;
    for (std::size_t v = 0; v < p.attrs[pick].domain.size(); ++v) {
      double w = 0.1 + (rng() % 100) / 100.0;
      weights.push_back(w);
      qt += w;
    }
    for (std::size_t v = 0; v < weights.size(); ++v)
      q.table[{p.attrs[pick].domain[v]}] = weights[v] / qt;

    CliquePotential u = jeffrey_update(p, q);
    if (std::fabs(u.total_mass() - 1.0) > 1e-12) return false;
    auto m = u.marginal({p.attrs[pick].name});
    for (const auto& [key, prob] : m) {
      double want = q.table.at({p.attrs[pick].domain[static_cast<std::size_t>(key[0])]});
      if (std::fabs(prob - want) > 1e-12) return false;
    }
    CliquePotential twice = jeffrey_update(u, q);
    for (const auto& [key, prob] : u.table)
      if (std::fabs(twice.table.at(key) - prob) > 1e-12) return false;
  }
  return true;
}

bool property_calibration() {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 4 + static_cast<int>(rng() % 4);
    Scheme scheme;
    for (int i = 0; i < n; ++i) {
      AttributeDecl a;
      a.name = "a" + std::to_string(i);
      int k = 2 + static_cast<int>(rng() % 2);
      for (int v = 0; v < k; ++v) a.domain.push_back("v" + std::to_string(v));
      scheme.push_back(a);
    }
    Relation r(scheme);
    int rows = 6 + static_cast<int>(rng() % 15);
    for (int i = 0; i < rows; ++i) {
      std::vector<std::string> row;
      for (const auto& a : scheme)
        row.push_back(a.domain[rng() % a.domain.size()]);
      r.add_row(row, 1 + static_cast<long long>(rng() % 3));
    }
    std::vector<Dependency> deps;
    for (int i = 1; i < n; ++i) {
      if (i > 1 && rng() % 10 < 3) continue;
      Dependency d;
      d.kind = DependencyKind::Functional;
      d.rhs = {scheme[static_cast<std::size_t>(i)].name};
      int parents = 1 + static_cast<int>(rng() % std::min(i, 2));
      for (int p = 0; p < parents; ++p)
        d.lhs.push_back(scheme[static_cast<std::size_t>(i - 1 - p)].name);
      deps.push_back(d);
    }

    CliqueTreeModel model = build_model(r, deps);
    const auto& pick = scheme[rng() % scheme.size()];
    FrequencyTable seen = frequency(r, {pick.name});
    JeffreyConstraint q;
    q.scheme = {pick.name};
    q.table[seen.entries.begin()->first] = 1.0;
    CliqueTreeModel after = propagate(model, {q});
    if (after.separator_disagreement() >= 1e-9) return false;
  }
  return true;
}

bool property_annealing() {
  // Optimality against exhaustive elimination search on small graphs.
  const std::vector<std::string> five{"a", "b", "c", "d", "e"};
  DomainSizes domains{{"a", 2}, {"b", 3}, {"c", 2}, {"d", 4}, {"e", 2}};
  for (unsigned mask = 0; mask < 1024; mask += 4) {
    NeighborhoodGraph g = graph_from_mask(five, mask);
    if (anneal_decompose(g, domains, 7).total_states != exhaustive_best(g, domains))
      return false;
  }
  std::mt19937 rng(61);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 6 + (trial % 2);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    unsigned bits = static_cast<unsigned>(n * (n - 1) / 2);
    unsigned mask = static_cast<unsigned>(rng() % (1u << bits));
    NeighborhoodGraph g = graph_from_mask(names, mask);
    DomainSizes d;
    for (const auto& v : names) d[v] = 2 + static_cast<int>(rng() % 3);
    if (anneal_decompose(g, d, 11).total_states != exhaustive_best(g, d))
      return false;
  }

  // Never worse than greedy on larger random graphs.
  for (int trial = 0; trial < 50; ++trial) {
    int n = 6 + static_cast<int>(rng() % 7);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
    NeighborhoodGraph g(names);
    DomainSizes d;
    for (const auto& v : names) d[v] = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 100 < 40)
          g.add_edge(names[static_cast<std::size_t>(i)],
                     names[static_cast<std::size_t>(j)]);
    if (anneal_decompose(g, d, static_cast<std::uint64_t>(trial)).total_states >
        greedy_decompose(g, d).total_states)
      return false;
  }
  return true;
}

bool property_roundtrip() {
  Relation r = disease_relation();
  auto cliques = parse_scheme_list_text(read_file(data_path("mc_cliques.schemes")));
  for (const auto& clique : cliques) {
    std::vector<AttributeDecl> attrs;
    for (const auto& n : clique)
      for (const auto& a : r.scheme())
        if (a.name == n) attrs.push_back(a);
    if (attrs.size() != clique.size()) return false;

    std::vector<int> config(attrs.size(), 0);
    bool more = true;
    while (more) {
      if (decode_index(encode_index(config, attrs), attrs) != config) return false;
      more = false;
      for (int i = static_cast<int>(config.size()) - 1; i >= 0; --i) {
        if (++config[static_cast<std::size_t>(i)] <
            static_cast<int>(attrs[static_cast<std::size_t>(i)].domain.size())) {
          more = true;
          break;
        }
        config[static_cast<std::size_t>(i)] = 0;
      }
    }
  }
  return true;
}

void criterion_10() {
  bool ok = false;
  std::string detail;
  try {
    bool a = property_fd_implies_pd();
    bool b = property_pd_implies_md();
    bool c = property_lossless_join();
    bool d = property_jeffrey();
    bool e = property_calibration();
    bool f = property_annealing();
    bool g = property_roundtrip();
    ok = a && b && c && d && e && f && g;
    if (!ok)
      detail = std::string(a ? "" : "fd->pd; ") + (b ? "" : "pd->md; ") +
               (c ? "" : "lossless; ") + (d ? "" : "jeffrey; ") +
               (e ? "" : "calibration; ") + (f ? "" : "annealing; ") +
               (g ? "" : "roundtrip");
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report(10, "property suites: functional implies probabilistic dependence with 0/1 conditionals, products imply multivalued dependence, random decompositions join losslessly, marginal revision is idempotent and normalized, random trees calibrate, annealing matches exhaustive minima and never loses to greedy, and clique states round-trip their hex indices", ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
