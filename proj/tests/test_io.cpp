#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "relbn/infer.hpp"
#include "relbn/io.hpp"

using namespace relbn;
using namespace relbn::io;

namespace {

std::string data_path(const std::string& name) {
  return std::string(RELBN_DATA_DIR) + "/" + name;
}

bool message_contains(const std::function<void()>& f, const std::string& needle) {
  try {
    f();
  } catch (const Error& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("relation parsing") {
  SUBCASE("domains collect values in order of first appearance") {
    Relation r = parse_relation_text("A, B\nx 1\ny 0\nx 0\n");
    REQUIRE(r.scheme().size() == 2);
    CHECK(r.scheme()[0].domain == std::vector<std::string>{"x", "y"});
    CHECK(r.scheme()[1].domain == std::vector<std::string>{"1", "0"});
    CHECK(r.total_count() == 3);
  }

  SUBCASE("fixed domains pin order and reject strangers") {
    Scheme domains{{"A", {"y", "x"}}, {"B", {"0", "1"}}};
    Relation r = parse_relation_text("A,B\nx,1\n", domains);
    CHECK(r.scheme()[0].domain == std::vector<std::string>{"y", "x"});
    CHECK(message_contains(
        [&] { parse_relation_text("A,B\nz,1\n", domains); }, "line 2"));
  }

  SUBCASE("comments, blank lines, and mixed separators") {
    Relation r = parse_relation_text(
        "# header comment\n\nA,B , C\n1, 2 3  # trailing\n\n4 5,6\n");
    CHECK(r.total_count() == 2);
    CHECK(r.scheme()[2].name == "C");
  }

  SUBCASE("explicit multiplicity column") {
    Relation r = parse_relation_text("A,__count\nx,3\ny,2\nx,1\n");
    CHECK(r.total_count() == 6);
    FrequencyTable f = frequency(r, {"A"});
    CHECK(f.entries.at({"x"}) == doctest::Approx(4.0 / 6.0));

    CHECK(message_contains(
        [] { parse_relation_text("__count,A\n3,x\n"); }, "last"));
    CHECK(message_contains(
        [] { parse_relation_text("A,__count\nx,0\n"); }, "line 2"));
    CHECK(message_contains(
        [] { parse_relation_text("A,__count\nx,many\n"); }, "line 2"));
  }

  SUBCASE("shape errors carry line numbers") {
    CHECK(message_contains([] { parse_relation_text("A,B\n1\n"); }, "line 2"));
    CHECK(message_contains([] { parse_relation_text("A,A\n1,2\n"); }, "line 1"));
    CHECK(message_contains([] { parse_relation_text(""); }, "header"));
  }

  SUBCASE("a column that never sees a value still gets a domain") {
    Relation r = parse_relation_text("A,B\n");
    CHECK(r.scheme()[0].domain == std::vector<std::string>{"0"});
    CHECK(r.distinct_rows() == 0);
  }
}

TEST_CASE("domain file parsing") {
  Scheme s = parse_domains_text("# d\nA: -1, 1\nB: x\n");
  REQUIRE(s.size() == 2);
  CHECK(s[0].domain == std::vector<std::string>{"-1", "1"});
  CHECK(s[1].domain == std::vector<std::string>{"x"});

  CHECK(message_contains([] { parse_domains_text("A: 1\nA: 2\n"); }, "line 2"));
  CHECK(message_contains([] { parse_domains_text("A: 1, 1\n"); }, "line 1"));
  CHECK(message_contains([] { parse_domains_text("A 1, 2\n"); }, "line 1"));
  CHECK(message_contains([] { parse_domains_text("A:\n"); }, "line 1"));
}

TEST_CASE("dependency file parsing distinguishes the three arrows") {
  auto deps = parse_dependencies_text(
      "u1, u2 -> u7\nA ->> B, C\nB,C |-> D\n-> E\n");
  REQUIRE(deps.size() == 4);
  CHECK(deps[0].kind == DependencyKind::Functional);
  CHECK(deps[0].lhs == std::vector<std::string>{"u1", "u2"});
  CHECK(deps[0].rhs == std::vector<std::string>{"u7"});
  CHECK(deps[1].kind == DependencyKind::Multivalued);
  CHECK(deps[1].rhs == std::vector<std::string>{"B", "C"});
  CHECK(deps[2].kind == DependencyKind::Probabilistic);
  CHECK(deps[2].lhs == std::vector<std::string>{"B", "C"});
  CHECK(deps[3].lhs.empty());
  CHECK(deps[3].rhs == std::vector<std::string>{"E"});

  CHECK(message_contains([] { parse_dependencies_text("A B\n"); }, "line 1"));
  CHECK(message_contains([] { parse_dependencies_text("A ->\n"); }, "line 1"));
}

TEST_CASE("evidence file parsing") {
  auto evidence = parse_evidence_text(
      "u1=1\n"
      "marginal u3, u5 {\n"
      "  -1, -1 : 0.25\n"
      "  1, 1 : 0.75\n"
      "}\n"
      "u6 = -1\n");
  REQUIRE(evidence.size() == 3);
  CHECK(evidence[0].scheme == std::vector<std::string>{"u1"});
  CHECK(evidence[0].table.at({"1"}) == doctest::Approx(1.0));
  CHECK(evidence[1].scheme == std::vector<std::string>{"u3", "u5"});
  CHECK(evidence[1].table.at({"-1", "-1"}) == doctest::Approx(0.25));
  CHECK(evidence[1].table.at({"1", "1"}) == doctest::Approx(0.75));
  CHECK(evidence[2].table.at({"-1"}) == doctest::Approx(1.0));

  CHECK(message_contains(
      [] { parse_evidence_text("marginal A {\n0 : 0.5\n"); }, "never closed"));
  CHECK(message_contains(
      [] { parse_evidence_text("marginal A {\n0 : 0.5\n0 : 0.5\n}\n"); },
      "line 3"));
  CHECK(message_contains(
      [] { parse_evidence_text("marginal A {\n0, 1 : 0.5\n}\n"); }, "line 2"));
  CHECK(message_contains([] { parse_evidence_text("u1\n"); }, "line 1"));
  CHECK(message_contains(
      [] { parse_evidence_text("marginal A {\n0 : fast\n}\n"); }, "line 2"));
}

TEST_CASE("scheme list parsing") {
  auto schemes = parse_scheme_list_text("A,B\n# note\nC\n");
  REQUIRE(schemes.size() == 2);
  CHECK(schemes[0] == std::vector<std::string>{"A", "B"});
  CHECK(schemes[1] == std::vector<std::string>{"C"});
  CHECK(message_contains([] { parse_scheme_list_text("A,A\n"); }, "line 1"));
}

TEST_CASE("file access errors name the path") {
  CHECK(message_contains([] { read_file("/nonexistent/x.rel"); }, "/nonexistent/x.rel"));
  CHECK(message_contains(
      [] { load_relation("/nonexistent/x.rel"); }, "/nonexistent/x.rel"));
  // Parse errors raised under a path are prefixed with it.
  write_file("/tmp/relbn_bad.rel", "A,B\n1\n");
  CHECK(message_contains([] { load_relation("/tmp/relbn_bad.rel"); },
                         "/tmp/relbn_bad.rel"));
  CHECK(message_contains([] { load_relation("/tmp/relbn_bad.rel"); }, "line 2"));
  std::remove("/tmp/relbn_bad.rel");
}

TEST_CASE("probability formatting") {
  CHECK(format_probability(0.0) == "0");
  CHECK(format_probability(1.0) == "1");
  CHECK(format_probability(0.425) == "0.425000000");
  CHECK(format_probability(1.0 / 3.0) == "0.333333333");
  CHECK(format_probability(0.5) == "0.500000000");
}

TEST_CASE("relation serialization round-trips") {
  Relation r = load_relation(data_path("cancer.rel"), data_path("cancer.dom"));
  Relation back = parse_relation_text(write_relation(r, true), r.scheme());
  CHECK(back.total_count() == r.total_count());
  FrequencyTable a = frequency(r, {"A", "D"});
  FrequencyTable b = frequency(back, {"A", "D"});
  for (const auto& [k, v] : a.entries)
    CHECK(b.entries.at(k) == doctest::Approx(v).epsilon(1e-12));

  // Without counts every distinct row appears once.
  Relation flat = parse_relation_text(write_relation(r, false));
  CHECK(flat.total_count() == static_cast<long long>(r.distinct_rows()));
}

TEST_CASE("decomposition serialization re-parses and marks the key") {
  Decomposition d;
  d.schemes = {{"u1", "u2", "u7"}, {"u3", "u4"}};
  d.key_scheme = std::vector<std::string>{"u3", "u4"};
  std::string text = write_decomposition(d);
  CHECK(text.find("# key") != std::string::npos);
  auto schemes = parse_scheme_list_text(text);
  REQUIRE(schemes.size() == 2);
  CHECK(schemes[0] == d.schemes[0]);
  CHECK(schemes[1] == d.schemes[1]);
}

TEST_CASE("conditional table and network serialization") {
  Relation r = load_relation(data_path("sarcophagal.rel"), data_path("sarcophagal.dom"));
  auto deps = parse_dependencies_text(read_file(data_path("sarcophagal.deps")));
  auto tables = extract_ccs({r}, deps);
  BeliefNetwork bn = build_bn(r.scheme(), deps);

  std::string table_text = write_conditional_table(tables[0]);
  CHECK(table_text.find("conditional u7 | u1,u2,u3") != std::string::npos);
  CHECK(table_text.find("child-domain: -1,1") != std::string::npos);
  CHECK(table_text.find("?") != std::string::npos);  // unseen rows stay visible

  std::string net_text = write_network(bn, tables);
  CHECK(net_text.find("nodes: u1,u2,u3,u4,u5,u6,u7,u8,u9,u10,u11") != std::string::npos);
  CHECK(net_text.find("u1 -> u7") != std::string::npos);
  CHECK(net_text.find("u10 -> u11") != std::string::npos);

  // A conditional on nothing renders its row key as "()".
  ConditionalTable root;
  root.child = AttributeDecl{"A", {"0", "1"}};
  root.rows[{}] = std::vector<double>{0.25, 0.75};
  std::string root_text = write_conditional_table(root);
  CHECK(root_text.find("()") != std::string::npos);
  CHECK(root_text.find("0.250000000 0.750000000") != std::string::npos);
}

TEST_CASE("clique decomposition and potential serialization") {
  Relation r = load_relation(data_path("sarcophagal.rel"), data_path("sarcophagal.dom"));
  auto deps = parse_dependencies_text(read_file(data_path("sarcophagal.deps")));
  std::vector<std::string> names;
  for (const auto& a : r.scheme()) names.push_back(a.name);
  std::vector<std::vector<std::string>> families;
  for (const auto& dep : deps) {
    std::vector<std::string> fam = dep.lhs;
    fam.insert(fam.end(), dep.rhs.begin(), dep.rhs.end());
    families.push_back(fam);
  }
  NeighborhoodGraph g = neighborhood_graph(names, families);
  DomainSizes sizes;
  for (const auto& a : r.scheme()) sizes[a.name] = static_cast<int>(a.domain.size());
  CliqueDecomposition d = greedy_decompose(g, sizes);
  JunctionTree tree = build_junction_tree(d.triangulation.cliques);

  std::string text = write_clique_decomposition(d, tree, sizes, "greedy");
  CHECK(text.find("objective: greedy") != std::string::npos);
  CHECK(text.find("total-states: 124") != std::string::npos);
  CHECK(text.find("fill:") != std::string::npos);
  CHECK(text.find("# states=") != std::string::npos);
  CHECK(text.find(" -- ") != std::string::npos);

  CliquePotential p = frequency_prior(r, {"u9", "u10", "u11"});
  std::string pot = write_potential(p);
  CHECK(pot.find("potential u9,u10,u11") != std::string::npos);
  CHECK(pot.find("0 : 0.500000000") != std::string::npos);
  CHECK(pot.find("6 : 0.250000000") != std::string::npos);

  std::string res = write_query_result("clique-tree", {p}, {frequency(r, {"u5"})});
  CHECK(res.find("engine: clique-tree") != std::string::npos);
  CHECK(res.find("marginal u5") != std::string::npos);
}

TEST_CASE("raw file round-trip") {
  const std::string path = "/tmp/relbn_io_roundtrip.txt";
  const std::string content = "line one\nline two\n";
  write_file(path, content);
  CHECK(read_file(path) == content);
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_file("/nonexistent/dir/file.txt", "x"), Error);
}
