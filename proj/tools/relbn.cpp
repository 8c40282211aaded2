// Command-line front end for the relational belief-network library: dependency
// checks, scheme decomposition, network construction, clique optimization,
// parameter learning and (exact or brute-force) posterior queries.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relbn/decompose.hpp"
#include "relbn/dependency.hpp"
#include "relbn/infer.hpp"
#include "relbn/io.hpp"
#include "relbn/learn.hpp"
#include "relbn/network.hpp"
#include "relbn/relation.hpp"

namespace {

using namespace relbn;

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string field;
  for (char c : csv) {
    if (c == ',') {
      if (!field.empty()) out.push_back(field);
      field.clear();
    } else if (c != ' ' && c != '\t') {
      field += c;
    } else if (!field.empty()) {
      out.push_back(field);
      field.clear();
    }
  }
  if (!field.empty()) out.push_back(field);
  return out;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::fputs(content.c_str(), stdout);
  else
    io::write_file(out_path, content);
}

Relation load_relation_opt(const std::string& relation_path,
                           const std::string& domains_path) {
  return io::load_relation(relation_path, domains_path.empty()
                                              ? std::nullopt
                                              : std::optional<std::string>{domains_path});
}

std::string render_dependency(const Dependency& dep) {
  const char* arrow = dep.kind == DependencyKind::Functional     ? "->"
                      : dep.kind == DependencyKind::Multivalued ? "->>"
                                                                : "|->";
  std::string out;
  for (std::size_t i = 0; i < dep.lhs.size(); ++i) out += (i ? "," : "") + dep.lhs[i];
  out += std::string(" ") + arrow + " ";
  for (std::size_t i = 0; i < dep.rhs.size(); ++i) out += (i ? "," : "") + dep.rhs[i];
  return out;
}

bool dependency_holds(const Relation& r, const Dependency& dep) {
  switch (dep.kind) {
    case DependencyKind::Functional: return fd_holds(r, dep.lhs, dep.rhs);
    case DependencyKind::Multivalued: return md_holds(r, dep.lhs, dep.rhs);
    case DependencyKind::Probabilistic: return pd_holds(r, dep.lhs, dep.rhs);
  }
  throw Error(ErrorKind::Usage, "unknown dependency kind");
}

std::vector<Dependency> functional_subset(const std::vector<Dependency>& deps) {
  std::vector<Dependency> out;
  for (const auto& d : deps)
    if (d.kind == DependencyKind::Functional) out.push_back(d);
  return out;
}

// ---- Subcommand payloads ----------------------------------------------------

struct CommonArgs {
  std::string relation_path;
  std::string domains_path;
  std::string deps_path;
  std::string out_path;
};

int run_decompose_4nf(const CommonArgs& args, const std::string& attrs_csv) {
  std::vector<Dependency> deps = io::load_dependencies(args.deps_path);
  std::vector<std::string> scheme;
  std::optional<Relation> relation;
  if (!args.relation_path.empty()) {
    relation = load_relation_opt(args.relation_path, args.domains_path);
    scheme = relation->attribute_names();
  }
  if (!attrs_csv.empty()) scheme = split_csv(attrs_csv);
  if (scheme.empty())
    throw Error(ErrorKind::Usage, "decompose-4nf needs --attrs or --relation");

  Decomposition d = decompose_4nf(scheme, deps);
  std::string out = io::write_decomposition(d);
  std::vector<Dependency> fds = functional_subset(deps);
  if (!fds.empty())
    out += std::string("preserves-fds: ") +
           (preserves_fds(fds, d.schemes) ? "yes" : "no") + "\n";
  if (relation.has_value())
    out += std::string("lossless-join: ") +
           (verify_lossless_join(*relation, d.schemes) ? "yes" : "no") + "\n";
  emit(args.out_path, out);
  return 0;
}

int run_check(const CommonArgs& args, const std::string& kind,
              const std::string& lhs_csv, const std::string& rhs_csv,
              const std::string& schemes_path) {
  std::string out;
  if (kind == "acyclic") {
    auto schemes = io::load_scheme_list(schemes_path);
    out = std::string("acyclic: ") + (graham_is_acyclic(schemes) ? "yes" : "no") + "\n";
  } else if (kind == "lossless-join") {
    Relation r = load_relation_opt(args.relation_path, args.domains_path);
    auto schemes = io::load_scheme_list(schemes_path);
    out = std::string("lossless-join: ") +
          (verify_lossless_join(r, schemes) ? "yes" : "no") + "\n";
  } else if (kind == "preserves") {
    auto deps = io::load_dependencies(args.deps_path);
    auto schemes = io::load_scheme_list(schemes_path);
    out = std::string("preserves-fds: ") +
          (preserves_fds(functional_subset(deps), schemes) ? "yes" : "no") + "\n";
  } else if (kind == "fd" || kind == "md" || kind == "pd") {
    Relation r = load_relation_opt(args.relation_path, args.domains_path);
    Dependency dep;
    dep.kind = kind == "fd"   ? DependencyKind::Functional
               : kind == "md" ? DependencyKind::Multivalued
                              : DependencyKind::Probabilistic;
    dep.lhs = split_csv(lhs_csv);
    dep.rhs = split_csv(rhs_csv);
    if (dep.rhs.empty()) throw Error(ErrorKind::Usage, "--rhs names no attributes");
    out = render_dependency(dep) + ": " +
          (dependency_holds(r, dep) ? "holds" : "does not hold") + "\n";
  } else if (kind.empty()) {
    // No --kind: test every dependency in the file against the relation.
    Relation r = load_relation_opt(args.relation_path, args.domains_path);
    auto deps = io::load_dependencies(args.deps_path);
    for (const auto& dep : deps)
      out += render_dependency(dep) + ": " +
             (dependency_holds(r, dep) ? "holds" : "does not hold") + "\n";
  } else {
    throw Error(ErrorKind::Usage, "unknown --kind '" + kind + "'");
  }
  emit(args.out_path, out);
  return 0;
}

int run_build_bn(const CommonArgs& args) {
  Relation r = load_relation_opt(args.relation_path, args.domains_path);
  std::vector<Dependency> deps = io::load_dependencies(args.deps_path);
  BeliefNetwork bn = build_bn(r.scheme(), deps);
  std::vector<ConditionalTable> tables = extract_ccs({r}, deps);
  emit(args.out_path, io::write_network(bn, tables));
  return 0;
}

ModelBuildOptions optimizer_options(const std::string& optimizer, std::uint64_t seed) {
  ModelBuildOptions options;
  options.seed = seed;
  if (optimizer == "greedy")
    options.optimizer = Optimizer::Greedy;
  else if (optimizer == "anneal")
    options.optimizer = Optimizer::Anneal;
  else
    throw Error(ErrorKind::Usage, "unknown --optimizer '" + optimizer + "'");
  return options;
}

int run_decompose_bn(const CommonArgs& args, const std::string& optimizer,
                     std::uint64_t seed) {
  Relation r = load_relation_opt(args.relation_path, args.domains_path);
  std::vector<Dependency> deps = io::load_dependencies(args.deps_path);
  (void)build_bn(r.scheme(), deps);  // rejects cyclic dependency sets early

  NeighborhoodGraph g = neighborhood_graph(r.attribute_names(), dependency_families(deps));
  DomainSizes domains;
  for (const auto& a : r.scheme()) domains[a.name] = static_cast<int>(a.domain.size());

  ModelBuildOptions options = optimizer_options(optimizer, seed);
  CliqueDecomposition d = options.optimizer == Optimizer::Greedy
                              ? greedy_decompose(g, domains)
                              : anneal_decompose(g, domains, seed);
  JunctionTree tree = build_junction_tree(d.triangulation.cliques);
  emit(args.out_path, io::write_clique_decomposition(d, tree, domains, optimizer));
  return 0;
}

int run_learn(const CommonArgs& args, const std::string& method,
              const std::string& cliques_path, const std::string& target,
              bool binary_slice_flag) {
  Relation r = load_relation_opt(args.relation_path, args.domains_path);
  std::string out;

  if (method == "frequency") {
    std::vector<std::vector<std::string>> cliques;
    if (!cliques_path.empty()) {
      cliques = io::load_scheme_list(cliques_path);
    } else {
      if (args.deps_path.empty())
        throw Error(ErrorKind::Usage, "learn --method frequency needs --cliques or --deps");
      std::vector<Dependency> deps = io::load_dependencies(args.deps_path);
      (void)build_bn(r.scheme(), deps);
      NeighborhoodGraph g =
          neighborhood_graph(r.attribute_names(), dependency_families(deps));
      DomainSizes domains;
      for (const auto& a : r.scheme()) domains[a.name] = static_cast<int>(a.domain.size());
      cliques = greedy_decompose(g, domains).triangulation.cliques;
    }
    for (std::size_t i = 0; i < cliques.size(); ++i) {
      if (i) out += "\n";
      out += io::write_potential(frequency_prior(r, cliques[i]));
    }
  } else if (method == "dirichlet" || method == "nnor") {
    if (args.deps_path.empty())
      throw Error(ErrorKind::Usage, "learn --method " + method + " needs --deps");
    std::vector<Dependency> deps =
        split_singleton_rhs(io::load_dependencies(args.deps_path));
    bool matched = false;
    for (const auto& dep : deps) {
      if (!target.empty() && dep.rhs[0] != target) continue;
      if (matched) out += "\n";
      matched = true;
      if (method == "dirichlet") {
        out += io::write_conditional_table(
            dirichlet_from_relation(r, dep.lhs, dep.rhs[0]));
        continue;
      }
      std::vector<ConditionalTable> tables = extract_ccs({r}, {dep});
      KMap map = kmap_from_table(tables[0]);
      if (binary_slice_flag) map = binary_slice(map);
      NnorResult result = nnor_complete(map);
      out += io::write_conditional_table(nnor_table(result));
      if (result.formula.has_value())
        out += "formula: " + result.formula->to_string() + "\n";
    }
    if (!matched)
      throw Error(ErrorKind::Usage, target.empty()
                                        ? "the dependency file is empty"
                                        : "no dependency has child '" + target + "'");
  } else {
    throw Error(ErrorKind::Usage, "unknown --method '" + method + "'");
  }
  emit(args.out_path, out);
  return 0;
}

std::vector<std::vector<std::string>> parse_targets(
    const std::vector<std::string>& raw) {
  std::vector<std::vector<std::string>> out;
  for (const auto& csv : raw) {
    std::vector<std::string> target = split_csv(csv);
    if (target.empty()) throw Error(ErrorKind::Usage, "--target names no attributes");
    out.push_back(std::move(target));
  }
  return out;
}

int run_infer(const CommonArgs& args, const std::string& evidence_path,
              const std::vector<std::string>& raw_targets, const std::string& optimizer,
              std::uint64_t seed, bool show_cliques) {
  Relation r = load_relation_opt(args.relation_path, args.domains_path);
  std::vector<Dependency> deps = io::load_dependencies(args.deps_path);
  std::vector<MarginalConstraint> evidence;
  if (!evidence_path.empty()) evidence = io::load_evidence(evidence_path);

  CliqueTreeModel model = build_model(r, deps, optimizer_options(optimizer, seed));
  std::vector<std::vector<std::string>> targets = parse_targets(raw_targets);

  std::vector<FrequencyTable> tables = query(model, evidence, targets);
  std::vector<CliquePotential> shown;
  if (show_cliques) shown = propagate(model, evidence).potentials;
  emit(args.out_path, io::write_query_result("clique-tree", shown, tables));
  return 0;
}

int run_oracle_infer(const CommonArgs& args, const std::string& evidence_path,
                     const std::vector<std::string>& raw_targets) {
  Relation r = load_relation_opt(args.relation_path, args.domains_path);
  std::vector<MarginalConstraint> evidence;
  if (!evidence_path.empty()) evidence = io::load_evidence(evidence_path);
  std::vector<FrequencyTable> tables =
      oracle_query(r, evidence, parse_targets(raw_targets));
  emit(args.out_path, io::write_query_result("oracle", {}, tables));
  return 0;
}

int run_reproduce(const CommonArgs& args, const std::string& evidence_path,
                  const std::string& out_dir, std::uint64_t seed) {
  Relation r = load_relation_opt(args.relation_path, args.domains_path);
  std::vector<Dependency> deps = io::load_dependencies(args.deps_path);
  auto path = [&out_dir](const char* name) { return out_dir + "/" + name; };

  // Scheme decomposition with instance-level verification.
  Decomposition d = decompose_4nf(r.attribute_names(), deps);
  std::string decomposition_report = io::write_decomposition(d);
  std::vector<Dependency> fds = functional_subset(deps);
  if (!fds.empty())
    decomposition_report += std::string("preserves-fds: ") +
                            (preserves_fds(fds, d.schemes) ? "yes" : "no") + "\n";
  decomposition_report += std::string("lossless-join: ") +
                          (verify_lossless_join(r, d.schemes) ? "yes" : "no") + "\n";
  io::write_file(path("decomposition.txt"), decomposition_report);

  // Dependency verdicts on the instance.
  std::string verdicts;
  for (const auto& dep : deps)
    verdicts += render_dependency(dep) + ": " +
                (dependency_holds(r, dep) ? "holds" : "does not hold") + "\n";
  io::write_file(path("dependencies.txt"), verdicts);

  // Network with raw conditionals.
  BeliefNetwork bn = build_bn(r.scheme(), deps);
  io::write_file(path("network.txt"), io::write_network(bn, extract_ccs({r}, deps)));

  // Clique decomposition (greedy) and junction tree.
  NeighborhoodGraph g = neighborhood_graph(r.attribute_names(), dependency_families(deps));
  DomainSizes domains;
  for (const auto& a : r.scheme()) domains[a.name] = static_cast<int>(a.domain.size());
  CliqueDecomposition greedy = greedy_decompose(g, domains);
  JunctionTree tree = build_junction_tree(greedy.triangulation.cliques);
  io::write_file(path("cliques.txt"),
                 io::write_clique_decomposition(greedy, tree, domains, "greedy"));

  // Frequency priors over the cliques.
  std::string priors;
  for (std::size_t i = 0; i < tree.cliques.size(); ++i) {
    if (i) priors += "\n";
    priors += io::write_potential(frequency_prior(r, tree.cliques[i]));
  }
  io::write_file(path("priors.txt"), priors);

  // Map completion per dependency (binary slice where a parent is not binary).
  std::string completion;
  bool first = true;
  for (const auto& dep : split_singleton_rhs(deps)) {
    std::vector<ConditionalTable> tables = extract_ccs({r}, {dep});
    KMap map = kmap_from_table(tables[0]);
    bool sliced = false;
    for (const auto& parent : map.parents)
      if (parent.domain.size() > 2) sliced = true;
    if (sliced) map = binary_slice(map);
    NnorResult result = nnor_complete(map);
    if (!first) completion += "\n";
    first = false;
    if (sliced) completion += "# restricted to the binary slice\n";
    completion += io::write_conditional_table(nnor_table(result));
    if (result.formula.has_value())
      completion += "formula: " + result.formula->to_string() + "\n";
  }
  io::write_file(path("completion.txt"), completion);

  // Posterior clique potentials and marginals under the evidence, against
  // both engines.
  std::vector<MarginalConstraint> evidence;
  if (!evidence_path.empty()) evidence = io::load_evidence(evidence_path);
  CliqueTreeModel model = build_model(r, deps, optimizer_options("greedy", seed));
  CliqueTreeModel posterior = propagate(model, evidence);
  std::vector<std::vector<std::string>> singles;
  for (const auto& name : r.attribute_names()) singles.push_back({name});
  io::write_file(path("posterior.txt"),
                 io::write_query_result("clique-tree", posterior.potentials,
                                        query(model, evidence, singles)));
  io::write_file(path("oracle.txt"),
                 io::write_query_result("oracle", {},
                                        oracle_query(r, evidence, singles)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relational belief-network toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string attrs_csv, kind, lhs_csv, rhs_csv, schemes_path;
  std::string method = "frequency", cliques_path, target, evidence_path;
  std::string optimizer = "greedy", out_dir = ".";
  std::vector<std::string> raw_targets;
  std::uint64_t seed = 0;
  bool binary_slice_flag = false, show_cliques = false;

  auto add_common = [&args](CLI::App* cmd, bool needs_relation, bool needs_deps) {
    auto* rel = cmd->add_option("--relation", args.relation_path, "relation file");
    cmd->add_option("--domains", args.domains_path, "domain declarations");
    auto* deps = cmd->add_option("--deps", args.deps_path, "dependency file");
    cmd->add_option("--out", args.out_path, "output file (default: stdout)");
    if (needs_relation) rel->required();
    if (needs_deps) deps->required();
  };

  auto* d4 = app.add_subcommand("decompose-4nf", "decompose a scheme along its dependencies");
  add_common(d4, false, true);
  d4->add_option("--attrs", attrs_csv, "comma-separated universal scheme");

  auto* check = app.add_subcommand("check", "test dependencies and decompositions");
  add_common(check, false, false);
  check->add_option("--kind", kind, "fd|md|pd|acyclic|lossless-join|preserves");
  check->add_option("--lhs", lhs_csv, "left-hand attributes");
  check->add_option("--rhs", rhs_csv, "right-hand attributes");
  check->add_option("--schemes", schemes_path, "scheme-list file");

  auto* bbn = app.add_subcommand("build-bn", "belief network and raw conditionals");
  add_common(bbn, true, true);

  auto* dbn = app.add_subcommand("decompose-bn", "clique decomposition and junction tree");
  add_common(dbn, true, true);
  dbn->add_option("--optimizer", optimizer, "greedy|anneal (default greedy)");
  dbn->add_option("--seed", seed, "annealing seed");

  auto* learn = app.add_subcommand("learn", "estimate clique priors or conditionals");
  add_common(learn, true, false);
  learn->add_option("--method", method, "frequency|dirichlet|nnor");
  learn->add_option("--cliques", cliques_path, "scheme-list file of cliques");
  learn->add_option("--target", target, "restrict to one child attribute");
  learn->add_flag("--binary-slice", binary_slice_flag,
                  "restrict non-binary attributes to their first/last values");

  auto* infer = app.add_subcommand("infer", "posterior marginals by clique-tree propagation");
  add_common(infer, true, true);
  infer->add_option("--evidence", evidence_path, "evidence/constraint file");
  infer->add_option("--target", raw_targets, "marginal over these attributes (repeatable)");
  infer->add_option("--optimizer", optimizer, "greedy|anneal (default greedy)");
  infer->add_option("--seed", seed, "annealing seed");
  infer->add_flag("--show-cliques", show_cliques, "also print posterior clique potentials");

  auto* oracle = app.add_subcommand("oracle-infer",
                                    "posterior marginals from the universal relation");
  add_common(oracle, true, false);
  oracle->add_option("--evidence", evidence_path, "evidence/constraint file");
  oracle->add_option("--target", raw_targets, "marginal over these attributes (repeatable)");

  auto* repro = app.add_subcommand("reproduce", "run the full pipeline into a directory");
  add_common(repro, true, true);
  repro->add_option("--evidence", evidence_path, "evidence/constraint file");
  repro->add_option("--out-dir", out_dir, "output directory (default: .)");
  repro->add_option("--seed", seed, "annealing seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (d4->parsed()) return run_decompose_4nf(args, attrs_csv);
    if (check->parsed()) return run_check(args, kind, lhs_csv, rhs_csv, schemes_path);
    if (bbn->parsed()) return run_build_bn(args);
    if (dbn->parsed()) return run_decompose_bn(args, optimizer, seed);
    if (learn->parsed())
      return run_learn(args, method, cliques_path, target, binary_slice_flag);
    if (infer->parsed())
      return run_infer(args, evidence_path, raw_targets, optimizer, seed, show_cliques);
    if (oracle->parsed()) return run_oracle_infer(args, evidence_path, raw_targets);
    if (repro->parsed()) return run_reproduce(args, evidence_path, out_dir, seed);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == ErrorKind::Usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
