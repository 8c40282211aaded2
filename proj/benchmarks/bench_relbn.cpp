// Microbenchmarks for the hot paths: joins, clique optimization, propagation
// and boolean minimization. Not registered with ctest.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "relbn/decompose.hpp"
#include "relbn/infer.hpp"
#include "relbn/learn.hpp"
#include "relbn/relation.hpp"

namespace {

using namespace relbn;

Relation random_relation(const Scheme& scheme, int rows, unsigned seed) {
  std::mt19937 rng(seed);
  Relation r(scheme);
  for (int i = 0; i < rows; ++i) {
    std::vector<int> row;
    row.reserve(scheme.size());
    for (const auto& a : scheme)
      row.push_back(static_cast<int>(rng() % a.domain.size()));
    r.add_row_indices(row, 1 + static_cast<long long>(rng() % 8));
  }
  return r;
}

Scheme binary_scheme(const std::vector<std::string>& names) {
  Scheme s;
  for (const auto& n : names) s.push_back({n, {"0", "1"}});
  return s;
}

// Chain dependencies x1 -> x2 -> ... over `n` binary attributes.
std::vector<Dependency> chain_deps(const std::vector<std::string>& names) {
  std::vector<Dependency> deps;
  for (std::size_t i = 1; i < names.size(); ++i)
    deps.push_back({DependencyKind::Functional, {names[i - 1]}, {names[i]}});
  return deps;
}

std::vector<std::string> attr_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

NeighborhoodGraph random_graph(int n, double density, unsigned seed,
                               DomainSizes& domains) {
  std::vector<std::string> names = attr_names(n);
  NeighborhoodGraph g(names);
  std::mt19937 rng(seed);
  for (int i = 0; i < n; ++i) {
    domains[names[static_cast<std::size_t>(i)]] = 2 + static_cast<int>(rng() % 3);
    for (int j = i + 1; j < n; ++j)
      if (static_cast<double>(rng() % 1000) / 1000.0 < density)
        g.add_edge(names[static_cast<std::size_t>(i)],
                   names[static_cast<std::size_t>(j)]);
  }
  return g;
}

void bench_natural_join(benchmark::State& state) {
  int rows = static_cast<int>(state.range(0));
  Relation r = random_relation(binary_scheme({"a", "b", "c", "d"}), rows, 1);
  Relation s = random_relation(binary_scheme({"c", "d", "e", "f"}), rows, 2);
  for (auto _ : state) benchmark::DoNotOptimize(natural_join(r, s));
}
BENCHMARK(bench_natural_join)->Arg(64)->Arg(512);

void bench_greedy_decompose(benchmark::State& state) {
  DomainSizes domains;
  NeighborhoodGraph g =
      random_graph(static_cast<int>(state.range(0)), 0.3, 5, domains);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_decompose(g, domains));
}
BENCHMARK(bench_greedy_decompose)->Arg(12)->Arg(24);

void bench_anneal_decompose(benchmark::State& state) {
  DomainSizes domains;
  NeighborhoodGraph g =
      random_graph(static_cast<int>(state.range(0)), 0.3, 5, domains);
  AnnealSchedule quick;
  quick.steps_per_temp = 20;
  quick.patience = 5;
  for (auto _ : state)
    benchmark::DoNotOptimize(anneal_decompose(g, domains, 42, quick));
}
BENCHMARK(bench_anneal_decompose)->Arg(12);

void bench_propagate(benchmark::State& state) {
  std::vector<std::string> names = attr_names(static_cast<int>(state.range(0)));
  Relation r = random_relation(binary_scheme(names), 200, 9);
  CliqueTreeModel model = build_model(r, chain_deps(names));
  std::vector<JeffreyConstraint> evidence;
  JeffreyConstraint c;
  c.scheme = {names.back()};
  c.table[{"0"}] = 0.25;
  c.table[{"1"}] = 0.75;
  evidence.push_back(c);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(model, evidence));
}
BENCHMARK(bench_propagate)->Arg(8)->Arg(16);

void bench_sop_minimize(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  TruthTable table;
  for (int i = 0; i < n; ++i) table.vars.push_back("v" + std::to_string(i));
  std::mt19937 rng(13);
  table.values.resize(std::size_t{1} << n);
  for (std::size_t i = 0; i < table.values.size(); ++i)
    table.values[i] = (rng() % 3) == 0;
  for (auto _ : state) benchmark::DoNotOptimize(sop_minimize(table));
}
BENCHMARK(bench_sop_minimize)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
