#include "relbn/dependency.hpp"

#include <algorithm>
#include <map>

namespace relbn {

namespace {

constexpr std::size_t kMaxKeySearchAttrs = 24;
constexpr std::size_t kMaxProjectionAttrs = 16;

std::set<std::string> to_set(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

bool subset_of(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void require_fds(const std::vector<Dependency>& deps, const char* op) {
  for (const auto& d : deps)
    if (d.kind != DependencyKind::Functional)
      throw Error(ErrorKind::UnsupportedDependency,
                  std::string(op) + " is defined for functional dependencies only");
}

// Next size-k index combination in lexicographic order; false when done.
bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Dependency> split_singleton_rhs(const std::vector<Dependency>& deps) {
  std::vector<Dependency> out;
  for (const auto& d : deps) {
    if (d.rhs.empty())
      throw Error(ErrorKind::Schema, "dependency with empty right-hand side");
    for (const auto& a : d.rhs) out.push_back({d.kind, d.lhs, {a}});
  }
  return out;
}

std::set<std::string> attribute_closure(const std::vector<Dependency>& fds,
                                        const std::vector<std::string>& x) {
  require_fds(fds, "attribute closure");
  std::set<std::string> closure = to_set(x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& d : fds) {
      if (!subset_of(to_set(d.lhs), closure)) continue;
      for (const auto& a : d.rhs) changed |= closure.insert(a).second;
    }
  }
  return closure;
}

bool is_key(const std::vector<Dependency>& fds,
            const std::vector<std::string>& scheme,
            const std::vector<std::string>& candidate) {
  std::set<std::string> all = to_set(scheme);
  std::set<std::string> cand = to_set(candidate);
  if (!subset_of(cand, all))
    throw Error(ErrorKind::Schema, "key candidate is not a subset of the scheme");
  if (!subset_of(all, attribute_closure(fds, candidate))) return false;
  // Minimality: dropping any single attribute must lose coverage (closure is
  // monotone, so checking maximal proper subsets suffices).
  for (const auto& drop : cand) {
    std::vector<std::string> reduced;
    for (const auto& a : candidate)
      if (a != drop) reduced.push_back(a);
    if (subset_of(all, attribute_closure(fds, reduced))) return false;
  }
  return true;
}

std::optional<std::vector<std::string>> find_key(
    const std::vector<Dependency>& fds, const std::vector<std::string>& scheme) {
  require_fds(fds, "key search");
  if (scheme.size() > kMaxKeySearchAttrs)
    throw Error(ErrorKind::SizeLimit, "key search supports at most " +
                                          std::to_string(kMaxKeySearchAttrs) + " attributes");
  std::vector<std::string> sorted = scheme;
  std::sort(sorted.begin(), sorted.end());
  std::set<std::string> all = to_set(scheme);

  // Attributes derived by no dependency belong to every key.
  std::set<std::string> mandatory = all;
  for (const auto& d : fds)
    for (const auto& a : d.rhs) mandatory.erase(a);

  const int n = static_cast<int>(sorted.size());
  for (int k = static_cast<int>(mandatory.size()); k < n; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) {
      if (subset_of(all, attribute_closure(fds, {}))) return std::vector<std::string>{};
      continue;
    }
    do {
      std::vector<std::string> candidate;
      candidate.reserve(k);
      for (int i : idx) candidate.push_back(sorted[i]);
      if (!subset_of(mandatory, to_set(candidate))) continue;
      if (subset_of(all, attribute_closure(fds, candidate))) return candidate;
    } while (next_combination(idx, n));
  }
  return std::nullopt;  // only the whole scheme closes itself
}

Decomposition decompose_4nf(const std::vector<std::string>& scheme,
                            const std::vector<Dependency>& deps) {
  std::set<std::string> all = to_set(scheme);
  if (all.size() != scheme.size())
    throw Error(ErrorKind::Schema, "scheme contains duplicate attributes");
  std::vector<Dependency> split = split_singleton_rhs(deps);
  for (const auto& d : split) {
    for (const auto& a : d.lhs)
      if (!all.count(a)) throw Error(ErrorKind::Schema, "unknown attribute '" + a + "'");
    if (!all.count(d.rhs[0]))
      throw Error(ErrorKind::Schema, "unknown attribute '" + d.rhs[0] + "'");
  }

  // Orders each attribute subset by the universal scheme.
  std::map<std::string, int> position;
  for (std::size_t i = 0; i < scheme.size(); ++i) position[scheme[i]] = static_cast<int>(i);
  auto ordered = [&position](const std::set<std::string>& s) {
    std::vector<std::string> v(s.begin(), s.end());
    std::sort(v.begin(), v.end(), [&position](const std::string& a, const std::string& b) {
      return position.at(a) < position.at(b);
    });
    return v;
  };

  Decomposition result;

  // A dependency spanning the whole scheme leaves nothing to decompose.
  for (const auto& d : split) {
    std::set<std::string> xa = to_set(d.lhs);
    xa.insert(d.rhs[0]);
    if (xa == all) {
      result.schemes.push_back(scheme);
      return result;
    }
  }

  std::vector<std::set<std::string>> schemes;
  auto add_scheme = [&schemes](std::set<std::string> s) {
    if (std::find(schemes.begin(), schemes.end(), s) == schemes.end())
      schemes.push_back(std::move(s));
  };

  for (const auto& d : split) {
    std::set<std::string> xa = to_set(d.lhs);
    xa.insert(d.rhs[0]);
    add_scheme(std::move(xa));
  }

  std::set<std::string> mentioned;
  for (const auto& d : split) {
    mentioned.insert(d.lhs.begin(), d.lhs.end());
    mentioned.insert(d.rhs[0]);
  }
  for (const auto& a : scheme)
    if (!mentioned.count(a)) add_scheme({a});

  std::vector<Dependency> fds;
  for (const auto& d : split)
    if (d.kind == DependencyKind::Functional) fds.push_back(d);
  std::optional<std::set<std::string>> key;
  if (!fds.empty()) {
    if (auto k = find_key(fds, scheme); k && to_set(*k) != all) {
      key = to_set(*k);
      add_scheme(*key);
    }
  }

  // Subset reduction: drop any scheme contained in another.
  std::vector<bool> keep(schemes.size(), true);
  for (std::size_t i = 0; i < schemes.size(); ++i)
    for (std::size_t j = 0; j < schemes.size(); ++j)
      if (i != j && keep[j] && subset_of(schemes[i], schemes[j]) &&
          (schemes[i] != schemes[j] || i > j))
        keep[i] = false;
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (!keep[i]) continue;
    result.schemes.push_back(ordered(schemes[i]));
    if (key && schemes[i] == *key) result.key_scheme = result.schemes.back();
  }
  return result;
}

bool verify_lossless_join(const Relation& r,
                          const std::vector<std::vector<std::string>>& schemes) {
  if (schemes.empty())
    throw Error(ErrorKind::Schema, "lossless-join test needs at least one scheme");
  std::set<std::string> covered;
  for (const auto& s : schemes) covered.insert(s.begin(), s.end());
  for (const auto& name : r.attribute_names())
    if (!covered.count(name))
      throw Error(ErrorKind::Schema,
                  "schemes do not cover attribute '" + name + "'");

  Relation joined = project(r, schemes[0], ProjectionMode::Set);
  for (std::size_t i = 1; i < schemes.size(); ++i)
    joined = natural_join(joined, project(r, schemes[i], ProjectionMode::Set));

  Relation canonical = reorder_columns(joined, r.attribute_names());
  const Relation distinct = project(r, r.attribute_names(), ProjectionMode::Set);
  if (canonical.distinct_rows() != distinct.distinct_rows()) return false;
  for (const auto& [row, n] : canonical.rows()) {
    (void)n;
    if (!distinct.rows().count(row)) return false;
  }
  return true;
}

bool preserves_fds(const std::vector<Dependency>& fds,
                   const std::vector<std::vector<std::string>>& schemes) {
  require_fds(fds, "dependency preservation");
  // Union of the projections of the dependency set onto each scheme. The
  // projection onto R_i is { S -> closure(S) n R_i : S subset of R_i }.
  std::vector<Dependency> projected;
  for (const auto& ri : schemes) {
    if (ri.size() > kMaxProjectionAttrs)
      throw Error(ErrorKind::SizeLimit, "dependency projection supports at most " +
                                            std::to_string(kMaxProjectionAttrs) +
                                            " attributes per scheme");
    std::set<std::string> members = to_set(ri);
    const std::size_t m = ri.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      std::vector<std::string> s;
      for (std::size_t b = 0; b < m; ++b)
        if (mask & (std::size_t{1} << b)) s.push_back(ri[b]);
      std::set<std::string> closure = attribute_closure(fds, s);
      std::vector<std::string> rhs;
      for (const auto& a : closure)
        if (members.count(a) && !std::count(s.begin(), s.end(), a)) rhs.push_back(a);
      if (!rhs.empty())
        projected.push_back({DependencyKind::Functional, s, rhs});
    }
  }
  for (const auto& d : fds) {
    std::set<std::string> closure = attribute_closure(projected, d.lhs);
    for (const auto& a : d.rhs)
      if (!closure.count(a)) return false;
  }
  return true;
}

}  // namespace relbn
