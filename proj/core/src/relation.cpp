#include "relbn/relation.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace relbn {

namespace {

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out;
}

// Column positions (scheme order) of the given attribute set; rejects
// unknown names and duplicates.
std::vector<int> columns_of(const Relation& r, const std::vector<std::string>& attrs) {
  std::set<int> cols;
  for (const auto& a : attrs) {
    int c = r.attribute_index(a);
    if (!cols.insert(c).second)
      throw Error(ErrorKind::Schema, "duplicate attribute '" + a + "'");
  }
  return {cols.begin(), cols.end()};
}

std::vector<int> slice(const std::vector<int>& row, const std::vector<int>& cols) {
  std::vector<int> out;
  out.reserve(cols.size());
  for (int c : cols) out.push_back(row[c]);
  return out;
}

using CountMap = std::map<std::vector<int>, long long>;

CountMap group_counts(const Relation& r, const std::vector<int>& cols) {
  CountMap m;
  for (const auto& [row, n] : r.rows()) m[slice(row, cols)] += n;
  return m;
}

}  // namespace

Relation::Relation(Scheme scheme) : scheme_(std::move(scheme)) {
  for (std::size_t i = 0; i < scheme_.size(); ++i) {
    const auto& decl = scheme_[i];
    if (decl.name.empty())
      throw Error(ErrorKind::Schema, "empty attribute name in scheme");
    if (decl.domain.empty())
      throw Error(ErrorKind::Schema, "attribute '" + decl.name + "' has an empty domain");
    std::set<std::string> seen(decl.domain.begin(), decl.domain.end());
    if (seen.size() != decl.domain.size())
      throw Error(ErrorKind::Schema, "attribute '" + decl.name + "' has duplicate domain values");
    if (!index_.emplace(decl.name, static_cast<int>(i)).second)
      throw Error(ErrorKind::Schema, "duplicate attribute '" + decl.name + "' in scheme");
    names_.push_back(decl.name);
  }
}

int Relation::attribute_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw Error(ErrorKind::Schema, "unknown attribute '" + name + "'");
  return it->second;
}

bool Relation::has_attribute(const std::string& name) const {
  return index_.count(name) != 0;
}

int Relation::value_index(int column, const std::string& value) const {
  const auto& dom = scheme_[column].domain;
  auto it = std::find(dom.begin(), dom.end(), value);
  if (it == dom.end())
    throw Error(ErrorKind::Schema, "value '" + value + "' is not in the domain of attribute '" +
                                       scheme_[column].name + "'");
  return static_cast<int>(it - dom.begin());
}

const std::string& Relation::value_at(int column, int index) const {
  return scheme_[column].domain[index];
}

void Relation::add_row(const std::vector<std::string>& values, long long count) {
  if (values.size() != scheme_.size())
    throw Error(ErrorKind::Schema, "row has " + std::to_string(values.size()) +
                                       " values, scheme has " + std::to_string(scheme_.size()));
  std::vector<int> row(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    row[i] = value_index(static_cast<int>(i), values[i]);
  add_row_indices(row, count);
}

void Relation::add_row_indices(const std::vector<int>& indices, long long count) {
  if (indices.size() != scheme_.size())
    throw Error(ErrorKind::Schema, "row width does not match scheme");
  if (count <= 0)
    throw Error(ErrorKind::Schema, "row multiplicity must be positive");
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (indices[i] < 0 || indices[i] >= static_cast<int>(scheme_[i].domain.size()))
      throw Error(ErrorKind::Schema, "domain index out of range for attribute '" +
                                         scheme_[i].name + "'");
  rows_[indices] += count;
  total_ += count;
}

std::vector<std::string> Relation::row_values(const std::vector<int>& row) const {
  std::vector<std::string> out;
  out.reserve(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) out.push_back(scheme_[i].domain[row[i]]);
  return out;
}

Relation select(const Relation& r, const std::map<std::string, std::string>& assignment) {
  std::vector<std::pair<int, int>> required;  // (column, value index)
  for (const auto& [name, value] : assignment) {
    int c = r.attribute_index(name);
    required.emplace_back(c, r.value_index(c, value));
  }
  Relation out(r.scheme());
  for (const auto& [row, n] : r.rows()) {
    bool match = true;
    for (const auto& [c, v] : required)
      if (row[c] != v) { match = false; break; }
    if (match) out.add_row_indices(row, n);
  }
  return out;
}

Relation project(const Relation& r, const std::vector<std::string>& attrs,
                 ProjectionMode mode) {
  std::vector<int> cols = columns_of(r, attrs);
  Scheme scheme;
  for (int c : cols) scheme.push_back(r.scheme()[c]);
  Relation out(scheme);
  std::map<std::vector<int>, long long> grouped;
  for (const auto& [row, n] : r.rows()) grouped[slice(row, cols)] += n;
  for (const auto& [row, n] : grouped)
    out.add_row_indices(row, mode == ProjectionMode::Set ? 1 : n);
  return out;
}

Relation natural_join(const Relation& r, const Relation& s) {
  // Shared attributes must agree on name and full domain declaration.
  std::vector<int> shared_r, shared_s;
  for (std::size_t i = 0; i < r.scheme().size(); ++i) {
    const auto& decl = r.scheme()[i];
    if (!s.has_attribute(decl.name)) continue;
    int j = s.attribute_index(decl.name);
    if (!(s.scheme()[j] == decl))
      throw Error(ErrorKind::Schema, "attribute '" + decl.name +
                                         "' has conflicting domain declarations");
    shared_r.push_back(static_cast<int>(i));
    shared_s.push_back(j);
  }
  std::vector<int> only_s;
  Scheme scheme = r.scheme();
  for (std::size_t j = 0; j < s.scheme().size(); ++j)
    if (!r.has_attribute(s.scheme()[j].name)) {
      only_s.push_back(static_cast<int>(j));
      scheme.push_back(s.scheme()[j]);
    }

  // Set semantics: the join is over distinct tuples.
  std::map<std::vector<int>, std::vector<std::vector<int>>> by_key;
  for (const auto& [row, n] : s.rows()) {
    (void)n;
    by_key[slice(row, shared_s)].push_back(slice(row, only_s));
  }
  Relation out(scheme);
  for (const auto& [row, n] : r.rows()) {
    (void)n;
    auto it = by_key.find(slice(row, shared_r));
    if (it == by_key.end()) continue;
    for (const auto& tail : it->second) {
      std::vector<int> combined = row;
      combined.insert(combined.end(), tail.begin(), tail.end());
      Relation& dst = out;
      // avoid double-counting when the same combined row arises repeatedly
      if (!dst.rows().count(combined)) dst.add_row_indices(combined, 1);
    }
  }
  return out;
}

Relation reorder_columns(const Relation& r, const std::vector<std::string>& attrs) {
  if (attrs.size() != r.scheme().size())
    throw Error(ErrorKind::Schema, "column reorder must name every attribute");
  std::vector<int> cols;
  cols.reserve(attrs.size());
  std::set<int> seen;
  for (const auto& a : attrs) {
    int c = r.attribute_index(a);
    if (!seen.insert(c).second)
      throw Error(ErrorKind::Schema, "duplicate attribute '" + a + "'");
    cols.push_back(c);
  }
  Scheme scheme;
  for (int c : cols) scheme.push_back(r.scheme()[c]);
  Relation out(scheme);
  for (const auto& [row, n] : r.rows()) out.add_row_indices(slice(row, cols), n);
  return out;
}

FrequencyTable frequency(const Relation& r, const std::vector<std::string>& attrs) {
  if (r.empty())
    throw Error(ErrorKind::UndefinedFrequency,
                "frequency is undefined on an empty relation");
  std::vector<int> cols = columns_of(r, attrs);
  FrequencyTable table;
  for (int c : cols) table.attrs.push_back(r.scheme()[c].name);
  const double total = static_cast<double>(r.total_count());
  for (const auto& [key, n] : group_counts(r, cols)) {
    std::vector<std::string> values;
    values.reserve(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i)
      values.push_back(r.value_at(cols[i], key[i]));
    table.entries[values] = static_cast<double>(n) / total;
  }
  return table;
}

FrequencyTable cond_frequency(const Relation& r, const std::vector<std::string>& attrs,
                              const std::map<std::string, std::string>& given) {
  Relation matched = select(r, given);
  if (matched.empty()) {
    std::vector<std::string> parts;
    for (const auto& [k, v] : given) parts.push_back(k + "=" + v);
    throw Error(ErrorKind::UndefinedConditional,
                "conditional frequency is undefined: no tuple matches " + join_names(parts));
  }
  return frequency(matched, attrs);
}

bool fd_holds(const Relation& r, const std::vector<std::string>& lhs,
              const std::vector<std::string>& rhs) {
  std::vector<int> x = columns_of(r, lhs);
  std::vector<int> y = columns_of(r, rhs);
  std::map<std::vector<int>, std::vector<int>> image;
  for (const auto& [row, n] : r.rows()) {
    (void)n;
    auto [it, inserted] = image.emplace(slice(row, x), slice(row, y));
    if (!inserted && it->second != slice(row, y)) return false;
  }
  return true;
}

bool md_holds(const Relation& r, const std::vector<std::string>& lhs,
              const std::vector<std::string>& rhs) {
  std::vector<int> x = columns_of(r, lhs);
  std::vector<int> y = columns_of(r, rhs);
  // z = scheme minus lhs minus rhs
  std::set<int> used(x.begin(), x.end());
  used.insert(y.begin(), y.end());
  std::vector<int> z;
  for (std::size_t c = 0; c < r.scheme().size(); ++c)
    if (!used.count(static_cast<int>(c))) z.push_back(static_cast<int>(c));

  // X ->> Y holds iff within every X-group the (Y, Z) projections form a
  // full cross product of the group's Y-values and Z-values.
  struct Group {
    std::set<std::vector<int>> ys, zs;
    std::set<std::pair<std::vector<int>, std::vector<int>>> pairs;
  };
  std::map<std::vector<int>, Group> groups;
  for (const auto& [row, n] : r.rows()) {
    (void)n;
    Group& g = groups[slice(row, x)];
    auto yv = slice(row, y);
    auto zv = slice(row, z);
    g.ys.insert(yv);
    g.zs.insert(zv);
    g.pairs.emplace(std::move(yv), std::move(zv));
  }
  for (const auto& [key, g] : groups) {
    (void)key;
    if (g.pairs.size() != g.ys.size() * g.zs.size()) return false;
  }
  return true;
}

bool pd_holds_wrt(const Relation& r, const std::vector<std::string>& x,
                  const std::vector<std::string>& y,
                  const std::vector<std::string>& z) {
  std::vector<int> cx = columns_of(r, x);
  std::vector<int> cy = columns_of(r, y);
  std::vector<int> cz = columns_of(r, z);
  {
    std::set<int> sy(cy.begin(), cy.end());
    std::set<int> sxy(cx.begin(), cx.end());
    sxy.insert(cy.begin(), cy.end());
    for (int c : cz)
      if (sxy.count(c))
        throw Error(ErrorKind::Schema,
                    "conditioning complement overlaps the tested attribute sets");
  }
  auto unite = [](std::vector<int> a, const std::vector<int>& b) {
    std::set<int> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return std::vector<int>(s.begin(), s.end());
  };
  std::vector<int> cxy = unite(cx, cy);
  std::vector<int> cxz = unite(cx, cz);
  std::vector<int> cxyz = unite(cxy, cz);

  CountMap nx = group_counts(r, cx);
  CountMap nxy = group_counts(r, cxy);
  CountMap nxz = group_counts(r, cxz);
  CountMap nxyz = group_counts(r, cxyz);

  // Positions of the sub-keys inside the xyz key (cxyz is sorted).
  auto positions = [&cxyz](const std::vector<int>& cols) {
    std::vector<int> pos;
    for (int c : cols) {
      auto it = std::lower_bound(cxyz.begin(), cxyz.end(), c);
      pos.push_back(static_cast<int>(it - cxyz.begin()));
    }
    return pos;
  };
  std::vector<int> px = positions(cx), pxy = positions(cxy), pxz = positions(cxz);

  for (const auto& [key, n] : nxyz) {
    auto sub = [&key](const std::vector<int>& pos) {
      std::vector<int> out;
      out.reserve(pos.size());
      for (int p : pos) out.push_back(key[p]);
      return out;
    };
    // Exact integer identity; 128-bit products guard against overflow.
    __int128 lhs_prod = static_cast<__int128>(n) * nx[sub(px)];
    __int128 rhs_prod = static_cast<__int128>(nxy[sub(pxy)]) * nxz[sub(pxz)];
    if (lhs_prod != rhs_prod) return false;
  }
  return true;
}

bool pd_holds(const Relation& r, const std::vector<std::string>& lhs,
              const std::vector<std::string>& rhs) {
  std::set<std::string> used(lhs.begin(), lhs.end());
  used.insert(rhs.begin(), rhs.end());
  std::vector<std::string> z;
  for (const auto& name : r.attribute_names())
    if (!used.count(name)) z.push_back(name);
  return pd_holds_wrt(r, lhs, rhs, z);
}

}  // namespace relbn
