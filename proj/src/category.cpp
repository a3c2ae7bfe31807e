#include "nalab/category.hpp"

#include <charconv>
#include <numeric>

#include "nalab/error.hpp"

namespace nalab {

std::uint32_t CategoryPresentation::mul(std::uint32_t g, std::uint32_t h) const {
  auto r = compose.at(g).at(h);
  if (r < 0)
    throw Error(ErrorCode::InvalidArgument, "morphisms are not composable", nlohmann::json::array({g, h}));
  return static_cast<std::uint32_t>(r);
}

bool CategoryPresentation::is_identity(std::uint32_t g) const { return identity.at(cod.at(g)) == g; }

bool CategoryPresentation::is_connected() const {
  const auto n = objects.size();
  if (n == 0) return true;
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t g = 0; g < morphisms.size(); ++g) parent[find(dom[g])] = find(cod[g]);
  for (std::uint32_t e = 1; e < n; ++e)
    if (find(e) != find(0)) return false;
  return true;
}

std::vector<std::uint32_t> CategoryPresentation::vertex_group(std::uint32_t e) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t g = 0; g < morphisms.size(); ++g)
    if (dom[g] == e && cod[g] == e) out.push_back(g);
  return out;
}

bool CategoryPresentation::is_locally_abelian() const {
  for (std::uint32_t e = 0; e < objects.size(); ++e) {
    auto ge = vertex_group(e);
    for (auto g : ge)
      for (auto h : ge)
        if (compose[g][h] != compose[h][g]) return false;
  }
  return true;
}

void CategoryPresentation::validate() {
  const auto m = morphisms.size();
  const auto n = objects.size();
  if (dom.size() != m || cod.size() != m || compose.size() != m || identity.size() != n)
    throw Error(ErrorCode::ShapeMismatch, "category presentation has inconsistent sizes");
  for (std::uint32_t g = 0; g < m; ++g) {
    if (dom[g] >= n || cod[g] >= n) throw Error(ErrorCode::ShapeMismatch, "object index out of range");
    if (compose[g].size() != m) throw Error(ErrorCode::ShapeMismatch, "composition table must be square");
    for (std::uint32_t h = 0; h < m; ++h) {
      const bool ok = dom[g] == cod[h];
      const auto r = compose[g][h];
      if (ok != (r >= 0))
        throw Error(ErrorCode::ValidationFailure, "composition must be defined exactly when d(g) = c(h)",
                    nlohmann::json::array({g, h}));
      if (r >= 0) {
        if (static_cast<std::size_t>(r) >= m) throw Error(ErrorCode::ShapeMismatch, "composite out of range");
        if (dom[r] != dom[h] || cod[r] != cod[g])
          throw Error(ErrorCode::ValidationFailure, "composite has wrong domain or codomain",
                      nlohmann::json::array({g, h}));
      }
    }
  }
  for (std::uint32_t e = 0; e < n; ++e) {
    const auto id = identity[e];
    if (id >= m || dom[id] != e || cod[id] != e)
      throw Error(ErrorCode::ValidationFailure, "identity morphism has wrong endpoints", e);
    for (std::uint32_t g = 0; g < m; ++g) {
      if (cod[g] == e && compose[id][g] != static_cast<std::int32_t>(g))
        throw Error(ErrorCode::ValidationFailure, "identity is not neutral", nlohmann::json::array({id, g}));
      if (dom[g] == e && compose[g][id] != static_cast<std::int32_t>(g))
        throw Error(ErrorCode::ValidationFailure, "identity is not neutral", nlohmann::json::array({g, id}));
    }
  }
  for (std::uint32_t f = 0; f < m; ++f)
    for (std::uint32_t g = 0; g < m; ++g) {
      if (compose[f][g] < 0) continue;
      for (std::uint32_t h = 0; h < m; ++h) {
        if (compose[g][h] < 0) continue;
        if (compose[compose[f][g]][h] != compose[f][compose[g][h]])
          throw Error(ErrorCode::ValidationFailure, "composition is not associative",
                      nlohmann::json::array({f, g, h}));
      }
    }
  std::vector<std::int32_t> inv(m, -1);
  for (std::uint32_t g = 0; g < m; ++g)
    for (std::uint32_t h = 0; h < m; ++h)
      if (compose[g][h] >= 0 && static_cast<std::uint32_t>(compose[g][h]) == identity[cod[g]] &&
          compose[h][g] >= 0 && static_cast<std::uint32_t>(compose[h][g]) == identity[dom[g]]) {
        inv[g] = static_cast<std::int32_t>(h);
        break;
      }
  inverse.clear();
  for (auto x : inv)
    if (x < 0) return;
  inverse = std::move(inv);
}

nlohmann::json CategoryPresentation::to_json() const {
  return {{"objects", objects.size()},
          {"morphisms", morphisms},
          {"groupoid", is_groupoid()},
          {"connected", is_connected()},
          {"locally_abelian", is_locally_abelian()}};
}

CategoryPresentation CategoryPresentation::from_group_table(const std::vector<std::vector<std::uint32_t>>& table,
                                                            std::vector<std::string> names) {
  const auto m = table.size();
  if (m == 0) throw Error(ErrorCode::ShapeMismatch, "empty group table");
  CategoryPresentation c;
  c.objects = {"*"};
  if (names.empty())
    for (std::size_t g = 0; g < m; ++g) names.push_back(std::to_string(g));
  c.morphisms = std::move(names);
  c.dom.assign(m, 0);
  c.cod.assign(m, 0);
  c.identity = {0};
  c.compose.assign(m, std::vector<std::int32_t>(m));
  for (std::size_t g = 0; g < m; ++g) {
    if (table[g].size() != m) throw Error(ErrorCode::ShapeMismatch, "group table must be square");
    for (std::size_t h = 0; h < m; ++h) {
      if (table[g][h] >= m) throw Error(ErrorCode::ShapeMismatch, "group table entry out of range");
      c.compose[g][h] = static_cast<std::int32_t>(table[g][h]);
    }
  }
  c.validate();
  if (!c.is_groupoid()) throw Error(ErrorCode::ValidationFailure, "table is not a group (element 0 must be the identity)");
  return c;
}

CategoryPresentation CategoryPresentation::cyclic_group(std::uint32_t n) { return abelian_group({n}); }

CategoryPresentation CategoryPresentation::abelian_group(const std::vector<std::uint32_t>& orders) {
  std::uint32_t m = 1;
  for (auto o : orders) {
    if (o == 0) throw Error(ErrorCode::InvalidArgument, "group order must be positive");
    m *= o;
  }
  if (m > 4096) throw Error(ErrorCode::TooLarge, "group too large");
  auto digits = [&](std::uint32_t x) {
    std::vector<std::uint32_t> d;
    for (auto o : orders) {
      d.push_back(x % o);
      x /= o;
    }
    return d;
  };
  std::vector<std::vector<std::uint32_t>> table(m, std::vector<std::uint32_t>(m));
  std::vector<std::string> names;
  for (std::uint32_t g = 0; g < m; ++g) {
    auto dg = digits(g);
    std::string name;
    for (std::size_t i = 0; i < dg.size(); ++i) name += (i ? "," : "") + std::to_string(dg[i]);
    names.push_back(orders.size() > 1 ? "(" + name + ")" : name);
    for (std::uint32_t h = 0; h < m; ++h) {
      auto dh = digits(h);
      std::uint32_t r = 0, mult = 1;
      for (std::size_t i = 0; i < orders.size(); ++i) {
        r += ((dg[i] + dh[i]) % orders[i]) * mult;
        mult *= orders[i];
      }
      table[g][h] = r;
    }
  }
  return from_group_table(table, std::move(names));
}

CategoryPresentation CategoryPresentation::xor_group(std::uint32_t bits) {
  if (bits > 12) throw Error(ErrorCode::TooLarge, "XOR group too large");
  const std::uint32_t m = 1u << bits;
  std::vector<std::vector<std::uint32_t>> table(m, std::vector<std::uint32_t>(m));
  for (std::uint32_t g = 0; g < m; ++g)
    for (std::uint32_t h = 0; h < m; ++h) table[g][h] = g ^ h;
  return from_group_table(table);
}

CategoryPresentation CategoryPresentation::pair_groupoid(std::uint32_t n) {
  if (n == 0 || n > 64) throw Error(ErrorCode::InvalidArgument, "pair groupoid needs 1..64 objects");
  CategoryPresentation c;
  const std::uint32_t m = n * n;
  for (std::uint32_t i = 0; i < n; ++i) {
    c.objects.push_back(std::to_string(i));
    c.identity.push_back(i * n + i);
  }
  c.compose.assign(m, std::vector<std::int32_t>(m, -1));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      c.morphisms.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
      c.cod.push_back(i);
      c.dom.push_back(j);
    }
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k) c.compose[i * n + j][j * n + k] = static_cast<std::int32_t>(i * n + k);
  c.validate();
  return c;
}

CategoryPresentation CategoryPresentation::disjoint_union(const CategoryPresentation& a, const CategoryPresentation& b) {
  CategoryPresentation c;
  const auto na = static_cast<std::uint32_t>(a.objects.size());
  const auto ma = static_cast<std::uint32_t>(a.morphisms.size());
  const auto m = ma + static_cast<std::uint32_t>(b.morphisms.size());
  for (const auto& o : a.objects) c.objects.push_back("a." + o);
  for (const auto& o : b.objects) c.objects.push_back("b." + o);
  for (const auto& g : a.morphisms) c.morphisms.push_back("a." + g);
  for (const auto& g : b.morphisms) c.morphisms.push_back("b." + g);
  for (std::uint32_t g = 0; g < ma; ++g) {
    c.dom.push_back(a.dom[g]);
    c.cod.push_back(a.cod[g]);
  }
  for (std::uint32_t g = 0; g < b.morphisms.size(); ++g) {
    c.dom.push_back(b.dom[g] + na);
    c.cod.push_back(b.cod[g] + na);
  }
  for (auto id : a.identity) c.identity.push_back(id);
  for (auto id : b.identity) c.identity.push_back(id + ma);
  c.compose.assign(m, std::vector<std::int32_t>(m, -1));
  for (std::uint32_t g = 0; g < ma; ++g)
    for (std::uint32_t h = 0; h < ma; ++h) c.compose[g][h] = a.compose[g][h];
  for (std::uint32_t g = 0; g < b.morphisms.size(); ++g)
    for (std::uint32_t h = 0; h < b.morphisms.size(); ++h)
      c.compose[g + ma][h + ma] = b.compose[g][h] < 0 ? -1 : b.compose[g][h] + static_cast<std::int32_t>(ma);
  c.validate();
  return c;
}

namespace {

std::uint32_t parse_count(std::string_view s, const std::string& whole) {
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v == 0)
    throw Error(ErrorCode::InvalidArgument, "bad group spec '" + whole + "'");
  return v;
}

}  // namespace

CategoryPresentation CategoryPresentation::parse(const std::string& text) {
  if (text.rfind("XOR", 0) == 0) return xor_group(parse_count(std::string_view(text).substr(3), text));
  if (text.rfind("pair", 0) == 0) return pair_groupoid(parse_count(std::string_view(text).substr(4), text));
  std::vector<std::uint32_t> orders;
  std::string_view rest = text;
  while (!rest.empty()) {
    if (rest.front() != 'Z') throw Error(ErrorCode::InvalidArgument, "bad group spec '" + text + "'");
    rest.remove_prefix(1);
    auto x = rest.find('x');
    orders.push_back(parse_count(rest.substr(0, x), text));
    if (x == std::string_view::npos) break;
    rest.remove_prefix(x + 1);
  }
  if (orders.empty()) throw Error(ErrorCode::InvalidArgument, "bad group spec '" + text + "'");
  return abelian_group(orders);
}

}  // namespace nalab
