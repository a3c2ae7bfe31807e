#include "nalab/recipe.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace nalab {

namespace {

using json = nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, "recipe " + (path.empty() ? std::string("/") : path) + ": " + what,
              {{"path", path.empty() ? "/" : path}});
}

const std::set<std::string>& known_kinds() {
  static const std::set<std::string> k{"scalar",          "table_ring",    "structure_algebra",
                                       "cayley_dickson",  "cayley_tower",  "twisted_group_ring",
                                       "skew_group_ring", "crossed_product", "matrix_ring",
                                       "ore_extension",   "dynamics"};
  return k;
}

const json& field(const json& node, const std::string& path, const std::string& key) {
  if (!node.contains(key)) schema_error(path + "/" + key, "missing required field");
  return node.at(key);
}

void require_string(const json& node, const std::string& path, const std::string& key) {
  if (!field(node, path, key).is_string()) schema_error(path + "/" + key, "expected a string");
}

void require_uint(const json& node, const std::string& path, const std::string& key, std::uint64_t lo, std::uint64_t hi) {
  const auto& v = field(node, path, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    schema_error(path + "/" + key, "expected a non-negative integer");
  const auto x = v.get<std::uint64_t>();
  if (x < lo || x > hi)
    schema_error(path + "/" + key, "expected a value in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

bool is_scalar_json(const json& v) { return v.is_number_integer() || v.is_string(); }

void require_scalar_matrix(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected a matrix (array of rows)");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array()) schema_error(path + "/" + std::to_string(i), "expected a row");
    for (std::size_t j = 0; j < v[i].size(); ++j)
      if (!is_scalar_json(v[i][j])) schema_error(path + "/" + std::to_string(i) + "/" + std::to_string(j), "expected a scalar");
  }
}

void require_int_matrix(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array of integer rows");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array()) schema_error(path + "/" + std::to_string(i), "expected a row");
    for (std::size_t j = 0; j < v[i].size(); ++j)
      if (!v[i][j].is_number_integer() || v[i][j].get<long long>() < 0)
        schema_error(path + "/" + std::to_string(i) + "/" + std::to_string(j), "expected a non-negative integer");
  }
}

void validate_node(const json& node, const std::string& path);

void validate_base(const json& node, const std::string& path) {
  const auto& b = field(node, path, "base");
  if (b.is_string()) return;  // scalar shorthand
  validate_node(b, path + "/base");
}

void validate_map(const json& v, const std::string& path, std::initializer_list<const char*> names) {
  if (v.is_string()) {
    for (const char* n : names)
      if (v == n) return;
    schema_error(path, "unknown map name");
  }
  require_scalar_matrix(v, path);
}

void validate_action(const json& v, const std::string& path) {
  if (v.is_string()) {
    if (v != "frobenius" && v != "identity" && v != "swap") schema_error(path, "unknown action name");
    return;
  }
  if (!v.is_array()) schema_error(path, "expected an action name or one matrix per group element");
  for (std::size_t i = 0; i < v.size(); ++i) validate_map(v[i], path + "/" + std::to_string(i), {"identity", "frobenius", "swap"});
}

void validate_node(const json& node, const std::string& path) {
  if (!node.is_object()) schema_error(path, "expected an object");
  if (!node.contains("kind")) schema_error(path + "/kind", "missing required field");
  if (!node["kind"].is_string()) schema_error(path + "/kind", "expected a string");
  const std::string kind = node["kind"];
  if (!known_kinds().count(kind))
    throw Error(ErrorCode::UnknownKind, "unknown recipe kind '" + kind + "'", {{"path", path + "/kind"}, {"kind", kind}});
  if (kind == "scalar") {
    require_string(node, path, "ring");
  } else if (kind == "table_ring") {
    require_int_matrix(field(node, path, "add"), path + "/add");
    require_int_matrix(field(node, path, "mul"), path + "/mul");
    if (node.contains("zero")) require_uint(node, path, "zero", 0, 1u << 20);
  } else if (kind == "structure_algebra") {
    require_string(node, path, "field");
    require_uint(node, path, "dim", 1, 256);
    const auto& c = field(node, path, "constants");
    const auto d = node["dim"].get<std::size_t>();
    if (!c.is_array() || c.size() != d) schema_error(path + "/constants", "expected dim x dim x dim scalars");
    for (std::size_t i = 0; i < d; ++i) {
      const std::string pi = path + "/constants/" + std::to_string(i);
      if (!c[i].is_array() || c[i].size() != d) schema_error(pi, "expected dim rows");
      for (std::size_t j = 0; j < d; ++j) {
        const std::string pj = pi + "/" + std::to_string(j);
        if (!c[i][j].is_array() || c[i][j].size() != d) schema_error(pj, "expected dim scalars");
        for (std::size_t k = 0; k < d; ++k)
          if (!is_scalar_json(c[i][j][k])) schema_error(pj + "/" + std::to_string(k), "expected a scalar");
      }
    }
  } else if (kind == "cayley_dickson") {
    validate_base(node, path);
    if (!is_scalar_json(field(node, path, "alpha"))) schema_error(path + "/alpha", "expected a scalar");
    if (node.contains("sigma")) validate_map(node["sigma"], path + "/sigma", {"conjugation", "identity", "swap"});
    if (node.contains("flavor") && node["flavor"] != "classical" && node["flavor"] != "custom")
      schema_error(path + "/flavor", "expected classical or custom");
    if (node.contains("twists")) {
      const auto& t = node["twists"];
      if (!t.is_object()) schema_error(path + "/twists", "expected an object");
      for (auto it = t.begin(); it != t.end(); ++it) {
        if (it.key() != "ee" && it.key() != "eg" && it.key() != "ge" && it.key() != "gg")
          schema_error(path + "/twists/" + it.key(), "unknown twist selector");
        if (it.value() != "straight" && it.value() != "opposite")
          schema_error(path + "/twists/" + it.key(), "expected straight or opposite");
      }
    }
  } else if (kind == "cayley_tower") {
    require_string(node, path, "base");
    require_uint(node, path, "levels", 0, kTowerCapFinite);
    if (node.contains("alpha")) {
      const auto& a = node["alpha"];
      if (!a.is_array() || a.size() != node["levels"].get<std::size_t>())
        schema_error(path + "/alpha", "expected one scalar per level");
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!is_scalar_json(a[i])) schema_error(path + "/alpha/" + std::to_string(i), "expected a scalar");
    }
  } else if (kind == "twisted_group_ring") {
    validate_base(node, path);
    const auto& c = field(node, path, "cocycle");
    if (c.is_string()) {
      const std::string s = c;
      if (s.rfind("bales:", 0) != 0) schema_error(path + "/cocycle", "expected \"bales:<n>\" or a table");
    } else {
      require_string(node, path, "group");
      require_scalar_matrix(c, path + "/cocycle");
    }
  } else if (kind == "skew_group_ring" || kind == "crossed_product") {
    validate_base(node, path);
    require_string(node, path, "group");
    validate_action(field(node, path, "action"), path + "/action");
    if (node.contains("cocycle")) require_scalar_matrix(node["cocycle"], path + "/cocycle");
  } else if (kind == "matrix_ring") {
    validate_base(node, path);
    require_uint(node, path, "n", 1, 8);
    if (node.contains("grading") && node["grading"] != "pair" && node["grading"] != "parity")
      schema_error(path + "/grading", "expected pair or parity");
  } else if (kind == "ore_extension") {
    validate_base(node, path);
    if (node.contains("sigma")) validate_map(node["sigma"], path + "/sigma", {"identity", "frobenius", "swap"});
    if (node.contains("delta"))
      validate_map(node["delta"], path + "/delta", {"zero", "derivative", "sigma-minus-identity"});
  } else if (kind == "dynamics") {
    require_uint(node, path, "points", 1, 64);
    require_string(node, path, "group");
    require_string(node, path, "field");
    require_int_matrix(field(node, path, "action"), path + "/action");
  }
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// ---- construction -------------------------------------------------------

struct ScalarRing {
  Ring ring;
  std::optional<ScalarSpec> spec;
  std::optional<RingMap> frobenius;
  std::optional<RingMap> derivative;
};

ScalarRing scalar_ring(const std::string& text, const std::string& path) {
  try {
    // Fp:p[y]/y^k
    if (auto br = text.find("[y]/y^"); br != std::string::npos) {
      ScalarSpec f = ScalarSpec::parse(text.substr(0, br));
      const auto k = static_cast<std::uint32_t>(std::stoul(text.substr(br + 6)));
      auto t = truncated_polynomials(f, k);
      return {t.ring, std::nullopt, std::nullopt, t.derivative};
    }
    if (text.size() > 1 && text[0] == 'F' && std::isdigit(static_cast<unsigned char>(text[1]))) {
      const auto q = static_cast<std::uint32_t>(std::stoul(text.substr(1)));
      std::uint32_t p = 2;
      while (p <= q && q % p != 0) ++p;
      std::uint32_t k = 0;
      for (std::uint32_t x = q; x > 1; x /= p) {
        if (x % p != 0) schema_error(path, "F<q> needs a prime power");
        ++k;
      }
      if (k == 1) {
        ScalarSpec f = ScalarSpec::modular(q);
        return {scalar_algebra(f), f, RingMap::identity(scalar_algebra(f)), std::nullopt};
      }
      auto ff = finite_field(p, k);
      return {ff.ring, std::nullopt, ff.frobenius, std::nullopt};
    }
    ScalarSpec f = ScalarSpec::parse(text);
    if (f.is_finite() && !f.is_field()) return {Ring::integers_mod(f.modulus()), f, std::nullopt, std::nullopt};
    return {scalar_algebra(f), f, std::nullopt, std::nullopt};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    schema_error(path, std::string("bad scalar spec '") + text + "': " + e.what());
  } catch (const std::exception&) {
    schema_error(path, "bad scalar spec '" + text + "'");
  }
}

Scalar scalar_of(const ScalarSpec& f, const json& v) {
  if (v.is_string()) return Scalar::parse(f, v.get<std::string>());
  return Scalar::from_int(f, v.get<long long>());
}

Matrix matrix_of(const ScalarSpec& f, const json& v, std::size_t d, const std::string& path) {
  if (v.size() != d) schema_error(path, "expected a " + std::to_string(d) + " x " + std::to_string(d) + " matrix");
  Matrix m;
  for (std::size_t i = 0; i < d; ++i) {
    if (v[i].size() != d) schema_error(path + "/" + std::to_string(i), "expected " + std::to_string(d) + " entries");
    Vec row;
    for (std::size_t j = 0; j < d; ++j) row.push_back(scalar_of(f, v[i][j]));
    m.push_back(std::move(row));
  }
  return m;
}

Construction trivially_graded(const Ring& r, const std::string& what) {
  auto triv = CategoryPresentation::cyclic_group(1);
  Grading g = validate_grading(r, triv, {Span::full(r)});
  return Construction{r, g, std::nullopt, {0}, {}, {{"construction", what}}};
}

Built build_node(const json& node, const std::string& path);

Built base_of(const json& node, const std::string& path) {
  const auto& b = node.at("base");
  if (b.is_string()) return build_node(json{{"kind", "scalar"}, {"ring", b}}, path + "/base");
  return build_node(b, path + "/base");
}

// Construction bases must be structure algebras; Z/nZ scalars are converted.
Ring algebra_of(const Built& b, const std::string& path) {
  if (b.ring().is_algebra()) return b.ring();
  if (b.scalar) return scalar_algebra(*b.scalar);
  schema_error(path, "construction bases must be structure algebras");
}

RingMap named_map(const Built& base, const Ring& b, const json& v, const std::string& path) {
  if (v.is_string()) {
    const std::string s = v;
    if (s == "identity") return RingMap::identity(b);
    if (s == "frobenius") {
      if (!base.frobenius) schema_error(path, "the base has no Frobenius automorphism");
      return *base.frobenius;
    }
    if (s == "conjugation") {
      if (base.conjugation) return *base.conjugation;
      if (b.dim() == 1) return RingMap{identity_matrix(b.field(), 1), MapKind::AntiHomomorphism};
      schema_error(path, "the base carries no conjugation");
    }
    if (s == "swap") {
      if (b.dim() % 2 != 0) schema_error(path, "swap needs a product of two equal factors");
      Matrix m(b.dim(), zero_vec(b.field(), b.dim()));
      const auto h = b.dim() / 2;
      for (std::size_t i = 0; i < h; ++i) {
        m[h + i][i] = Scalar::one(b.field());
        m[i][h + i] = Scalar::one(b.field());
      }
      return RingMap{m, MapKind::Homomorphism};
    }
    schema_error(path, "unknown map '" + s + "'");
  }
  return RingMap{matrix_of(b.field(), v, b.dim(), path), MapKind::Homomorphism};
}

std::vector<RingMap> action_of(const Built& base, const Ring& b, const CategoryPresentation& g, const json& v,
                               const std::string& path) {
  const auto m = g.num_morphisms();
  std::vector<RingMap> out;
  if (v.is_string()) {
    if (v == "identity") return std::vector<RingMap>(m, RingMap::identity(b));
    if (v == "frobenius" || v == "swap") {
      // The generator acts by the named map; element k of a cyclic group by its k-th power.
      RingMap gen = named_map(base, b, v, path);
      RingMap cur = RingMap::identity(b);
      for (std::size_t k = 0; k < m; ++k) {
        out.push_back(cur);
        cur = compose_maps(gen, cur);
      }
      return out;
    }
  }
  if (v.size() != m) schema_error(path, "expected one map per group element");
  for (std::size_t k = 0; k < m; ++k) out.push_back(named_map(base, b, v[k], path + "/" + std::to_string(k)));
  return out;
}

CategoryPresentation group_of(const json& node, const std::string& path) {
  try {
    return CategoryPresentation::parse(node.at("group").get<std::string>());
  } catch (const Error& e) {
    schema_error(path + "/group", e.what());
  }
}

Built from_construction(std::string kind, Construction c) {
  return Built{std::move(kind), std::move(c), std::nullopt, {}, std::nullopt, nullptr,
               std::nullopt, std::nullopt, std::nullopt, std::nullopt};
}

Built build_node(const json& node, const std::string& path) {
  const std::string kind = node.at("kind");
  if (kind == "scalar") {
    auto s = scalar_ring(node.at("ring").get<std::string>(), path + "/ring");
    Built b = from_construction(kind, trivially_graded(s.ring, "scalar"));
    b.scalar = s.spec;
    b.frobenius = s.frobenius;
    b.derivative = s.derivative;
    return b;
  }
  if (kind == "table_ring") {
    auto add = node.at("add").get<std::vector<std::vector<std::uint32_t>>>();
    auto mul = node.at("mul").get<std::vector<std::vector<std::uint32_t>>>();
    Ring r = Ring::make_table(std::move(add), std::move(mul), node.value("zero", 0u), node.value("name", "table ring"));
    return from_construction(kind, trivially_graded(r, "table_ring"));
  }
  if (kind == "structure_algebra") {
    ScalarSpec f = ScalarSpec::parse(node.at("field").get<std::string>());
    const auto d = node.at("dim").get<std::size_t>();
    DenseConstants c(d, std::vector<Vec>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) c[i][j].push_back(scalar_of(f, node["constants"][i][j][k]));
    Ring r = Ring::make_algebra(f, d, c, node.value("name", "algebra"));
    return from_construction(kind, trivially_graded(r, "structure_algebra"));
  }
  if (kind == "cayley_dickson") {
    Built base = base_of(node, path);
    Ring b = algebra_of(base, path + "/base");
    RingMap sigma = named_map(base, b, node.value("sigma", json("conjugation")), path + "/sigma");
    sigma.kind = MapKind::AntiHomomorphism;
    const auto& u = b.probe().unit;
    if (!u) schema_error(path + "/base", "the base ring is not unital");
    Element alpha = b.scalar(scalar_of(b.field(), node.at("alpha")), *u);
    CayleyFlavor flavor = node.value("flavor", "classical") == "custom" ? CayleyFlavor::Custom : CayleyFlavor::Classical;
    CayleyTwists tw;
    if (node.contains("twists")) {
      auto pick = [&](const char* key, Twist def) {
        if (!node["twists"].contains(key)) return def;
        return node["twists"][key] == "opposite" ? Twist::Opposite : Twist::Straight;
      };
      tw = CayleyTwists{pick("ee", tw.ee), pick("eg", tw.eg), pick("ge", tw.ge), pick("gg", tw.gg)};
    }
    auto res = cayley_dickson(b, sigma, alpha, flavor, tw, node.value("name", std::string()));
    Built out = from_construction(kind, res.construction);
    out.conjugation = res.extended_sigma;
    out.cayley = std::move(res);
    return out;
  }
  if (kind == "cayley_tower") {
    auto s = scalar_ring(node.at("base").get<std::string>(), path + "/base");
    if (!s.spec) schema_error(path + "/base", "a tower starts from Q or F_p");
    std::vector<Scalar> alphas;
    if (node.contains("alpha"))
      for (const auto& a : node["alpha"]) alphas.push_back(scalar_of(*s.spec, a));
    auto tower = cayley_tower(*s.spec, node.at("levels").get<std::uint32_t>(), alphas);
    Built out = from_construction(kind, tower.back().construction);
    out.conjugation = tower.back().extended_sigma;
    if (tower.size() > 1) out.cayley = tower.back();
    out.tower = std::move(tower);
    return out;
  }
  if (kind == "twisted_group_ring") {
    const auto& c = node.at("cocycle");
    if (c.is_string()) {
      const std::string s = c;
      const auto n = static_cast<std::uint32_t>(std::stoul(s.substr(6)));
      Built base = base_of(node, path);
      Ring b = algebra_of(base, path + "/base");
      if (b.dim() != 1) schema_error(path + "/base", "the Bales cocycle needs a scalar base");
      return from_construction(kind, bales_twisted_group_ring(b.field(), n));
    }
    Built base = base_of(node, path);
    Ring b = algebra_of(base, path + "/base");
    auto g = group_of(node, path);
    const auto m = g.num_morphisms();
    if (c.size() != m) schema_error(path + "/cocycle", "expected one row per group element");
    const auto& u = b.probe().unit;
    if (!u) schema_error(path + "/base", "the base ring is not unital");
    std::vector<std::vector<Element>> alpha(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (c[i].size() != m) schema_error(path + "/cocycle/" + std::to_string(i), "expected one entry per group element");
      for (std::size_t j = 0; j < m; ++j) alpha[i].push_back(b.scalar(scalar_of(b.field(), c[i][j]), *u));
    }
    return from_construction(kind, twisted_group_ring(b, g, alpha));
  }
  if (kind == "skew_group_ring" || kind == "crossed_product") {
    Built base = base_of(node, path);
    Ring b = algebra_of(base, path + "/base");
    auto g = group_of(node, path);
    auto act = action_of(base, b, g, node.at("action"), path + "/action");
    if (kind == "skew_group_ring" && !node.contains("cocycle")) return from_construction(kind, skew_group_ring(b, g, act));
    CrossedSystem sys{g, {b}, act, {}, {}, node.value("name", "crossed product")};
    if (node.contains("cocycle")) {
      const auto& c = node["cocycle"];
      const auto m = g.num_morphisms();
      const auto& u = b.probe().unit;
      if (!u) schema_error(path + "/base", "the base ring is not unital");
      if (c.size() != m) schema_error(path + "/cocycle", "expected one row per group element");
      for (std::uint32_t i = 0; i < m; ++i) {
        if (c[i].size() != m) schema_error(path + "/cocycle/" + std::to_string(i), "expected one entry per group element");
        for (std::uint32_t j = 0; j < m; ++j) sys.alpha.emplace(std::pair{i, j}, b.scalar(scalar_of(b.field(), c[i][j]), *u));
      }
    }
    return from_construction(kind, crossed_product(sys));
  }
  if (kind == "matrix_ring") {
    Built base = base_of(node, path);
    Ring b = algebra_of(base, path + "/base");
    const auto n = node.at("n").get<std::uint32_t>();
    if (node.value("grading", "pair") == "parity") {
      if (n != 3) schema_error(path + "/n", "the parity grading is defined for n = 3");
      return from_construction(kind, m3_parity_grading(b));
    }
    return from_construction(kind, matrix_ring(b, n));
  }
  if (kind == "ore_extension") {
    Built base = base_of(node, path);
    Ring b = algebra_of(base, path + "/base");
    RingMap sigma = named_map(base, b, node.value("sigma", json("identity")), path + "/sigma");
    Matrix delta;
    const json dv = node.value("delta", json("zero"));
    if (dv == "zero") {
      delta = Matrix(b.dim(), zero_vec(b.field(), b.dim()));
    } else if (dv == "derivative") {
      if (!base.derivative) schema_error(path + "/delta", "the base has no derivative");
      delta = base.derivative->matrix;
    } else if (dv == "sigma-minus-identity") {
      delta = sigma.matrix;
      for (std::size_t i = 0; i < b.dim(); ++i) delta[i][i] -= Scalar::one(b.field());
    } else {
      delta = matrix_of(b.field(), dv, b.dim(), path + "/delta");
    }
    auto data = std::make_shared<SigmaDerivationData>(SigmaDerivationData{b, sigma.matrix, delta});
    auto rep = validate_sigma_derivation(*data);
    if (!rep.ok) throw Error(ErrorCode::ValidationFailure, "invalid sigma-derivation", rep.to_json());
    Built out = from_construction(kind, trivially_graded(b, "ore_extension base"));
    out.ore = std::move(data);
    return out;
  }
  if (kind == "dynamics") {
    auto g = group_of(node, path);
    ScalarSpec f = ScalarSpec::parse(node.at("field").get<std::string>());
    auto act = node.at("action").get<std::vector<std::vector<std::uint32_t>>>();
    auto d = dynamics_skew_group_ring(node.at("points").get<std::uint32_t>(), g, act, f);
    Built out = from_construction(kind, d.construction);
    out.dynamics = std::move(d);
    return out;
  }
  throw Error(ErrorCode::UnknownKind, "unknown recipe kind '" + kind + "'", {{"path", path + "/kind"}, {"kind", kind}});
}

// ---- commands -----------------------------------------------------------

json probe_json(const Ring& r) {
  const auto& p = r.probe();
  json j{{"associative", to_string(p.associative)}, {"commutative", to_string(p.commutative)}, {"unital", to_string(p.unital)}};
  if (p.associativity_witness) {
    auto w = json::array();
    for (const auto& e : *p.associativity_witness) w.push_back(r.element_json(e));
    j["associativity_witness"] = w;
  }
  if (p.commutativity_witness) {
    auto w = json::array();
    for (const auto& e : *p.commutativity_witness) w.push_back(r.element_json(e));
    j["commutativity_witness"] = w;
  }
  if (p.unit) j["unit"] = r.element_json(*p.unit);
  return j;
}

json grading_summary(const Grading& gr, const Limits& lim) {
  auto sizes = json::array();
  for (const auto& c : gr.components()) sizes.push_back(c.is_linear() ? c.dim() : c.order());
  json j{{"category", gr.category().to_json()}, {"component_sizes", sizes}};
  j["flags"] = grading_flags(gr, lim).to_json(gr.ring());
  return j;
}

json build_summary(const Built& b, const RunOptions& opts) {
  const Ring& r = b.ring();
  json j{{"kind", b.kind}, {"name", r.name()}};
  if (r.is_algebra()) {
    j["field"] = r.field().to_string();
    j["dimension"] = r.dim();
  }
  j["size"] = r.is_finite() ? json(r.cardinality()) : json("infinite");
  j["properties"] = probe_json(r);
  j["grading"] = grading_summary(b.construction.grading, opts.limits);
  if (!b.construction.warnings.empty()) j["warnings"] = b.construction.warnings;
  if (!b.construction.info.empty()) j["info"] = b.construction.info;
  if (b.cayley) j["extended_sigma_anti"] = b.cayley->extended_sigma_anti;
  if (b.dynamics) j["action"] = {{"minimal", b.dynamics->minimal}, {"faithful", b.dynamics->faithful}};
  if (b.ore) j["ore"] = {{"valid", validate_sigma_derivation(*b.ore).ok}, {"sigma_is_identity", b.ore->sigma_is_identity()}};
  return j;
}

json table_dump(const Built& b, const RunOptions& opts) {
  const Ring& r = b.ring();
  const std::uint64_t n = r.cardinality();
  const std::uint64_t limit = opts.force ? opts.limits.cap : opts.table_threshold;
  if (n != 0 && n <= limit) {
    auto elems = r.enumerate(opts.limits.cap);
    json names = json::array(), mul = json::array(), add = json::array();
    for (const auto& e : elems) names.push_back(r.element_json(e));
    for (const auto& x : elems) {
      json mrow = json::array(), arow = json::array();
      for (const auto& y : elems) {
        mrow.push_back(r.index_of(r.mul(x, y)));
        arow.push_back(r.index_of(r.add(x, y)));
      }
      mul.push_back(std::move(mrow));
      add.push_back(std::move(arow));
    }
    return {{"size", n}, {"elements", names}, {"add", add}, {"mul", mul}};
  }
  json j;
  if (n != 0)
    j["note"] = "table suppressed: " + std::to_string(n) + " elements exceed the threshold of " +
                std::to_string(opts.table_threshold) + " (use --force)";
  if (r.is_algebra()) {
    json prods = json::array();
    for (std::size_t i = 0; i < r.dim(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < r.dim(); ++k) row.push_back(r.element_json(r.mul(r.basis(i), r.basis(k))));
      prods.push_back(std::move(row));
    }
    j["basis_products"] = prods;
    j["dimension"] = r.dim();
  }
  return j;
}

std::optional<bool> expectation_met(Expectation e, const std::optional<bool>& simple) {
  if (e == Expectation::None) return std::nullopt;
  if (!simple) return false;
  return *simple == (e == Expectation::Simple);
}

json invariance_check(const Built& b, const Limits& lim, bool& all_ok) {
  json j;
  if (b.ore) {
    auto rows = json::array();
    for (const auto& i : enumerate_ideals(b.ore->base, lim)) {
      const bool inv = is_sigma_delta_invariant(i, *b.ore);
      auto tr = check_A_invariance_truncated(i, *b.ore, 4);
      json row{{"ideal", i.to_json()}, {"sigma_delta_invariant", inv}, {"A_invariant_truncated", tr.holds}};
      if (!inv) {
        auto w = degree_one_witness(i, *b.ore);
        row["degree_one_witness"] = w ? json{{"c", b.ore->base.element_json(w->c)}, {"product", w->product.to_json()}}
                                      : json(nullptr);
        if (!w) all_ok = false;
      }
      if (inv != tr.holds) all_ok = false;
      rows.push_back(std::move(row));
    }
    j["ideals"] = rows;
    j["equivalence_holds"] = all_ok;
    return j;
  }
  const auto& con = b.construction;
  const Span base = con.base();
  auto rows = json::array();
  for (const auto& i : enumerate_ideals_in(base, lim)) {
    json row{{"ideal", i.to_json()}, {"A_invariant", is_A_invariant(i)}};
    if (con.system) {
      const bool g = is_G_invariant(con, i);
      row["G_invariant"] = g;
      if (g != row["A_invariant"].get<bool>()) all_ok = false;
    }
    rows.push_back(std::move(row));
  }
  j["ideals"] = rows;
  if (con.system) j["equivalence_holds"] = all_ok;
  return j;
}

json degree_map_check(const Built& b, const Limits& lim, bool& all_ok) {
  if (b.ore) {
    std::mt19937_64 rng(lim.seed);
    const auto& data = *b.ore;
    std::size_t samples = 0, drops = 0;
    if (!data.sigma_is_identity()) return {{"status", "n/a"}, {"reason", "sigma is not the identity"}};
    for (std::size_t s = 0; s < lim.random_samples; ++s) {
      auto a = random_skew_polynomial(data, 1 + s % 4, true, rng);
      auto res = commutator_degree_drop(a, std::nullopt);
      ++samples;
      if (res.drop) ++drops;
    }
    return {{"map", "deg + 1"}, {"x_commutator_samples", samples}, {"closed_form_matches", samples}, {"drops", drops}};
  }
  auto dm = support_degree_map(b.construction.grading, DegreeSubring::CenterOfA0, lim);
  auto v = verify_degree_map(dm, lim);
  if (v.kind != DegreeVerdictKind::Valid) all_ok = false;
  return {{"map", dm.name}, {"verdict", v.to_json()}};
}

json center_check(const Ring& r) {
  Span z = center(r);
  json j{{"generators", z.to_json()}};
  if (z.is_linear())
    j["dimension"] = z.dim();
  else
    j["order"] = z.order();
  return j;
}

std::vector<std::string> pipelines_for(const Built& b) {
  const std::string& k = b.kind;
  if (k == "cayley_tower") return {"tower"};
  if (k == "cayley_dickson") return {"cayley"};
  if (k == "twisted_group_ring") return {"twisted", "crossed"};
  if (k == "skew_group_ring" || k == "crossed_product") return {"crossed", "necessity", "sufficiency", "groupoid"};
  if (k == "matrix_ring")
    return b.construction.system ? std::vector<std::string>{"matrix", "groupoid"} : std::vector<std::string>{"groupoid", "necessity"};
  if (k == "dynamics") return {"dynamics", "crossed"};
  if (k == "ore_extension") return {"ore"};
  return {"necessity", "sufficiency"};
}

json base_report(const std::string& command, const RunOptions& opts) {
  return json{{"version", kToolVersion}, {"command", command}, {"seed", opts.limits.seed}, {"caps", opts.limits.to_json()}};
}

}  // namespace

Recipe validate_recipe(const nlohmann::json& doc) {
  validate_node(doc, "");
  return Recipe{doc, doc["kind"].get<std::string>()};
}

Recipe parse_recipe_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::ParseError, "parse error at line " + std::to_string(line) + ", column " + std::to_string(col),
                {{"line", line}, {"column", col}});
  }
  return validate_recipe(doc);
}

Recipe parse_recipe_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open recipe file " + path, {{"path", path}});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_recipe_text(ss.str());
}

Built build_recipe(const Recipe& r) { return build_node(r.doc, ""); }

std::string recipe_digest(const Recipe& r) {
  const std::string s = r.doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunResult run_command(const std::string& command, const Recipe& recipe, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  if (command != "build" && command != "table" && command != "check" && command != "certify")
    throw Error(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
  RunResult out;
  json rep = base_report(command, opts);
  rep["recipe_digest"] = recipe_digest(recipe);
  Built b = build_recipe(recipe);
  const auto t_build = std::chrono::steady_clock::now();
  json results = json::object();
  json certs = json::array();
  const Limits& lim = opts.limits;

  if (command == "build") {
    results["build"] = build_summary(b, opts);
  } else if (command == "table") {
    results["table"] = table_dump(b, opts);
  } else if (command == "check") {
    std::vector<std::string> checks = opts.checks;
    if (checks.empty()) checks = {"simplicity", "center"};
    if (opts.expect != Expectation::None && std::find(checks.begin(), checks.end(), "simplicity") == checks.end())
      checks.insert(checks.begin(), "simplicity");
    bool all_ok = true;
    std::optional<bool> simple;
    for (const auto& c : checks) {
      if (c == "simplicity") {
        if (b.ore) {
          auto v = is_sigma_delta_simple(*b.ore, lim);
          results["sigma_delta_simplicity"] = {{"simple", v.simple},
                                               {"witness", v.witness ? v.witness->to_json() : json(nullptr)}};
          if (!v.simple) simple = false;
          results["simplicity"] = v.simple ? json{{"Inconclusive", {{"reason", "B[x; sigma, delta] is infinite"}}}}
                                           : json{{"NotSimple", {{"witness", v.witness->to_json()},
                                                                 {"reason", "extension of a sigma-delta-invariant ideal"}}}};
        } else {
          auto v = decide_simplicity(b.ring(), lim);
          results["simplicity"] = v.to_json();
          if (v.kind != Simplicity::Inconclusive) simple = v.kind == Simplicity::Simple;
        }
      } else if (c == "center") {
        results["center"] = center_check(b.ore ? b.ore->base : b.ring());
      } else if (c == "invariance") {
        results["invariance"] = invariance_check(b, lim, all_ok);
      } else if (c == "grading") {
        results["grading"] = grading_summary(b.construction.grading, lim);
      } else if (c == "degree-map") {
        results["degree-map"] = degree_map_check(b, lim, all_ok);
      } else {
        throw Error(ErrorCode::InvalidArgument, "unknown check '" + c + "'");
      }
    }
    if (auto met = expectation_met(opts.expect, simple)) {
      results["expectation"] = {{"expected", opts.expect == Expectation::Simple ? "simple" : "not-simple"}, {"met", *met}};
      if (!*met) all_ok = false;
    }
    out.exit_code = all_ok ? 0 : 1;
  } else {
    CorpusInstance inst;
    inst.id = b.ring().name();
    inst.construction = b.construction;
    inst.cayley = b.cayley;
    inst.tower = b.tower;
    inst.dynamics = b.dynamics;
    inst.ore = b.ore;
    inst.pipelines = pipelines_for(b);
    auto list = run_pipelines(inst, lim);
    bool bad = false;
    std::optional<bool> verdict;
    for (const auto& c : list) {
      if (c.oracle == OracleStatus::Disagrees) bad = true;
      if (!verdict && c.property == "A is simple" && c.conclusion) verdict = c.conclusion;
      certs.push_back(c.to_json());
    }
    if (b.kind == "cayley_tower" && !list.empty()) verdict = list.back().conclusion;
    results["verdict"] = verdict ? (*verdict ? "Simple" : "NotSimple") : "withheld";
    results["disagreements"] = bad;
    if (auto met = expectation_met(opts.expect, verdict)) {
      results["expectation"] = {{"expected", opts.expect == Expectation::Simple ? "simple" : "not-simple"}, {"met", *met}};
      if (!*met) bad = true;
    }
    out.exit_code = bad ? 1 : 0;
  }
  rep["results"] = results;
  rep["certificates"] = certs;
  if (opts.timings) {
    const auto t1 = std::chrono::steady_clock::now();
    rep["timings_ms"] = {{"build", std::chrono::duration_cast<std::chrono::milliseconds>(t_build - t0).count()},
                         {"total", std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()}};
  }
  out.report = std::move(rep);
  return out;
}

RunResult run_corpus(const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult out;
  json rep = base_report("corpus", opts);
  rep["recipe_digest"] = nullptr;
  auto c = cross_check_corpus(opts.limits, opts.timings);
  rep["results"] = {{"corpus", c.report}};
  rep["certificates"] = json::array();
  if (opts.timings)
    rep["timings_ms"] = {{"total", std::chrono::duration_cast<std::chrono::milliseconds>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count()}};
  out.report = std::move(rep);
  out.exit_code = c.disagreements == 0 ? 0 : 1;
  return out;
}

std::string render_text(const nlohmann::json& report) {
  std::ostringstream os;
  os << "nalab " << report.value("version", "") << "  command: " << report.value("command", "") << "\n";
  if (report.contains("recipe_digest") && report["recipe_digest"].is_string())
    os << "recipe digest: " << report["recipe_digest"].get<std::string>() << "\n";
  os << "seed: " << report.value("seed", 0ull) << "\n";
  if (report.contains("results")) {
    const auto& res = report["results"];
    if (res.contains("corpus")) {
      const auto& c = res["corpus"];
      for (const auto& row : c["instances"]) {
        std::string oracle = row["oracle"].is_string() ? row["oracle"].get<std::string>() : row["oracle"].begin().key();
        os << "  " << row.value("id", "") << ": oracle " << oracle << ", pipelines "
           << row.value("pipeline_verdict", "error") << ", " << row.value("agreement", "") << "\n";
      }
      os << "disagreements: " << c["summary"].value("disagreements", 0) << " of " << c["summary"].value("instances", 0)
         << " instances\n";
    } else {
      for (auto it = res.begin(); it != res.end(); ++it) {
        if (it.value().is_string())
          os << it.key() << ": " << it.value().get<std::string>() << "\n";
        else
          os << it.key() << ": " << it.value().dump(2) << "\n";
      }
    }
  }
  if (report.contains("certificates"))
    for (const auto& c : report["certificates"]) {
      os << "certificate [" << c.value("instance", "") << "] " << c.value("theorem", "") << ": ";
      if (c["conclusion"].is_string())
        os << c.value("property", "") << " withheld";
      else
        os << c.value("property", "") << " = " << (c["conclusion"]["holds"].get<bool>() ? "true" : "false") << " ("
           << c["conclusion"].value("route", "") << ")";
      os << "; oracle: " << c["oracle"].value("result", "") << (c.value("conditional", false) ? "; conditional" : "")
         << "\n";
      for (const auto& p : c["premises"])
        os << "    premise " << p.value("name", "") << ": " << p.value("status", "") << "\n";
      if (c.contains("criteria"))
        for (const auto& p : c["criteria"]) os << "    criterion " << p.value("name", "") << ": " << p.value("status", "") << "\n";
    }
  if (report.contains("timings_ms")) os << "timings_ms: " << report["timings_ms"].dump() << "\n";
  return os.str();
}

}  // namespace nalab
