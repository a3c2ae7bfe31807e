#include "nalab/constructions.hpp"

#include <algorithm>
#include <numeric>

namespace nalab {

namespace {

Element unit_or_throw(const Ring& b) {
  auto u = find_unit(b);
  if (!u) throw Error(ErrorCode::ValidationFailure, "base ring '" + b.name() + "' is not unital");
  return *u;
}

Matrix zero_matrix(const ScalarSpec& f, std::size_t rows, std::size_t cols) {
  return Matrix(rows, zero_vec(f, cols));
}

bool same_matrix(const Matrix& a, const Matrix& b) { return a == b; }

}  // namespace

RingMap RingMap::identity(const Ring& b) { return RingMap{identity_matrix(b.field(), b.dim()), MapKind::Homomorphism}; }

Element RingMap::apply(const Ring& target, const Element& x) const {
  if (matrix.size() != target.dim() || (!matrix.empty() && matrix[0].size() != x.coords.size()))
    throw Error(ErrorCode::ShapeMismatch, "ring map has the wrong shape");
  return target.element(mat_vec(matrix, x.coords));
}

nlohmann::json RingMap::to_json() const {
  auto rows = nlohmann::json::array();
  for (const auto& r : matrix) {
    auto row = nlohmann::json::array();
    for (const auto& c : r) row.push_back(c.to_string());
    rows.push_back(row);
  }
  return {{"kind", kind == MapKind::Homomorphism ? "homomorphism" : "anti-homomorphism"}, {"matrix", rows}};
}

RingMap compose_maps(const RingMap& f, const RingMap& g) {
  return RingMap{mat_mul(f.matrix, g.matrix), f.kind == g.kind ? MapKind::Homomorphism : MapKind::AntiHomomorphism};
}

Element CrossedSystem::alpha_of(std::uint32_t g, std::uint32_t h) const {
  auto it = alpha.find({g, h});
  if (it != alpha.end()) return it->second;
  return unit_or_throw(base_of(g));
}

Twist CrossedSystem::twist_of(std::uint32_t g, std::uint32_t h) const {
  auto it = twist.find({g, h});
  return it == twist.end() ? Twist::Straight : it->second;
}

nlohmann::json CrossedReport::to_json() const {
  auto v = nlohmann::json::array();
  for (const auto& x : violations) v.push_back({{"kind", x.kind}, {"detail", x.detail}, {"witness", x.witness}});
  return {{"ok", ok}, {"violations", v}};
}

CrossedReport validate_crossed_system(const CrossedSystem& sys) {
  CrossedReport rep;
  auto fail = [&](std::string kind, std::string detail, nlohmann::json w = nullptr) {
    rep.ok = false;
    rep.violations.push_back(Violation{std::move(kind), std::move(detail), std::move(w)});
  };
  CategoryPresentation cat = sys.category;
  try {
    cat.validate();
  } catch (const Error& e) {
    fail("CategoryViolation", e.what(), e.witness());
    return rep;
  }
  const auto m = static_cast<std::uint32_t>(cat.num_morphisms());
  if (sys.bases.size() != cat.num_objects() || sys.sigma.size() != m) {
    fail("ShapeViolation", "need one base ring per object and one map per morphism");
    return rep;
  }
  for (const auto& b : sys.bases)
    if (!b.is_algebra() || !(b.field() == sys.bases[0].field())) {
      fail("ShapeViolation", "base rings must be algebras over one scalar ring");
      return rep;
    }
  std::vector<std::optional<Element>> units;
  for (std::uint32_t e = 0; e < sys.bases.size(); ++e) {
    units.push_back(find_unit(sys.bases[e]));
    if (!units.back()) fail("UnitViolation", "base ring B_" + cat.objects[e] + " is not unital", e);
  }
  if (!rep.ok) return rep;
  for (std::uint32_t g = 0; g < m; ++g) {
    const Ring& src = sys.bases[cat.dom[g]];
    const Ring& dst = sys.bases[cat.cod[g]];
    const auto& mat = sys.sigma[g].matrix;
    if (mat.size() != dst.dim() || std::any_of(mat.begin(), mat.end(), [&](const Vec& r) { return r.size() != src.dim(); })) {
      fail("ShapeViolation", "sigma_" + cat.morphisms[g] + " has the wrong shape", g);
      return rep;
    }
  }
  for (std::uint32_t g = 0; g < m; ++g) {
    const Ring& src = sys.bases[cat.dom[g]];
    const Ring& dst = sys.bases[cat.cod[g]];
    const auto& s = sys.sigma[g];
    const bool anti = s.kind == MapKind::AntiHomomorphism;
    bool ok = true;
    for (std::size_t i = 0; i < src.dim() && ok; ++i)
      for (std::size_t j = 0; j < src.dim(); ++j) {
        Element lhs = s.apply(dst, src.mul(src.basis(i), src.basis(j)));
        Element si = s.apply(dst, src.basis(i)), sj = s.apply(dst, src.basis(j));
        Element rhs = anti ? dst.mul(sj, si) : dst.mul(si, sj);
        if (!(lhs == rhs)) {
          fail("HomomorphismViolation",
               "sigma_" + cat.morphisms[g] + (anti ? " is not anti-multiplicative" : " is not multiplicative"),
               {{"morphism", g}, {"pair", {i, j}}});
          ok = false;
          break;
        }
      }
    if (!(s.apply(dst, *units[cat.dom[g]]) == *units[cat.cod[g]]))
      fail("HomomorphismViolation", "sigma_" + cat.morphisms[g] + " does not preserve the unit", {{"morphism", g}});
  }
  for (std::uint32_t e = 0; e < cat.num_objects(); ++e) {
    const auto id = cat.identity[e];
    if (!same_matrix(sys.sigma[id].matrix, identity_matrix(sys.bases[e].field(), sys.bases[e].dim())))
      fail("FunctorialityViolation", "sigma of an identity morphism is not the identity", {{"morphism", id}});
  }
  for (std::uint32_t g = 0; g < m; ++g)
    for (std::uint32_t h = 0; h < m; ++h) {
      const auto gh = cat.compose[g][h];
      if (gh < 0) continue;
      if (!same_matrix(mat_mul(sys.sigma[g].matrix, sys.sigma[h].matrix), sys.sigma[gh].matrix))
        fail("FunctorialityViolation", "sigma_g sigma_h != sigma_gh", {{"g", g}, {"h", h}});
    }
  for (const auto& [key, a] : sys.alpha) {
    const auto [g, h] = key;
    if (g >= m || h >= m || cat.compose[g][h] < 0) {
      fail("ShapeViolation", "alpha given on a non-composable pair", {g, h});
      continue;
    }
    const Ring& b = sys.bases[cat.cod[g]];
    try {
      b.check_owner(a);
    } catch (const Error&) {
      fail("ShapeViolation", "alpha_{g,h} must lie in B_{c(g)}", {g, h});
      continue;
    }
    const Element& one = *units[cat.cod[g]];
    if (!find_inverse(b, a, one)) fail("UnitViolation", "alpha_{g,h} is not a unit", {{"g", g}, {"h", h}});
    bool ok = true;
    for (std::size_t i = 0; i < b.dim() && ok; ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) {
        const Element bi = b.basis(i), bj = b.basis(j);
        const Element bc = b.mul(bi, bj);
        const Element v1 = b.mul(a, bc), v2 = b.mul(b.mul(bi, a), bj), v3 = b.mul(bi, b.mul(a, bj)),
                      v4 = b.mul(bc, a);
        if (!(v1 == v2 && v2 == v3 && v3 == v4)) {
          fail("AssociateCommuteViolation", "alpha_{g,h} does not associate and commute with B",
               {{"g", g}, {"h", h}, {"pair", {i, j}}});
          ok = false;
          break;
        }
      }
  }
  for (std::uint32_t g = 0; g < m; ++g) {
    const auto lid = cat.identity[cat.cod[g]], rid = cat.identity[cat.dom[g]];
    const Element& one = *units[cat.cod[g]];
    auto l = sys.alpha.find({lid, g});
    auto r = sys.alpha.find({g, rid});
    if ((l != sys.alpha.end() && !(l->second == one)) || (r != sys.alpha.end() && !(r->second == one)))
      fail("NormalizationViolation", "alpha_{c(g),g} and alpha_{g,d(g)} must be 1", {{"morphism", g}});
  }
  return rep;
}

Construction crossed_product(const CrossedSystem& sys_in) {
  auto rep = validate_crossed_system(sys_in);
  if (!rep.ok) throw Error(ErrorCode::ValidationFailure, "invalid crossed system: " + rep.violations[0].detail, rep.to_json());
  CrossedSystem sys = sys_in;
  sys.category.validate();
  const auto& cat = sys.category;
  const auto m = static_cast<std::uint32_t>(cat.num_morphisms());
  const ScalarSpec field = sys.bases[0].field();
  std::vector<std::size_t> off;
  std::size_t total = 0;
  for (std::uint32_t g = 0; g < m; ++g) {
    off.push_back(total);
    total += sys.base_of(g).dim();
  }
  // sigma_g(basis_j of B_{d(g)}) and alpha_{g,h}, precomputed.
  std::vector<std::vector<Element>> sb(m);
  for (std::uint32_t g = 0; g < m; ++g) {
    const Ring& src = sys.bases[cat.dom[g]];
    for (std::size_t j = 0; j < src.dim(); ++j) sb[g].push_back(sys.sigma[g].apply(sys.base_of(g), src.basis(j)));
  }
  std::vector<std::vector<Term>> empty_row;
  std::vector<std::vector<std::vector<Term>>> c(total, std::vector<std::vector<Term>>(total));
  for (std::uint32_t g = 0; g < m; ++g) {
    const Ring& bg = sys.base_of(g);
    for (std::uint32_t h = 0; h < m; ++h) {
      const auto gh = cat.compose[g][h];
      if (gh < 0) continue;
      const Element al = sys.alpha_of(g, h);
      const bool opp = sys.twist_of(g, h) == Twist::Opposite;
      const Ring& bh = sys.base_of(h);
      for (std::size_t i = 0; i < bg.dim(); ++i)
        for (std::size_t j = 0; j < bh.dim(); ++j) {
          const Element a = bg.basis(i);
          Element x = opp ? bg.mul(sb[g][j], a) : bg.mul(a, sb[g][j]);
          x = bg.mul(x, al);
          auto& cell = c[off[g] + i][off[h] + j];
          for (std::size_t k = 0; k < x.coords.size(); ++k)
            if (!x.coords[k].is_zero())
              cell.push_back(Term{static_cast<std::uint32_t>(off[gh] + k), x.coords[k]});
        }
    }
  }
  Ring a = Ring::make_algebra_sparse(field, total, std::move(c), sys.name);
  std::vector<Span> comps;
  for (std::uint32_t g = 0; g < m; ++g) {
    Span s(a);
    for (std::size_t i = 0; i < sys.base_of(g).dim(); ++i) s.insert(a.basis(off[g] + i));
    comps.push_back(std::move(s));
  }
  Grading gr = validate_grading(a, cat, std::move(comps));
  Construction out{a, gr, sys, off, {}, nlohmann::json::object()};
  out.info["construction"] = "crossed_product";
  return out;
}

Element Construction::lift(std::uint32_t g, const Element& b) const {
  if (!system) throw Error(ErrorCode::InvalidArgument, "construction has no crossed system");
  const Ring& bg = system->base_of(g);
  bg.check_owner(b);
  Vec v = zero_vec(ring.field(), ring.dim());
  for (std::size_t i = 0; i < b.coords.size(); ++i) v[offsets.at(g) + i] = b.coords[i];
  return ring.element(std::move(v));
}

Element Construction::coefficient(const Element& a, std::uint32_t g) const {
  if (!system) throw Error(ErrorCode::InvalidArgument, "construction has no crossed system");
  ring.check_owner(a);
  const Ring& bg = system->base_of(g);
  Vec v(a.coords.begin() + static_cast<std::ptrdiff_t>(offsets.at(g)),
        a.coords.begin() + static_cast<std::ptrdiff_t>(offsets.at(g) + bg.dim()));
  return bg.element(std::move(v));
}

bool is_G_invariant(const Construction& c, const Span& i) {
  if (!c.system) throw Error(ErrorCode::InvalidArgument, "construction has no crossed system");
  const auto& cat = c.system->category;
  for (std::uint32_t g = 0; g < cat.num_morphisms(); ++g) {
    const auto src = cat.identity[cat.dom[g]], dst = cat.identity[cat.cod[g]];
    const Span ie = i.intersect(c.grading.component(src));
    for (const auto& x : ie.generators()) {
      Element b = c.coefficient(x, src);
      Element s = c.system->sigma[g].apply(c.system->base_of(g), b);
      if (!i.contains(c.lift(dst, s))) return false;
    }
  }
  return true;
}

Construction skew_group_ring(const Ring& b, const CategoryPresentation& group, std::vector<RingMap> action) {
  if (!group.is_group()) throw Error(ErrorCode::InvalidArgument, "skew group rings need a group");
  CrossedSystem sys{group, {b}, std::move(action), {}, {}, b.name() + " skew " + std::to_string(group.num_morphisms())};
  auto c = crossed_product(sys);
  c.info["construction"] = "skew_group_ring";
  return c;
}

Construction twisted_group_ring(const Ring& b, const CategoryPresentation& group,
                                const std::vector<std::vector<Element>>& alpha) {
  if (!group.is_group()) throw Error(ErrorCode::InvalidArgument, "twisted group rings need a group");
  const auto m = group.num_morphisms();
  if (alpha.size() != m) throw Error(ErrorCode::ShapeMismatch, "cocycle table must be |G| x |G|");
  CrossedSystem sys{group, {b}, std::vector<RingMap>(m, RingMap::identity(b)), {}, {},
                    b.name() + " twisted " + std::to_string(m)};
  for (std::uint32_t g = 0; g < m; ++g) {
    if (alpha[g].size() != m) throw Error(ErrorCode::ShapeMismatch, "cocycle table must be |G| x |G|");
    for (std::uint32_t h = 0; h < m; ++h) sys.alpha.emplace(std::pair{g, h}, alpha[g][h]);
  }
  auto c = crossed_product(sys);
  c.info["construction"] = "twisted_group_ring";
  return c;
}

int bales_alpha(std::uint64_t p, std::uint64_t q) {
  if (p == 0 || q == 0) return 1;
  const bool pe = p % 2 == 0, qe = q % 2 == 0;
  if (pe && qe) return bales_alpha(p / 2, q / 2);
  if (p == 1 && !qe) return -1;
  if (pe && !qe) return -bales_alpha(p / 2, (q - 1) / 2);
  if (!pe && !qe) return bales_alpha((q - 1) / 2, (p - 1) / 2);
  // p odd, q even and nonzero: not covered by the displayed rules.
  return bales_alpha(q / 2, (p - 1) / 2);
}

Ring scalar_algebra(const ScalarSpec& field) {
  std::vector<std::vector<std::vector<Term>>> c(1, std::vector<std::vector<Term>>(1));
  c[0][0].push_back(Term{0, Scalar::one(field)});
  return Ring::make_algebra_sparse(field, 1, std::move(c), field.to_string());
}

Construction bales_twisted_group_ring(const ScalarSpec& field, std::uint32_t n) {
  Ring b = scalar_algebra(field);
  auto g = CategoryPresentation::xor_group(n);
  const auto m = g.num_morphisms();
  std::vector<std::vector<Element>> alpha(m);
  for (std::uint32_t p = 0; p < m; ++p)
    for (std::uint32_t q = 0; q < m; ++q)
      alpha[p].push_back(b.element(Vec{Scalar::from_int(field, bales_alpha(p, q))}));
  auto c = twisted_group_ring(b, g, alpha);
  c.info["cocycle"] = "bales:" + std::to_string(n);
  return c;
}

CayleyResult cayley_dickson(const Ring& b, const RingMap& sigma, const Element& alpha, CayleyFlavor flavor,
                            CayleyTwists twists, std::string name) {
  if (!b.is_algebra()) throw Error(ErrorCode::InvalidArgument, "Cayley-Dickson doubling needs a structure algebra");
  const auto& f = b.field();
  const auto d = b.dim();
  if (mat_mul(sigma.matrix, sigma.matrix) != identity_matrix(f, d))
    throw Error(ErrorCode::SigmaNotInvolutive, "sigma^2 != id");
  const Element one = unit_or_throw(b);
  b.check_owner(alpha);
  if (!find_inverse(b, alpha, one)) throw Error(ErrorCode::AlphaNotCentralUnit, "alpha is not a unit", b.element_json(alpha));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Element bi = b.basis(i), bj = b.basis(j), bc = b.mul(bi, bj);
      const Element v1 = b.mul(alpha, bc), v2 = b.mul(b.mul(bi, alpha), bj), v3 = b.mul(bi, b.mul(alpha, bj)),
                    v4 = b.mul(bc, alpha);
      if (!(v1 == v2 && v2 == v3 && v3 == v4))
        throw Error(ErrorCode::AlphaNotCentralUnit, "alpha does not associate and commute with B",
                    nlohmann::json::array({i, j}));
    }
  if (flavor == CayleyFlavor::Classical) twists = CayleyTwists{};
  auto g = CategoryPresentation::cyclic_group(2);
  CrossedSystem sys{g, {b}, {RingMap::identity(b), sigma}, {}, {},
                    name.empty() ? "double of " + b.name() : name};
  sys.alpha.emplace(std::pair{1u, 1u}, alpha);
  sys.twist = {{{0, 0}, twists.ee}, {{0, 1}, twists.eg}, {{1, 0}, twists.ge}, {{1, 1}, twists.gg}};
  CayleyResult res{crossed_product(sys), {}, false};
  auto& con = res.construction;
  con.info["construction"] = "cayley_dickson";
  con.info["flavor"] = flavor == CayleyFlavor::Classical ? "classical" : "custom";
  if (f.is_finite() && f.modulus() % 2 == 0)
    con.warnings.push_back("characteristic 2: the doubling degenerates (alpha = -1 = 1)");

  Matrix ext = zero_matrix(f, 2 * d, 2 * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) ext[r][c] = sigma.matrix[r][c];
  for (std::size_t r = 0; r < d; ++r) ext[d + r][d + r] = -Scalar::one(f);
  res.extended_sigma = RingMap{ext, MapKind::AntiHomomorphism};
  const Ring& a = con.ring;
  bool anti = true;
  for (std::size_t i = 0; i < 2 * d && anti; ++i)
    for (std::size_t j = 0; j < 2 * d; ++j) {
      Element lhs = res.extended_sigma.apply(a, a.mul(a.basis(i), a.basis(j)));
      Element rhs = a.mul(res.extended_sigma.apply(a, a.basis(j)), res.extended_sigma.apply(a, a.basis(i)));
      if (!(lhs == rhs)) {
        anti = false;
        break;
      }
    }
  res.extended_sigma_anti = anti;
  return res;
}

std::vector<CayleyResult> cayley_tower(const ScalarSpec& field, std::uint32_t levels, std::vector<Scalar> alphas) {
  require_field(field);
  const auto cap = field.is_rational() ? kTowerCapRationals : kTowerCapFinite;
  if (levels > cap)
    throw Error(ErrorCode::TooLarge, "tower depth " + std::to_string(levels) + " exceeds the cap " + std::to_string(cap));
  if (alphas.empty()) alphas.assign(levels, Scalar::from_int(field, -1));
  if (alphas.size() != levels) throw Error(ErrorCode::ShapeMismatch, "one alpha per level is required");
  static const char* kNames[] = {"", "(i)", "H", "O", "S"};
  std::vector<CayleyResult> out;
  Ring b0 = scalar_algebra(field);
  auto triv = CategoryPresentation::cyclic_group(1);
  Grading g0 = validate_grading(b0, triv, {Span::full(b0)});
  out.push_back(CayleyResult{Construction{b0, g0, std::nullopt, {0}, {}, {{"construction", "scalar"}}},
                             RingMap{identity_matrix(field, 1), MapKind::AntiHomomorphism}, true});
  for (std::uint32_t i = 1; i <= levels; ++i) {
    const auto& prev = out.back();
    const Ring& b = prev.construction.ring;
    Element one = unit_or_throw(b);
    Element alpha = b.scalar(alphas[i - 1], one);
    const std::string base = field.to_string();
    std::string name = i < 5 ? (i == 1 ? base + kNames[1] : std::string(kNames[i]) + " over " + base)
                             : "B" + std::to_string(i) + " over " + base;
    auto next = cayley_dickson(b, prev.extended_sigma, alpha, CayleyFlavor::Classical, {}, name);
    next.construction.info["level"] = i;
    out.push_back(std::move(next));
  }
  return out;
}

Construction matrix_ring(const MatrixSystem& ms) {
  const auto n = static_cast<std::uint32_t>(ms.bases.size());
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "matrix ring needs a nonempty index set");
  auto cat = CategoryPresentation::pair_groupoid(n);
  if (ms.sigma.size() != n) throw Error(ErrorCode::ShapeMismatch, "sigma must be n x n");
  CrossedSystem sys{cat, ms.bases, {}, {}, {}, "M_" + std::to_string(n) + "(" + ms.bases[0].name() + ")"};
  for (std::uint32_t i = 0; i < n; ++i) {
    if (ms.sigma[i].size() != n) throw Error(ErrorCode::ShapeMismatch, "sigma must be n x n");
    for (std::uint32_t j = 0; j < n; ++j) sys.sigma.push_back(ms.sigma[i][j]);
  }
  for (const auto& [ijk, a] : ms.alpha)
    sys.alpha.emplace(std::pair{ijk[0] * n + ijk[1], ijk[1] * n + ijk[2]}, a);
  for (const auto& [ijk, t] : ms.twist) sys.twist.emplace(std::pair{ijk[0] * n + ijk[1], ijk[1] * n + ijk[2]}, t);
  auto rep = validate_crossed_system(sys);
  for (const auto& v : rep.violations)
    if (v.kind == "FunctorialityViolation" || v.kind == "NormalizationViolation")
      throw Error(ErrorCode::CoherenceViolation, v.detail, v.witness);
  auto c = crossed_product(sys);
  c.info["construction"] = "matrix_ring";
  return c;
}

Construction matrix_ring(const Ring& b, std::uint32_t n) {
  MatrixSystem ms;
  ms.bases.assign(n, b);
  ms.sigma.assign(n, std::vector<RingMap>(n, RingMap::identity(b)));
  return matrix_ring(ms);
}

Grading coarsen_grading(const Grading& gr, const CategoryPresentation& target, const std::vector<std::uint32_t>& map) {
  if (map.size() != gr.size()) throw Error(ErrorCode::ShapeMismatch, "coarsening map needs one entry per morphism");
  std::vector<Span> comps(target.num_morphisms(), Span(gr.ring()));
  for (std::uint32_t g = 0; g < map.size(); ++g) comps.at(map[g]) = comps.at(map[g]) + gr.component(g);
  return validate_grading(gr.ring(), target, std::move(comps));
}

Construction m3_parity_grading(const Ring& b) {
  auto c = matrix_ring(b, 3);
  auto cls = [](std::uint32_t i) { return i < 2 ? 0u : 1u; };
  std::vector<std::uint32_t> map;
  for (std::uint32_t i = 0; i < 3; ++i)
    for (std::uint32_t j = 0; j < 3; ++j) map.push_back(cls(i) ^ cls(j));
  Grading gr = coarsen_grading(c.grading, CategoryPresentation::cyclic_group(2), map);
  Construction out{c.ring, gr, std::nullopt, {}, {}, {{"construction", "m3_parity"}}};
  return out;
}

DynamicsResult dynamics_skew_group_ring(std::uint32_t x_size, const CategoryPresentation& group,
                                        const std::vector<std::vector<std::uint32_t>>& action,
                                        const ScalarSpec& field) {
  require_field(field);
  if (!group.is_group()) throw Error(ErrorCode::InvalidArgument, "dynamics needs a group");
  if (x_size == 0) throw Error(ErrorCode::InvalidArgument, "X must be nonempty");
  const auto m = static_cast<std::uint32_t>(group.num_morphisms());
  if (action.size() != m) throw Error(ErrorCode::NotAnAction, "one permutation per group element is required");
  for (std::uint32_t g = 0; g < m; ++g) {
    if (action[g].size() != x_size) throw Error(ErrorCode::NotAnAction, "permutation has the wrong length", g);
    std::vector<char> hit(x_size, 0);
    for (auto y : action[g]) {
      if (y >= x_size || hit[y]) throw Error(ErrorCode::NotAnAction, "action entry is not a permutation", g);
      hit[y] = 1;
    }
  }
  for (std::uint32_t x = 0; x < x_size; ++x)
    if (action[group.identity[0]][x] != x) throw Error(ErrorCode::NotAnAction, "identity does not act trivially", x);
  for (std::uint32_t g = 0; g < m; ++g)
    for (std::uint32_t h = 0; h < m; ++h)
      for (std::uint32_t x = 0; x < x_size; ++x)
        if (action[group.mul(g, h)][x] != action[g][action[h][x]])
          throw Error(ErrorCode::NotAnAction, "s(gh) != s(g)s(h)", {{"g", g}, {"h", h}, {"x", x}});

  std::vector<std::vector<std::vector<Term>>> c(x_size, std::vector<std::vector<Term>>(x_size));
  for (std::uint32_t i = 0; i < x_size; ++i) c[i][i].push_back(Term{i, Scalar::one(field)});
  Ring b = Ring::make_algebra_sparse(field, x_size, std::move(c), field.to_string() + "^" + std::to_string(x_size));
  std::vector<RingMap> sigma;
  for (std::uint32_t g = 0; g < m; ++g) {
    Matrix mat = zero_matrix(field, x_size, x_size);
    // sigma_g(delta_y) = delta_{s(g) y}
    for (std::uint32_t y = 0; y < x_size; ++y) mat[action[g][y]][y] = Scalar::one(field);
    sigma.push_back(RingMap{mat, MapKind::Homomorphism});
  }
  DynamicsResult res{skew_group_ring(b, group, std::move(sigma)), false, true};
  std::vector<char> orbit(x_size, 0);
  for (std::uint32_t g = 0; g < m; ++g) orbit[action[g][0]] = 1;
  res.minimal = std::all_of(orbit.begin(), orbit.end(), [](char v) { return v != 0; });
  for (std::uint32_t g = 0; g < m; ++g) {
    if (g == group.identity[0]) continue;
    bool moves = false;
    for (std::uint32_t x = 0; x < x_size; ++x) moves = moves || action[g][x] != x;
    if (!moves) res.faithful = false;
  }
  res.construction.info["construction"] = "dynamics";
  res.construction.info["minimal"] = res.minimal;
  res.construction.info["faithful"] = res.faithful;
  return res;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first, over F_p

// Remainder of a by monic b.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  const auto db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    const auto lead = a.back();
    if (lead != 0) {
      const auto shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i)
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * static_cast<std::uint64_t>(b[i])) % p);
    }
    a.pop_back();
  }
  return a;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const auto k = f.size() - 1;
  for (std::size_t deg = 1; deg <= k / 2; ++deg) {
    Poly q(deg + 1, 0);
    q[deg] = 1;
    while (true) {
      auto r = poly_mod(f, q, p);
      if (std::all_of(r.begin(), r.end(), [](std::uint32_t v) { return v == 0; })) return false;
      std::size_t i = 0;
      while (i < deg && ++q[i] == p) q[i++] = 0;
      if (i == deg) break;
    }
  }
  return true;
}

}  // namespace

FiniteField finite_field(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "finite_field needs a prime characteristic");
  if (k == 0 || k > 12) throw Error(ErrorCode::InvalidArgument, "extension degree must be 1..12");
  const auto field = ScalarSpec::modular(p);
  Poly f(k + 1, 0);
  f[k] = 1;
  if (k > 1) {
    while (!is_irreducible(f, p)) {
      std::size_t i = 0;
      while (i < k && ++f[i] == p) f[i++] = 0;
    }
  }
  // y^i y^j = y^{i+j} mod f
  std::vector<std::vector<std::vector<Term>>> c(k, std::vector<std::vector<Term>>(k));
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j) {
      Poly mono(i + j + 1, 0);
      mono[i + j] = 1;
      auto r = k > 1 ? poly_mod(mono, f, p) : Poly{1};
      for (std::uint32_t t = 0; t < r.size(); ++t)
        if (r[t]) c[i][j].push_back(Term{t, Scalar::residue(r[t], p)});
    }
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= p;
  Ring r = Ring::make_algebra_sparse(field, k, std::move(c), "F" + std::to_string(q));
  Matrix frob = zero_matrix(field, k, k);
  for (std::uint32_t j = 0; j < k; ++j) {
    Element x = r.basis(j), pw = r.basis(0);
    for (std::uint32_t t = 0; t < p; ++t) pw = r.mul(pw, x);
    for (std::uint32_t row = 0; row < k; ++row) frob[row][j] = pw.coords[row];
  }
  return FiniteField{r, f, RingMap{frob, MapKind::Homomorphism}};
}

TruncatedPolynomials truncated_polynomials(const ScalarSpec& field, std::uint32_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "truncation degree must be positive");
  std::vector<std::vector<std::vector<Term>>> c(k, std::vector<std::vector<Term>>(k));
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; i + j < k; ++j) c[i][j].push_back(Term{i + j, Scalar::one(field)});
  Ring r = Ring::make_algebra_sparse(field, k, std::move(c), field.to_string() + "[y]/(y^" + std::to_string(k) + ")");
  Matrix d = zero_matrix(field, k, k);
  for (std::uint32_t j = 1; j < k; ++j) d[j - 1][j] = Scalar::from_int(field, j);
  return TruncatedPolynomials{r, RingMap{d, MapKind::Homomorphism}};
}

Ring direct_product(const Ring& b1, const Ring& b2, std::string name) {
  if (!b1.is_algebra() || !b2.is_algebra() || !(b1.field() == b2.field()))
    throw Error(ErrorCode::InvalidArgument, "direct_product needs algebras over one scalar ring");
  const auto d1 = b1.dim(), d2 = b2.dim();
  std::vector<std::vector<std::vector<Term>>> c(d1 + d2, std::vector<std::vector<Term>>(d1 + d2));
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j) c[i][j] = b1.constants()[i][j];
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      for (const auto& t : b2.constants()[i][j])
        c[d1 + i][d1 + j].push_back(Term{static_cast<std::uint32_t>(d1 + t.k), t.value});
  return Ring::make_algebra_sparse(b1.field(), d1 + d2, std::move(c), std::move(name));
}

RingMap swap_factors(const Ring& b) {
  const auto d = b.dim();
  Matrix m = zero_matrix(b.field(), 2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    m[d + i][i] = Scalar::one(b.field());
    m[i][d + i] = Scalar::one(b.field());
  }
  return RingMap{m, MapKind::Homomorphism};
}

}  // namespace nalab
