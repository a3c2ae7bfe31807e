#include "nalab/grading.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace nalab {

namespace {

constexpr std::uint32_t kNone = 0xFFFFFFFFu;

std::optional<std::uint32_t> inverse_of(const CategoryPresentation& c, std::uint32_t g) {
  if (!c.inverse.empty()) return static_cast<std::uint32_t>(c.inverse[g]);
  for (std::uint32_t h = 0; h < c.num_morphisms(); ++h)
    if (c.compose[g][h] >= 0 && static_cast<std::uint32_t>(c.compose[g][h]) == c.identity[c.cod[g]] &&
        c.compose[h][g] >= 0 && static_cast<std::uint32_t>(c.compose[h][g]) == c.identity[c.dom[g]])
      return h;
  return std::nullopt;
}

}  // namespace

Grading validate_grading(const Ring& a, const CategoryPresentation& cat, std::vector<Span> components) {
  const auto m = cat.num_morphisms();
  if (components.size() != m)
    throw Error(ErrorCode::ShapeMismatch, "one component per morphism is required");
  for (const auto& s : components)
    if (!(s.ring() == a)) throw Error(ErrorCode::RingMismatch, "component of a different ring");
  Grading gr(a, cat, std::move(components));
  const auto& comps = gr.comps_;

  if (uses_linear_spans(a)) {
    const std::size_t d = a.dim();
    Subspace acc(a.field(), d);
    Matrix cols;
    for (std::uint32_t g = 0; g < m; ++g) {
      gr.offsets_.push_back(cols.size());
      auto basis = comps[g].generators();
      for (const auto& v : basis) {
        if (!acc.insert(v.coords))
          throw Error(ErrorCode::NotDirectSum, "components are not independent",
                      {{"morphism", g}, {"element", a.element_json(v)}});
        cols.push_back(v.coords);
      }
      gr.comp_basis_.push_back(std::move(basis));
    }
    gr.offsets_.push_back(cols.size());
    if (cols.size() != d)
      throw Error(ErrorCode::NotDirectSum, "components do not span the ring",
                  {{"dimension", d}, {"spanned", cols.size()}});
    // V has the component basis vectors as columns; store V^{-1}.
    Matrix v = transpose(cols);
    Matrix inv_cols;
    for (std::size_t i = 0; i < d; ++i) {
      Vec x;
      solve(a.field(), v, unit_vec(a.field(), d, i), x);
      inv_cols.push_back(std::move(x));
    }
    gr.to_component_coords_ = transpose(inv_cols);
  } else {
    const auto card = a.cardinality();
    for (const auto& s : comps) gr.comp_members_.push_back(s.elements());
    std::vector<std::uint32_t> layer_idx{static_cast<std::uint32_t>(a.index_of(a.zero()))};
    std::vector<Element> layer_elem{a.zero()};
    std::vector<std::vector<std::uint32_t>> layer_pos{{}};
    for (std::uint32_t g = 0; g < m; ++g) {
      const auto& mem = gr.comp_members_[g];
      if (layer_elem.size() * mem.size() > card)
        throw Error(ErrorCode::NotDirectSum, "component orders exceed the ring order", {{"morphism", g}});
      std::vector<char> seen(card, 0);
      std::vector<std::uint32_t> ni;
      std::vector<Element> ne;
      std::vector<std::vector<std::uint32_t>> np;
      for (std::size_t s = 0; s < layer_elem.size(); ++s)
        for (std::uint32_t j = 0; j < mem.size(); ++j) {
          Element sum = a.add(layer_elem[s], mem[j]);
          auto idx = a.index_of(sum);
          if (seen[idx])
            throw Error(ErrorCode::NotDirectSum, "components are not independent",
                        {{"morphism", g}, {"element", a.element_json(mem[j])}});
          seen[idx] = 1;
          auto p = layer_pos[s];
          p.push_back(j);
          ni.push_back(static_cast<std::uint32_t>(idx));
          ne.push_back(std::move(sum));
          np.push_back(std::move(p));
        }
      layer_idx = std::move(ni);
      layer_elem = std::move(ne);
      layer_pos = std::move(np);
    }
    if (layer_elem.size() != card)
      throw Error(ErrorCode::NotDirectSum, "components do not span the ring",
                  {{"order", card}, {"spanned", layer_elem.size()}});
    gr.decomp_.assign(card * m, kNone);
    for (std::size_t s = 0; s < layer_idx.size(); ++s)
      for (std::uint32_t g = 0; g < m; ++g) gr.decomp_[layer_idx[s] * m + g] = layer_pos[s][g];
  }

  for (std::uint32_t g = 0; g < m; ++g) {
    const auto xs = comps[g].generators();
    for (std::uint32_t h = 0; h < m; ++h) {
      const auto ys = comps[h].generators();
      const auto gh = cat.compose[g][h];
      for (const auto& x : xs)
        for (const auto& y : ys) {
          Element p = a.mul(x, y);
          const bool ok = gh >= 0 ? comps[gh].contains(p) : a.is_zero(p);
          if (!ok)
            throw Error(ErrorCode::FilterViolation, "component product escapes the filter",
                        {{"g", g}, {"h", h}, {"x", a.element_json(x)}, {"y", a.element_json(y)},
                         {"product", a.element_json(p)}});
        }
    }
  }
  return gr;
}

std::vector<Element> Grading::decompose(const Element& a) const {
  ring_.check_owner(a);
  const auto m = comps_.size();
  std::vector<Element> out;
  out.reserve(m);
  if (!comp_members_.empty() || decomp_.size()) {
    const auto idx = ring_.index_of(a);
    for (std::size_t g = 0; g < m; ++g) out.push_back(comp_members_[g][decomp_[idx * m + g]]);
    return out;
  }
  Vec c = mat_vec(to_component_coords_, a.coords);
  for (std::size_t g = 0; g < m; ++g) {
    Vec v = zero_vec(ring_.field(), ring_.dim());
    for (std::size_t k = offsets_[g]; k < offsets_[g + 1]; ++k)
      if (!c[k].is_zero()) axpy(v, c[k], comp_basis_[g][k - offsets_[g]].coords);
    out.push_back(ring_.element(std::move(v)));
  }
  return out;
}

Element Grading::component_of(const Element& a, std::uint32_t g) const { return decompose(a).at(g); }

std::vector<std::uint32_t> Grading::support(const Element& a) const {
  std::vector<std::uint32_t> out;
  if (comp_members_.empty()) {
    ring_.check_owner(a);
    Vec c = mat_vec(to_component_coords_, a.coords);
    for (std::uint32_t g = 0; g < comps_.size(); ++g)
      for (std::size_t k = offsets_[g]; k < offsets_[g + 1]; ++k)
        if (!c[k].is_zero()) {
          out.push_back(g);
          break;
        }
    return out;
  }
  const auto idx = ring_.index_of(a);
  const auto m = comps_.size();
  for (std::uint32_t g = 0; g < m; ++g)
    if (decomp_[idx * m + g] != 0) out.push_back(g);
  return out;
}

Span Grading::sum_of(const std::vector<std::uint32_t>& morphisms) const {
  Span s(ring_);
  for (auto g : morphisms) s = s + comps_.at(g);
  return s;
}

Span Grading::a0() const { return sum_of(cat_.identity); }

Span Grading::vertex_ring(std::uint32_t e) const { return sum_of(cat_.vertex_group(e)); }

Span Grading::off_identity() const {
  std::vector<std::uint32_t> gs;
  for (std::uint32_t g = 0; g < comps_.size(); ++g)
    if (!cat_.is_identity(g)) gs.push_back(g);
  return sum_of(gs);
}

nlohmann::json Grading::to_json() const {
  auto comps = nlohmann::json::array();
  for (std::uint32_t g = 0; g < comps_.size(); ++g) {
    nlohmann::json c = {{"morphism", cat_.morphisms[g]}};
    if (comps_[g].is_linear())
      c["dim"] = comps_[g].dim();
    else
      c["order"] = comps_[g].order();
    comps.push_back(std::move(c));
  }
  return {{"category", cat_.to_json()}, {"components", comps}};
}

std::optional<Element> unit_of_span(const Span& s) {
  const Ring& r = s.ring();
  if (s.is_zero()) return std::nullopt;
  const auto gens = s.generators();
  auto acts = [&](const Element& u) {
    for (const auto& x : gens)
      if (!(r.mul(u, x) == x) || !(r.mul(x, u) == x)) return false;
    return true;
  };
  if (!s.is_linear()) {
    for (const auto& u : s.elements())
      if (acts(u)) return u;
    return std::nullopt;
  }
  const std::size_t k = gens.size(), d = r.dim();
  Matrix m;
  Vec rhs;
  for (const auto& x : gens) {
    std::vector<Vec> left, right;
    for (const auto& b : gens) {
      left.push_back(r.mul(b, x).coords);
      right.push_back(r.mul(x, b).coords);
    }
    for (std::size_t row = 0; row < d; ++row) {
      Vec l(k), rr(k);
      for (std::size_t i = 0; i < k; ++i) {
        l[i] = left[i][row];
        rr[i] = right[i][row];
      }
      m.push_back(std::move(l));
      rhs.push_back(x.coords[row]);
      m.push_back(std::move(rr));
      rhs.push_back(x.coords[row]);
    }
  }
  Vec c;
  if (!solve(r.field(), m, rhs, c)) return std::nullopt;
  Vec u = zero_vec(r.field(), d);
  for (std::size_t i = 0; i < k; ++i) axpy(u, c[i], gens[i].coords);
  Element ue = r.element(std::move(u));
  return acts(ue) ? std::optional<Element>(ue) : std::nullopt;
}

nlohmann::json GradingFlags::to_json(const Ring& r) const {
  auto units = nlohmann::json::array();
  for (const auto& u : local_units) units.push_back(u ? r.element_json(*u) : nlohmann::json(nullptr));
  nlohmann::json j = {{"locally_unital", locally_unital},
                      {"strongly_graded", strongly_graded},
                      {"left_nondegenerate", left_nondegenerate},
                      {"right_nondegenerate", right_nondegenerate},
                      {"local_units", units}};
  if (strong_failure) j["strong_failure"] = *strong_failure;
  return j;
}

namespace {

// Whether every nonzero x in A_g has x*Y != 0 (right) or Y*x != 0 (left).
bool nondegenerate_pair(const Span& ag, const Span& y, bool right, const Limits& lim) {
  const Ring& r = ag.ring();
  if (ag.is_zero()) return true;
  const auto ys = y.generators();
  if (ys.empty()) return false;
  if (ag.is_linear()) {
    const auto basis = ag.generators();
    std::vector<Vec> images;
    for (const auto& x : basis) {
      Vec img;
      for (const auto& b : ys) {
        Vec p = (right ? r.mul(x, b) : r.mul(b, x)).coords;
        img.insert(img.end(), p.begin(), p.end());
      }
      images.push_back(std::move(img));
    }
    return kernel(r.field(), r.dim() * ys.size(), images).empty();
  }
  for (const auto& x : ag.projective_elements(lim.cap)) {
    bool nz = false;
    for (const auto& b : ys)
      if (!r.is_zero(right ? r.mul(x, b) : r.mul(b, x))) {
        nz = true;
        break;
      }
    if (!nz) return false;
  }
  return true;
}

}  // namespace

GradingFlags grading_flags(const Grading& gr, const Limits& lim) {
  GradingFlags f;
  const auto& cat = gr.category();
  const Ring& r = gr.ring();
  const auto m = static_cast<std::uint32_t>(gr.size());

  f.locally_unital = true;
  for (std::uint32_t e = 0; e < cat.num_objects(); ++e) {
    auto u = unit_of_span(gr.component(cat.identity[e]));
    if (!u) f.locally_unital = false;
    f.local_units.push_back(std::move(u));
  }
  if (f.locally_unital)
    for (std::uint32_t g = 0; g < m && f.locally_unital; ++g)
      for (const auto& x : gr.component(g).generators())
        if (!(r.mul(*f.local_units[cat.cod[g]], x) == x) || !(r.mul(x, *f.local_units[cat.dom[g]]) == x)) {
          f.locally_unital = false;
          break;
        }

  f.strongly_graded = true;
  for (std::uint32_t g = 0; g < m && f.strongly_graded; ++g)
    for (std::uint32_t h = 0; h < m; ++h) {
      if (cat.compose[g][h] < 0) continue;
      if (!(product_span(gr.component(g), gr.component(h)) == gr.component(cat.compose[g][h]))) {
        f.strongly_graded = false;
        f.strong_failure = std::array<std::uint32_t, 2>{g, h};
        break;
      }
    }

  f.left_nondegenerate = f.right_nondegenerate = true;
  for (std::uint32_t g = 0; g < m; ++g) {
    auto inv = inverse_of(cat, g);
    if (!inv) continue;
    if (f.right_nondegenerate && !nondegenerate_pair(gr.component(g), gr.component(*inv), true, lim))
      f.right_nondegenerate = false;
    if (f.left_nondegenerate && !nondegenerate_pair(gr.component(g), gr.component(*inv), false, lim))
      f.left_nondegenerate = false;
  }
  return f;
}

std::string_view to_string(DegreeVerdictKind k) {
  switch (k) {
    case DegreeVerdictKind::Valid: return "Valid";
    case DegreeVerdictKind::D1Violation: return "D1Violation";
    case DegreeVerdictKind::D2Violation: return "D2Violation";
  }
  return "Valid";
}

nlohmann::json DegreeVerdict::to_json() const {
  if (kind == DegreeVerdictKind::Valid) return "Valid";
  nlohmann::json body = nlohmann::json::object();
  if (element) body["element"] = ideal ? ideal->ring().element_json(*element) : nlohmann::json(nullptr);
  if (ideal) body["ideal"] = ideal->to_json();
  return {{std::string(to_string(kind)), body}};
}

DegreeVerdict verify_degree_map(const DegreeMap& dm, const Limits& lim) {
  const Ring& r = dm.ring;
  DegreeVerdict v;
  const auto all = r.enumerate(lim.cap);
  std::vector<std::uint64_t> d(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    d[r.index_of(all[i])] = dm.d(all[i]);
    const bool zero = r.is_zero(all[i]);
    if ((d[r.index_of(all[i])] == 0) != zero) {
      v.kind = DegreeVerdictKind::D1Violation;
      v.element = all[i];
      v.ideal = Span(r);
      return v;
    }
  }
  v.elements_checked = all.size();

  // m(a') = max over b in X of d(a'b - ba').
  std::vector<std::int64_t> memo(all.size(), -1);
  auto comm = [&](const Element& a) -> std::uint64_t {
    const auto idx = r.index_of(a);
    if (memo[idx] >= 0) return static_cast<std::uint64_t>(memo[idx]);
    std::uint64_t mx = 0;
    for (const auto& b : dm.x) mx = std::max(mx, d[r.index_of(r.sub(r.mul(a, b), r.mul(b, a)))]);
    memo[idx] = static_cast<std::int64_t>(mx);
    return mx;
  };

  struct IdealInfo {
    Span span;
    // best[D] = true when some nonzero a' has d(a') <= D and m(a') < D.
    std::vector<char> ok;
  };
  std::unordered_map<std::string, std::shared_ptr<IdealInfo>> cache;
  const bool linear = uses_linear_spans(r);
  std::uint64_t max_d = *std::max_element(d.begin(), d.end());

  for (const auto& a : all) {
    if (r.is_zero(a)) continue;
    std::string key;
    if (linear) {
      Vec c = a.coords;
      Scalar lead;
      for (const auto& x : c)
        if (!x.is_zero()) {
          lead = x;
          break;
        }
      key = r.element_string(r.element(scale(lead.inverse(), c)));
    } else {
      key = std::to_string(r.index_of(a));
    }
    auto it = cache.find(key);
    std::shared_ptr<IdealInfo> info;
    if (it != cache.end()) {
      info = it->second;
    } else {
      info = std::make_shared<IdealInfo>(IdealInfo{ideal_closure(r, {a}, lim), {}});
      info->ok.assign(max_d + 2, 0);
      for (const auto& ap : info->span.elements(lim.cap)) {
        if (r.is_zero(ap)) continue;
        const auto da = d[r.index_of(ap)];
        const auto ma = comm(ap);
        // a' qualifies for every D with da <= D and ma < D.
        for (std::uint64_t dd = std::max(da, ma + 1); dd <= max_d; ++dd) info->ok[dd] = 1;
      }
      cache.emplace(key, info);
    }
    if (!info->ok[d[r.index_of(a)]]) {
      v.kind = DegreeVerdictKind::D2Violation;
      v.element = a;
      v.ideal = info->span;
      return v;
    }
  }
  return v;
}

Span degree_subring(const Grading& gr, DegreeSubring choice, const Limits& lim) {
  if (choice == DegreeSubring::HomogeneousElements) return Span::full(gr.ring());
  const Span a0 = gr.a0();
  return centralizer(gr.ring(), a0.generators(), lim).intersect(a0);
}

DegreeMap support_degree_map(const Grading& gr, DegreeSubring choice, const Limits& lim) {
  DegreeMap dm{gr.ring(), {}, {}, {}};
  auto shared = std::make_shared<Grading>(gr);
  dm.d = [shared](const Element& a) -> std::uint64_t { return shared->support(a).size(); };
  constexpr std::uint64_t kSmall = 256;
  if (choice == DegreeSubring::CenterOfA0) {
    dm.name = "support, X = Z(A0)";
    Span z = degree_subring(gr, choice, lim);
    const auto ord = z.order();
    dm.x = (ord != 0 && ord <= kSmall) ? z.elements() : z.generators();
  } else {
    dm.name = "support, X = homogeneous elements";
    for (const auto& c : gr.components()) {
      const auto ord = c.order();
      auto xs = (ord != 0 && ord <= kSmall) ? c.elements() : c.generators();
      for (auto& x : xs)
        if (!gr.ring().is_zero(x)) dm.x.push_back(std::move(x));
    }
  }
  return dm;
}

IntersectionVerdict ideal_intersection_property(const Ring& a, const Span& s, const Limits& lim) {
  IntersectionVerdict v;
  for (const auto& i : enumerate_ideals(a, lim)) {
    if (i.is_zero()) continue;
    ++v.ideals_checked;
    if (i.intersect(s).is_zero()) {
      v.holds = false;
      v.witness = i;
      return v;
    }
  }
  return v;
}

AssociativityCheck graded_ideal_associativity(const Grading& gr, const Span& i, std::size_t max_len) {
  const auto m = gr.size();
  std::vector<std::string> cnames;
  for (const auto& n : gr.category().morphisms) cnames.push_back("A_" + n);
  for (std::size_t len = 3; len <= max_len; ++len) {
    const std::size_t k = len - 1;
    std::vector<std::size_t> word(k, 0);
    while (true) {
      for (std::size_t pos = 0; pos < len; ++pos) {
        std::vector<Span> f;
        std::vector<std::string> names;
        std::size_t w = 0;
        for (std::size_t t = 0; t < len; ++t) {
          if (t == pos) {
            f.push_back(i);
            names.push_back("I");
          } else {
            f.push_back(gr.component(static_cast<std::uint32_t>(word[w])));
            names.push_back(cnames[word[w]]);
            ++w;
          }
        }
        auto res = check_bracketings(f, names);
        if (!res.holds) return res;
      }
      std::size_t t = 0;
      while (t < k && ++word[t] == m) word[t++] = 0;
      if (t == k) break;
    }
  }
  return {};
}

ComponentwiseInvariance check_invariance_componentwise(const Grading& gr, const Span& i, const Limits& lim) {
  const auto flags = grading_flags(gr, lim);
  if (!flags.locally_unital) throw Error(ErrorCode::PreconditionUnmet, "grading is not locally unital", "locally_unital");
  const auto& cat = gr.category();
  const auto m = static_cast<std::uint32_t>(gr.size());
  std::vector<Span> ie;
  for (std::uint32_t e = 0; e < cat.num_objects(); ++e) ie.push_back(i.intersect(gr.component(cat.identity[e])));

  ComponentwiseInvariance res;
  res.a_invariant = is_A_invariant(i);
  res.plain = true;
  for (std::uint32_t g = 0; g < m && res.plain; ++g) {
    const Span& ag = gr.component(g);
    if (!product_span(ie[cat.cod[g]], ag).contains(product_span(ag, ie[cat.dom[g]]))) res.plain = false;
  }
  if (res.plain != res.a_invariant)
    throw Error(ErrorCode::Disagreement, "componentwise criterion (a) disagrees with A-invariance", i.to_json());

  res.conjugation_applicable =
      cat.is_groupoid() && flags.strongly_graded && graded_ideal_associativity(gr, i).holds;
  res.conjugation = true;
  for (std::uint32_t g = 0; g < m && res.conjugation; ++g) {
    auto inv = inverse_of(cat, g);
    if (!inv) continue;
    Span lhs = product_span(product_span(gr.component(g), ie[cat.dom[g]]), gr.component(*inv));
    if (!ie[cat.cod[g]].contains(lhs)) res.conjugation = false;
  }
  if (res.conjugation_applicable && res.conjugation != res.plain)
    throw Error(ErrorCode::Disagreement, "componentwise criteria (a) and (b) disagree", i.to_json());
  return res;
}

LocalUnitsTest local_units_full_ideal_test(const Grading& gr, const Span& i, LocalUnitsVariant variant,
                                           const Limits& lim) {
  const auto flags = grading_flags(gr, lim);
  if (!flags.locally_unital) throw Error(ErrorCode::PreconditionUnmet, "grading is not locally unital", "locally_unital");
  const auto& cat = gr.category();
  if (variant == LocalUnitsVariant::SomeObject &&
      !(cat.is_groupoid() && cat.is_connected() && flags.strongly_graded))
    throw Error(ErrorCode::PreconditionUnmet, "variant (b) needs a strong grading by a connected groupoid",
                "connected_strong_groupoid");
  LocalUnitsTest t;
  for (std::uint32_t e = 0; e < cat.num_objects(); ++e)
    if (i.contains(*flags.local_units[e])) t.units_in_ideal.push_back(e);
  t.criterion = variant == LocalUnitsVariant::AllObjects ? t.units_in_ideal.size() == cat.num_objects()
                                                         : !t.units_in_ideal.empty();
  t.full = i.is_full();
  if (t.criterion != t.full)
    throw Error(ErrorCode::Disagreement, "local-unit criterion disagrees with I = A", i.to_json());
  return t;
}

}  // namespace nalab
