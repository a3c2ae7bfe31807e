#include "nalab/certify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <thread>

namespace nalab {

std::string_view to_string(PremiseStatus s) {
  switch (s) {
    case PremiseStatus::Verified: return "verified";
    case PremiseStatus::Failed: return "failed";
    case PremiseStatus::Sampled: return "sampled";
    case PremiseStatus::Assumed: return "assumed";
    case PremiseStatus::Undecided: return "undecided";
    case PremiseStatus::NotApplicable: return "n/a";
  }
  return "undecided";
}

std::string_view to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::Agrees: return "agrees";
    case OracleStatus::Disagrees: return "disagrees";
    case OracleStatus::Unavailable: return "oracle-unavailable";
    case OracleStatus::NoClaim: return "no-claim";
  }
  return "oracle-unavailable";
}

nlohmann::json Premise::to_json() const {
  nlohmann::json j{{"name", name}, {"status", to_string(status)}};
  if (!detail.empty()) j["detail"] = detail;
  if (!witness.is_null()) j["witness"] = witness;
  if (sampling) j["sampling"] = {{"seed", sampling->first}, {"count", sampling->second}};
  return j;
}

const Premise* Certificate::first_failure() const {
  for (const auto& p : premises)
    if (p.status == PremiseStatus::Failed || p.status == PremiseStatus::Undecided ||
        p.status == PremiseStatus::Sampled)
      return &p;
  return nullptr;
}

bool Certificate::premises_hold() const { return first_failure() == nullptr; }

nlohmann::json Certificate::to_json() const {
  auto ps = nlohmann::json::array(), cs = nlohmann::json::array();
  for (const auto& p : premises) ps.push_back(p.to_json());
  for (const auto& p : criteria) cs.push_back(p.to_json());
  nlohmann::json j{{"instance", instance}, {"theorem", theorem}, {"property", property}, {"premises", ps}};
  if (!criteria.empty()) j["criteria"] = cs;
  if (conclusion)
    j["conclusion"] = {{"holds", *conclusion}, {"route", route}};
  else
    j["conclusion"] = "withheld";
  j["conditional"] = conditional;
  nlohmann::json o{{"result", to_string(oracle)}};
  if (!oracle_method.empty()) o["method"] = oracle_method;
  if (oracle_value) o["value"] = *oracle_value;
  if (!oracle_detail.empty()) o["detail"] = oracle_detail;
  if (!oracle_witness.is_null()) o["witness"] = oracle_witness;
  j["oracle"] = o;
  j["limits"] = limits;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

void require_premises(const Certificate& c) {
  if (const Premise* p = c.first_failure())
    throw Error(ErrorCode::PremiseFailure, c.theorem + ": premise '" + p->name + "' " + std::string(to_string(p->status)),
                {{"premise", p->name}, {"status", to_string(p->status)}, {"witness", p->witness}});
}

namespace {

Premise verdict_premise(std::string name, bool ok, std::string detail = {}, nlohmann::json witness = nullptr) {
  return Premise{std::move(name), ok ? PremiseStatus::Verified : PremiseStatus::Failed, std::move(detail),
                 ok ? nlohmann::json(nullptr) : std::move(witness), std::nullopt};
}

Premise undecided(std::string name, std::string detail) {
  return Premise{std::move(name), PremiseStatus::Undecided, std::move(detail), nullptr, std::nullopt};
}

Premise from_optional(std::string name, const std::optional<bool>& v, std::string detail = {},
                      nlohmann::json witness = nullptr) {
  if (!v) return undecided(std::move(name), detail.empty() ? "not decidable on this instance" : detail);
  return verdict_premise(std::move(name), *v, std::move(detail), std::move(witness));
}

// Evaluates a premise, turning size and field errors into an undecided status.
template <class F>
Premise guarded(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TooLarge || e.code() == ErrorCode::InfiniteScalarField)
      return undecided(name, e.what());
    throw;
  }
}

bool is_good(PremiseStatus s) {
  return s == PremiseStatus::Verified || s == PremiseStatus::Assumed || s == PremiseStatus::NotApplicable;
}

Certificate start(std::string instance, std::string theorem, std::string property, const Limits& lim) {
  Certificate c;
  c.instance = std::move(instance);
  c.theorem = std::move(theorem);
  c.property = std::move(property);
  c.limits = lim.to_json();
  return c;
}

// Withholds the conclusion unless every premise is verified or assumed and
// every criterion is decided, then marks assumed premises as conditional.
void finalize(Certificate& c) {
  bool ok = std::all_of(c.premises.begin(), c.premises.end(), [](const Premise& p) { return is_good(p.status); });
  for (const auto& p : c.criteria)
    if (p.status == PremiseStatus::Undecided || p.status == PremiseStatus::Sampled ||
        p.status == PremiseStatus::Assumed)
      ok = false;
  if (!ok) c.conclusion.reset();
  c.conditional = c.conclusion && std::any_of(c.premises.begin(), c.premises.end(), [](const Premise& p) {
                    return p.status == PremiseStatus::Assumed;
                  });
}

void set_oracle(Certificate& c, std::optional<bool> value, std::string method, std::string detail = {},
                nlohmann::json witness = nullptr) {
  c.oracle_value = value;
  c.oracle_method = std::move(method);
  c.oracle_detail = std::move(detail);
  c.oracle_witness = std::move(witness);
  if (!value)
    c.oracle = OracleStatus::Unavailable;
  else if (!c.conclusion)
    c.oracle = OracleStatus::NoClaim;
  else
    c.oracle = *c.conclusion == *value ? OracleStatus::Agrees : OracleStatus::Disagrees;
}

std::optional<bool> simplicity_value(const SimplicityVerdict& v) {
  if (v.kind == Simplicity::Simple) return true;
  if (v.kind == Simplicity::NotSimple) return false;
  return std::nullopt;
}

void simplicity_oracle(Certificate& c, const Ring& a, const Limits& lim) {
  try {
    auto v = decide_simplicity(a, lim);
    set_oracle(c, simplicity_value(v), "is_simple: " + v.method, v.reason,
               v.witness ? v.witness->to_json() : nlohmann::json(nullptr));
  } catch (const Error& e) {
    set_oracle(c, std::nullopt, "is_simple", e.what());
  }
}

bool rational_square(const mpq_class& q) {
  if (sgn(q) < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 && mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

// Commutative associative unital algebras over Q of dimension 1 or 2.
std::optional<bool> field_over_q(const Ring& r) {
  if (!r.is_algebra() || !r.field().is_rational()) return std::nullopt;
  const auto& pr = r.probe();
  if (r.dim() == 0) return false;
  if (!pr.unit) {
    if (r.dim() == 1) return false;  // a unital one-dimensional algebra would have a unit
    return std::nullopt;
  }
  if (pr.commutative != Tri::Yes || pr.associative != Tri::Yes) return std::nullopt;
  if (r.dim() == 1) return true;
  if (r.dim() != 2) return std::nullopt;
  const Element& u = *pr.unit;
  Subspace su = Subspace::span(r.field(), 2, {u.coords});
  Element t = r.basis(0);
  if (su.contains(t.coords)) t = r.basis(1);
  // t^2 = a u + b t; the minimal polynomial x^2 - b x - a is irreducible
  // exactly when b^2 + 4a is not a square.
  Element t2 = r.mul(t, t);
  Matrix m(2, Vec(2));
  for (std::size_t i = 0; i < 2; ++i) m[i] = {u.coords[i], t.coords[i]};
  Vec x;
  if (!solve(r.field(), m, t2.coords, x)) return std::nullopt;
  Scalar disc = x[1] * x[1] + Scalar::from_int(r.field(), 4) * x[0];
  return !rational_square(disc.as_rational());
}

// Splits the basis into blocks that multiply to zero across each other.
std::vector<std::vector<std::size_t>> basis_blocks(const Ring& r) {
  const auto d = r.dim();
  std::vector<std::size_t> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
  const auto& c = r.constants();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& t : c[i][j]) {
        if (t.value.is_zero()) continue;
        unite(i, j);
        unite(i, t.k);
      }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::int64_t> slot(d, -1);
  for (std::size_t i = 0; i < d; ++i) {
    auto root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::int64_t>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(slot[root])].push_back(i);
  }
  return blocks;
}

std::optional<std::vector<Span>> ideals_over_q(const Ring& r) {
  auto blocks = basis_blocks(r);
  if (blocks.size() > 6) return std::nullopt;
  std::vector<Span> parts;
  for (const auto& blk : blocks) {
    std::vector<Element> gens;
    for (auto i : blk) gens.push_back(r.basis(i));
    Span s = Span::of(r, gens);
    auto view = subring_as_ring(s, "block");
    auto f = field_over_q(view.ring);
    if (!f || !*f) return std::nullopt;
    parts.push_back(std::move(s));
  }
  std::vector<Span> out;
  for (std::uint32_t mask = 0; mask < (1u << parts.size()); ++mask) {
    Span s(r);
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (mask & (1u << i)) s = s + parts[i];
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const Span& a, const Span& b) { return a.dim() < b.dim(); });
  return out;
}

std::optional<bool> center_is_simple(const Ring& a, const Limits& lim, std::string& detail) {
  Span z = center(a);
  if (z.is_zero()) {
    detail = "Z = 0";
    return false;
  }
  if (a.is_algebra() && a.field().is_field() && z.dim() == 1) {
    if (const auto& u = a.probe().unit; u && z.contains(*u)) {
      detail = "dim Z = 1, spanned by the unit: a field";
      return true;
    }
  }
  auto view = subring_as_ring(z, "Z(" + a.name() + ")");
  auto v = decide_simplicity(view.ring, lim);
  detail = (a.is_algebra() ? "dim Z = " + std::to_string(z.dim()) + "; " : std::string()) + v.method;
  return simplicity_value(v);
}

std::uint32_t identity_of_group(const CategoryPresentation& g) { return g.identity.at(0); }

bool alpha_trivial(const CrossedSystem& sys) {
  for (const auto& [key, val] : sys.alpha) {
    const auto& u = sys.base_of(key.first).probe().unit;
    if (!u || !(val == *u)) return false;
  }
  return true;
}

bool sigma_trivial(const CrossedSystem& sys) {
  for (std::uint32_t g = 0; g < sys.sigma.size(); ++g)
    if (sys.sigma[g].matrix != identity_matrix(sys.base_of(g).field(), sys.base_of(g).dim())) return false;
  return true;
}

struct GSimple {
  std::optional<bool> value;
  std::optional<Span> witness;
  std::size_t checked = 0;
};

GSimple g_simplicity(const Construction& c, const Limits& lim) {
  GSimple out;
  try {
    const Span b = c.base();
    for (const auto& i : enumerate_ideals_in(b, lim)) {
      if (i.is_zero() || i == b) continue;
      ++out.checked;
      if (is_G_invariant(c, i)) {
        out.value = false;
        out.witness = i;
        return out;
      }
    }
    out.value = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLarge && e.code() != ErrorCode::InfiniteScalarField) throw;
  }
  return out;
}

Premise g_simple_premise(const GSimple& gs) {
  return from_optional("B is G-simple", gs.value,
                       gs.value ? std::to_string(gs.checked) + " nonzero proper ideals of B checked" : std::string(),
                       gs.witness ? gs.witness->to_json() : nlohmann::json(nullptr));
}

Premise max_commutative_premise(const Span& b, const Limits& lim) {
  return guarded("B is a maximal commutative subring of A", [&] {
    if (!is_commutative(b)) return verdict_premise("B is a maximal commutative subring of A", false, "B is not commutative");
    Span cb = centralizer(b.ring(), b.generators(), lim);
    bool ok = cb == b;
    return verdict_premise("B is a maximal commutative subring of A", ok,
                           ok ? std::string() : "C_A(B) is strictly larger than B", cb.to_json());
  });
}

Premise center_field_premise(const Ring& a, const Limits& lim) {
  return guarded("Z(A) is a field", [&] {
    Span z = center(a);
    auto view = subring_as_ring(z, "Z(A)");
    auto f = is_field(view.ring, lim);
    std::string detail = a.is_algebra() ? "dim Z = " + std::to_string(z.dim()) : "|Z| = " + std::to_string(z.order());
    return from_optional("Z(A) is a field", f, detail, z.to_json());
  });
}

}  // namespace

std::optional<std::vector<Span>> list_ideals(const Ring& r, const Limits& lim) {
  if (r.is_algebra() && r.field().is_rational()) return ideals_over_q(r);
  try {
    return enumerate_ideals(r, lim);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TooLarge) return std::nullopt;
    throw;
  }
}

SimplicityVerdict decide_simplicity(const Ring& r, const Limits& lim) {
  if (r.is_algebra() && r.field().is_rational()) {
    if (auto ideals = ideals_over_q(r)) {
      SimplicityVerdict v;
      v.method = "field recognition";
      if (ideals->size() == 2) {
        v.kind = Simplicity::Simple;
      } else {
        v.kind = Simplicity::NotSimple;
        v.witness = (*ideals)[1];
        v.reason = "product of fields";
      }
      return v;
    }
  }
  return is_simple(r, lim);
}

std::optional<bool> is_field(const Ring& r, const Limits& lim) {
  if (r.is_algebra() && r.field().is_rational()) {
    if (basis_blocks(r).size() > 1) return false;
    return field_over_q(r);
  }
  const auto& pr = r.probe();
  if (!pr.unit || pr.commutative == Tri::No) return false;
  if (pr.associative == Tri::No) return false;
  if (r.cardinality() > lim.cap) return std::nullopt;
  for (const auto& x : r.enumerate(lim.cap)) {
    if (r.is_zero(x)) continue;
    if (!find_inverse(r, x, *pr.unit)) return false;
  }
  return true;
}

SigmaSimplicity sigma_simplicity(const Ring& b, const RingMap& sigma, const Limits& lim) {
  SigmaSimplicity out;
  auto ideals = list_ideals(b, lim);
  if (!ideals) {
    out.method = "ideals not listable";
    return out;
  }
  out.method = b.is_algebra() && b.field().is_rational() ? "product-of-fields ideal lattice" : "ideal enumeration";
  for (const auto& i : *ideals) {
    if (i.is_zero() || i.is_full()) continue;
    ++out.ideals_checked;
    const auto gens = i.generators();
    bool stable = std::all_of(gens.begin(), gens.end(), [&](const Element& g) { return i.contains(sigma.apply(b, g)); });
    if (stable) {
      out.sigma_simple = false;
      out.witness = i;
      return out;
    }
  }
  out.sigma_simple = true;
  return out;
}

Certificate certify_necessity(const Span& b, const Grading* grading, const Limits& lim, std::string instance) {
  Certificate c = start(std::move(instance), "necessity of A-simplicity", "B is A-simple", lim);
  const Ring& a = b.ring();
  const Span full = Span::full(a);

  Side module_side = Side::Left;
  {
    const std::string name = "B is a direct summand of A as a one-sided B-module";
    std::optional<Span> comp;
    if (b.is_full())
      comp = Span(a);
    else if (grading && grading->a0() == b)
      comp = grading->off_identity();
    if (!comp) {
      c.premises.push_back(undecided(name, "no complement available without a grading"));
    } else {
      bool direct = b.intersect(*comp).is_zero() && (b + *comp).is_full();
      bool left = direct && comp->contains(product_span(b, *comp));
      bool right = direct && comp->contains(product_span(*comp, b));
      module_side = left ? Side::Left : Side::Right;
      std::string detail = left ? "left module, complement of dimension/order " : "right module, complement of dimension/order ";
      detail += std::to_string(comp->is_linear() ? comp->dim() : comp->order());
      c.premises.push_back(verdict_premise(name, left || right, detail, comp->to_json()));
    }
  }
  const Side id_side = module_side == Side::Left ? Side::Right : Side::Left;
  c.premises.push_back(guarded("every ideal of B has the identity property", [&] {
    const std::string name = "every ideal of B has the identity property";
    auto ideals = enumerate_ideals_in(b, lim);
    for (const auto& i : ideals)
      if (!identity_property(i, b, id_side))
        return verdict_premise(name, false, id_side == Side::Right ? "IB != I" : "BI != I", i.to_json());
    return verdict_premise(name, true, std::to_string(ideals.size()) + (id_side == Side::Right ? " ideals, IB = I" : " ideals, BI = I"));
  }));
  c.premises.push_back(guarded("A/B is ideal associative", [&] {
    const std::string name = "A/B is ideal associative";
    for (const auto& i : enumerate_ideals_in(b, lim)) {
      auto chk = check_ideal_associativity(i, 2);
      if (!chk.holds) return verdict_premise(name, false, chk.failing, i.to_json());
    }
    return verdict_premise(name, true, "every ideal of B, two copies of A");
  }));
  c.premises.push_back(guarded("A is simple", [&] {
    auto v = decide_simplicity(a, lim);
    return from_optional("A is simple", simplicity_value(v), v.method + (v.reason.empty() ? "" : ": " + v.reason),
                         v.witness ? v.witness->to_json() : nlohmann::json(nullptr));
  }));
  c.conclusion = true;
  c.route = "ideal associative extension with a complemented B";
  finalize(c);
  try {
    auto o = is_A_simple(b, lim);
    set_oracle(c, o.a_simple, "is_A_simple", std::to_string(o.ideals_checked) + " nonzero proper ideals checked",
               o.witness ? o.witness->to_json() : nlohmann::json(nullptr));
  } catch (const Error& e) {
    set_oracle(c, std::nullopt, "is_A_simple", e.what());
  }
  return c;
}

Certificate certify_sufficiency(const Span& b, const Grading* grading, const DegreeMap* dm, const Limits& lim,
                                std::string instance) {
  Certificate c = start(std::move(instance), "sufficiency via a degree map", "A is simple", lim);
  const Ring& a = b.ring();
  const Span full = Span::full(a);
  std::optional<Span> cab;
  c.premises.push_back(guarded("C_A(B) is A-simple", [&] {
    cab = centralizer(a, b.generators(), lim);
    auto v = is_A_simple(*cab, lim);
    return verdict_premise("C_A(B) is A-simple", v.a_simple,
                           std::to_string(v.ideals_checked) + " nonzero proper ideals of C_A(B) checked",
                           v.witness ? v.witness->to_json() : nlohmann::json(nullptr));
  }));
  c.premises.push_back(guarded("every intersection of C_A(B) with an ideal of A is A-invariant", [&] {
    const std::string name = "every intersection of C_A(B) with an ideal of A is A-invariant";
    if (!cab) return undecided(name, "C_A(B) unavailable");
    auto ideals = enumerate_ideals(a, lim);
    for (const auto& i : ideals) {
      Span j = i.intersect(*cab);
      if (!is_A_invariant(j)) return verdict_premise(name, false, "I ∩ C_A(B) is not A-invariant", i.to_json());
    }
    return verdict_premise(name, true, std::to_string(ideals.size()) + " ideals of A");
  }));
  c.premises.push_back(guarded("A C_A(B) A = A", [&] {
    if (!cab) return undecided("A C_A(B) A = A", "C_A(B) unavailable");
    Span t = triple_span(full, *cab, full);
    return verdict_premise("A C_A(B) A = A", t.is_full(), {}, t.to_json());
  }));
  c.premises.push_back(guarded("there is a degree map for A/B", [&] {
    const std::string name = "there is a degree map for A/B";
    std::optional<DegreeMap> auto_dm;
    const DegreeMap* use = dm;
    if (!use && grading) {
      auto_dm.emplace(support_degree_map(*grading, DegreeSubring::CenterOfA0, lim));
      auto_dm->x = b.generators();
      auto_dm->name = "support size, X = generators of B";
      use = &*auto_dm;
    }
    if (!use) return undecided(name, "no degree map candidate");
    auto v = verify_degree_map(*use, lim);
    return verdict_premise(name, v.kind == DegreeVerdictKind::Valid,
                           use->name + ": " + std::string(to_string(v.kind)) + " on " +
                               std::to_string(v.elements_checked) + " elements",
                           v.to_json());
  }));
  c.conclusion = true;
  c.route = "degree-map reduction";
  finalize(c);
  simplicity_oracle(c, a, lim);
  return c;
}

namespace {

struct Variant {
  std::string name;
  std::vector<Premise> premises;
  bool holds() const {
    return std::all_of(premises.begin(), premises.end(), [](const Premise& p) { return is_good(p.status); });
  }
};

std::string first_bad(const Variant& v) {
  for (const auto& p : v.premises)
    if (!is_good(p.status)) return p.name + " (" + std::string(to_string(p.status)) + ")";
  return {};
}

}  // namespace

Certificate certify_groupoid_graded(const Grading& gr, const Limits& lim, std::string instance) {
  Certificate c = start(std::move(instance), "groupoid graded simplicity", "A is simple", lim);
  const auto& cat = gr.category();
  const Ring& a = gr.ring();
  const GradingFlags flags = grading_flags(gr, lim);
  const Span a0 = gr.a0();

  const Premise groupoid = verdict_premise("G is a groupoid", cat.is_groupoid());
  const Premise lu = verdict_premise("A is locally unital", flags.locally_unital);
  const Premise strong = verdict_premise("A is strongly graded", flags.strongly_graded, {},
                                         flags.strong_failure ? nlohmann::json(*flags.strong_failure) : nlohmann::json(nullptr));
  const Premise connected = verdict_premise("G is connected", cat.is_connected());
  const Premise a0_simple = guarded("A_0 is A-simple", [&] {
    auto v = is_A_simple(a0, lim);
    return verdict_premise("A_0 is A-simple", v.a_simple, std::to_string(v.ideals_checked) + " ideals checked",
                           v.witness ? v.witness->to_json() : nlohmann::json(nullptr));
  });

  Variant local{"vertex rings simple, strongly graded, connected", {groupoid, lu, strong, connected}};
  for (std::uint32_t e = 0; e < cat.num_objects(); ++e) {
    const std::string name = "A_{G_" + std::to_string(e) + "} is simple";
    local.premises.push_back(guarded(name, [&] {
      auto view = subring_as_ring(gr.vertex_ring(e), "vertex ring");
      auto v = decide_simplicity(view.ring, lim);
      return from_optional(name, simplicity_value(v), v.method,
                           v.witness ? v.witness->to_json() : nlohmann::json(nullptr));
    }));
  }

  Variant va{"(a) non-degenerate, A_0 maximal commutative", {groupoid, lu, a0_simple}};
  va.premises.push_back(verdict_premise("the grading is left or right non-degenerate",
                                        flags.left_nondegenerate || flags.right_nondegenerate));
  va.premises.push_back(guarded("A_0 is a maximal commutative subring of A", [&] {
    const std::string name = "A_0 is a maximal commutative subring of A";
    if (!is_commutative(a0)) return verdict_premise(name, false, "A_0 is not commutative");
    return verdict_premise(name, is_maximal_commutative(a0, lim));
  }));
  va.premises.push_back(guarded("every intersection of A_0 with an ideal of A is A-invariant", [&] {
    const std::string name = "every intersection of A_0 with an ideal of A is A-invariant";
    for (const auto& i : enumerate_ideals(a, lim))
      if (!is_A_invariant(i.intersect(a0))) return verdict_premise(name, false, {}, i.to_json());
    return verdict_premise(name, true);
  }));

  Variant vb{"(b) strongly graded by a locally abelian connected groupoid", {groupoid, lu, a0_simple, strong, connected}};
  vb.premises.push_back(verdict_premise("G is locally abelian", cat.is_locally_abelian()));
  vb.premises.push_back(guarded("A/A_0 is graded ideal associative", [&] {
    const std::string name = "A/A_0 is graded ideal associative";
    for (const auto& i : enumerate_ideals_in(a0, lim)) {
      auto chk = graded_ideal_associativity(gr, i);
      if (!chk.holds) return verdict_premise(name, false, chk.failing, i.to_json());
    }
    return verdict_premise(name, true);
  }));
  for (std::uint32_t e = 0; e < cat.num_objects(); ++e) {
    const std::string name = "Z(A_{G_" + std::to_string(e) + "}) is simple";
    vb.premises.push_back(guarded(name, [&] {
      auto view = subring_as_ring(gr.vertex_ring(e), "vertex ring");
      std::string detail;
      auto v = center_is_simple(view.ring, lim, detail);
      return from_optional(name, v, detail);
    }));
  }

  std::vector<Variant*> order;
  if (cat.num_objects() > 1) order = {&local, &va, &vb};
  else order = {&va, &vb, &local};
  const Variant* chosen = nullptr;
  for (auto* v : order)
    if (v->holds()) {
      chosen = v;
      break;
    }
  if (chosen) {
    c.premises = chosen->premises;
    c.route = chosen->name;
    c.conclusion = true;
  } else {
    c.premises = order.front()->premises;
    c.route = order.front()->name;
  }
  for (auto* v : order) {
    if (v == chosen) continue;
    c.notes.push_back(v->name + ": " + (v->holds() ? "premises also hold" : "fails at " + first_bad(*v)));
  }
  finalize(c);
  simplicity_oracle(c, a, lim);
  return c;
}

Certificate certify_crossed_product(const Construction& con, const Limits& lim, std::string instance) {
  Certificate c = start(std::move(instance), "crossed product simplicity", "A is simple", lim);
  if (!con.system) throw Error(ErrorCode::InvalidArgument, "construction has no crossed system");
  const auto& sys = *con.system;
  const auto& cat = sys.category;
  const Ring& a = con.ring;
  const Span b = con.base();
  auto rep = validate_crossed_system(sys);
  const Premise valid = verdict_premise("crossed system is valid", rep.ok, {}, rep.to_json());
  const GSimple gs = g_simplicity(con, lim);

  bool b_assoc = std::all_of(sys.bases.begin(), sys.bases.end(),
                             [](const Ring& r) { return r.probe().associative == Tri::Yes && r.probe().unit; });
  const bool skew = cat.is_group() && alpha_trivial(sys) && b_assoc;
  const bool commutative = is_commutative(b);
  bool surjective = true;
  for (std::uint32_t g = 0; g < sys.sigma.size(); ++g)
    if (rank(a.field(), sys.sigma[g].matrix) != sys.base_of(g).dim()) surjective = false;

  if (skew && (commutative || cat.is_abelian_group())) {
    c.premises = {valid, verdict_premise("G is a group", true), verdict_premise("alpha is trivial", true),
                  verdict_premise("B is associative and unital", true)};
    c.criteria.push_back(g_simple_premise(gs));
    if (commutative) {
      c.premises.push_back(verdict_premise("B is commutative", true));
      c.criteria.push_back(max_commutative_premise(b, lim));
      c.route = "skew group ring over a commutative B: simple iff B G-simple and maximal commutative";
    } else {
      c.premises.push_back(verdict_premise("G is abelian", true));
      c.criteria.push_back(center_field_premise(a, lim));
      c.route = "skew group ring by an abelian group: simple iff B G-simple and Z(A) a field";
    }
    c.conclusion = std::all_of(c.criteria.begin(), c.criteria.end(),
                               [](const Premise& p) { return p.status == PremiseStatus::Verified; });
  } else if (gs.value && !*gs.value && surjective) {
    c.premises = {valid, verdict_premise("every sigma_g is surjective", true), g_simple_premise(gs)};
    c.premises.back().status = PremiseStatus::Verified;
    c.premises.back().name = "B is not G-simple";
    c.premises.back().witness = gs.witness->to_json();
    c.conclusion = false;
    c.route = "a simple crossed product with surjective sigma has a G-simple B";
  } else if (commutative) {
    c.premises = {valid, verdict_premise("G is a groupoid", cat.is_groupoid()), g_simple_premise(gs),
                  max_commutative_premise(b, lim)};
    c.conclusion = true;
    c.route = "groupoid crossed product, B G-simple and maximal commutative";
  } else {
    c.premises = {valid, verdict_premise("G is a groupoid", cat.is_groupoid()), g_simple_premise(gs),
                  verdict_premise("G is locally abelian", cat.is_locally_abelian()),
                  verdict_premise("G is connected", cat.is_connected())};
    for (std::uint32_t e = 0; e < cat.num_objects(); ++e) {
      const std::string name = "Z(A_{G_" + std::to_string(e) + "}) is simple";
      c.premises.push_back(guarded(name, [&] {
        auto view = subring_as_ring(con.grading.vertex_ring(e), "vertex ring");
        std::string detail;
        auto v = center_is_simple(view.ring, lim, detail);
        return from_optional(name, v, detail);
      }));
    }
    c.conclusion = true;
    c.route = "groupoid crossed product, locally abelian connected, vertex centers simple";
  }
  finalize(c);
  simplicity_oracle(c, a, lim);
  return c;
}

Certificate certify_cayley(const CayleyResult& r, bool base_certified, const Limits& lim, std::string instance) {
  const auto& con = r.construction;
  Certificate c = start(instance.empty() ? con.ring.name() : std::move(instance), "Cayley-Dickson simplicity",
                        "A is simple", lim);
  if (!con.system) {
    // The bottom of a tower: the scalar field itself.
    auto v = decide_simplicity(con.ring, lim);
    c.premises.push_back(from_optional("A is a field", is_field(con.ring, lim), v.method));
    c.conclusion = true;
    c.route = "a field is simple";
    finalize(c);
    simplicity_oracle(c, con.ring, lim);
    return c;
  }
  const Ring& b = con.system->bases.at(0);
  const RingMap& sigma = con.system->sigma.at(1);
  const Ring& a = con.ring;
  SigmaSimplicity ss;
  c.premises.push_back(guarded("B is sigma-simple", [&] {
    ss = sigma_simplicity(b, sigma, lim);
    if (!ss.sigma_simple && base_certified)
      return verdict_premise("B is sigma-simple", true, "B certified simple at the previous level");
    return from_optional("B is sigma-simple", ss.sigma_simple, ss.method,
                         ss.witness ? ss.witness->to_json() : nlohmann::json(nullptr));
  }));
  if (ss.sigma_simple && *ss.sigma_simple) {
    if (auto ideals = list_ideals(b, lim); ideals && ideals->size() > 2)
      c.notes.push_back("B is not simple (" + std::to_string(ideals->size()) +
                        " ideals) but has no nonzero proper sigma-stable ideal");
  }
  c.premises.push_back(guarded("Z(A) is simple", [&] {
    std::string detail;
    auto v = center_is_simple(a, lim, detail);
    return from_optional("Z(A) is simple", v, detail);
  }));
  c.conclusion = true;
  c.route = "B sigma-simple and Z(A) simple";
  finalize(c);
  simplicity_oracle(c, a, lim);
  if (c.oracle_value && *c.oracle_value && ss.sigma_simple && !*ss.sigma_simple) {
    c.oracle = OracleStatus::Disagrees;
    c.oracle_detail = "A is simple but B has a sigma-stable ideal";
  } else if (c.oracle_value && *c.oracle_value) {
    c.notes.push_back("converse direction: A simple, B sigma-simple " +
                      std::string(ss.sigma_simple ? "confirmed" : "not decidable here"));
  }
  return c;
}

std::vector<Certificate> certify_cayley_tower(const std::vector<CayleyResult>& tower, const Limits& lim) {
  std::vector<Certificate> out;
  bool prev = false;
  for (std::size_t i = 0; i < tower.size(); ++i) {
    out.push_back(certify_cayley(tower[i], prev, lim, tower[i].construction.ring.name()));
    out.back().notes.push_back("level " + std::to_string(i) + ", dim Z = " +
                               std::to_string(center(tower[i].construction.ring).dim()));
    prev = out.back().conclusion.value_or(false);
  }
  return out;
}

Certificate certify_twisted(const Construction& con, const Limits& lim, std::string instance) {
  Certificate c = start(std::move(instance), "twisted group ring simplicity", "A is simple", lim);
  if (!con.system) throw Error(ErrorCode::InvalidArgument, "construction has no crossed system");
  const auto& sys = *con.system;
  const auto& g = sys.category;
  const Ring& b = sys.bases.at(0);
  c.premises.push_back(verdict_premise("G is a finite abelian group", g.is_abelian_group()));
  c.premises.push_back(verdict_premise("sigma is trivial", sigma_trivial(sys)));
  c.premises.push_back(guarded("B is simple", [&] {
    auto v = decide_simplicity(b, lim);
    return from_optional("B is simple", simplicity_value(v), v.method,
                         v.witness ? v.witness->to_json() : nlohmann::json(nullptr));
  }));
  c.premises.push_back(guarded("Z(B) is simple", [&] {
    std::string detail;
    auto v = center_is_simple(b, lim, detail);
    return from_optional("Z(B) is simple", v, detail);
  }));
  c.premises.push_back(guarded("every g != e has h != e with alpha(g,h) - alpha(h,g) a unit", [&] {
    const std::string name = "every g != e has h != e with alpha(g,h) - alpha(h,g) a unit";
    const auto& unit = b.probe().unit;
    if (!unit || !g.is_group()) return undecided(name, "B has no unit or G is not a group");
    const auto e = identity_of_group(g);
    auto pairs = nlohmann::json::array();
    for (std::uint32_t x = 0; x < g.num_morphisms(); ++x) {
      if (x == e) continue;
      bool found = false;
      for (std::uint32_t y = 0; y < g.num_morphisms() && !found; ++y) {
        if (y == e) continue;
        Element diff = b.sub(sys.alpha_of(x, y), sys.alpha_of(y, x));
        if (b.is_zero(diff)) continue;
        if (find_inverse(b, diff, *unit)) {
          pairs.push_back({x, y});
          found = true;
        }
      }
      if (!found) return verdict_premise(name, false, "no h for g = " + std::to_string(x), x);
    }
    Premise p = verdict_premise(name, true);
    p.witness = pairs;
    return p;
  }));
  c.conclusion = true;
  c.route = "unit differences of the cocycle";
  finalize(c);
  simplicity_oracle(c, con.ring, lim);
  return c;
}

Certificate certify_matrix(const Construction& con, const std::vector<std::optional<bool>>& certified_bases,
                           const Limits& lim, std::string instance) {
  Certificate c = start(std::move(instance), "matrix ring simplicity", "A is simple", lim);
  if (!con.system) throw Error(ErrorCode::InvalidArgument, "construction has no crossed system");
  const auto& sys = *con.system;
  const auto& cat = sys.category;
  bool trivial_vertex = cat.is_groupoid() && cat.is_connected();
  for (std::uint32_t e = 0; e < cat.num_objects() && trivial_vertex; ++e)
    trivial_vertex = cat.vertex_group(e).size() == 1;
  c.premises.push_back(verdict_premise("G is a connected groupoid with trivial vertex groups", trivial_vertex));
  c.premises.push_back(verdict_premise("crossed system is valid", validate_crossed_system(sys).ok));
  for (std::uint32_t i = 0; i < sys.bases.size(); ++i) {
    const std::string name = "B_" + std::to_string(i) + " is simple";
    if (i < certified_bases.size() && certified_bases[i]) {
      c.criteria.push_back(verdict_premise(name, *certified_bases[i], "certified separately"));
      continue;
    }
    c.criteria.push_back(guarded(name, [&] {
      auto v = decide_simplicity(sys.bases[i], lim);
      return from_optional(name, simplicity_value(v), v.method,
                           v.witness ? v.witness->to_json() : nlohmann::json(nullptr));
    }));
  }
  c.conclusion = std::all_of(c.criteria.begin(), c.criteria.end(),
                             [](const Premise& p) { return p.status == PremiseStatus::Verified; });
  c.route = "simple iff every B_i is simple";
  finalize(c);
  simplicity_oracle(c, con.ring, lim);
  return c;
}

std::optional<Span> nonfaithful_witness_ideal(const Construction& con) {
  if (!con.system || !con.system->category.is_group()) return std::nullopt;
  const auto& sys = *con.system;
  const auto& g = sys.category;
  const Ring& b = sys.bases.at(0);
  const auto e = identity_of_group(g);
  for (std::uint32_t t = 0; t < g.num_morphisms(); ++t) {
    if (t == e || sys.sigma[t].matrix != identity_matrix(b.field(), b.dim())) continue;
    std::vector<Element> gens;
    for (std::uint32_t k = 0; k < g.num_morphisms(); ++k)
      for (std::size_t i = 0; i < b.dim(); ++i)
        gens.push_back(con.ring.sub(con.lift(k, b.basis(i)), con.lift(g.mul(k, t), b.basis(i))));
    return Span::of(con.ring, gens);
  }
  return std::nullopt;
}

std::optional<Span> vanishing_ideal_witness(const Construction& con) {
  if (!con.system || !con.system->category.is_group()) return std::nullopt;
  const auto& sys = *con.system;
  const Ring& b = sys.bases.at(0);
  const auto n = b.dim();
  std::vector<char> orbit(n, 0);
  for (const auto& s : sys.sigma)
    for (std::size_t row = 0; row < n; ++row)
      if (!s.matrix[row][0].is_zero()) orbit[row] = 1;
  if (std::all_of(orbit.begin(), orbit.end(), [](char v) { return v != 0; })) return std::nullopt;
  std::vector<Element> gens;
  const auto e = identity_of_group(sys.category);
  for (std::size_t x = 0; x < n; ++x)
    if (!orbit[x]) gens.push_back(con.lift(e, b.basis(x)));
  return Span::of(con.ring, gens);
}

Certificate certify_dynamics(const DynamicsResult& d, const Limits& lim, std::string instance) {
  Certificate c = start(std::move(instance), "finite dynamics skew group ring", "A is simple", lim);
  const auto& con = d.construction;
  const auto& sys = *con.system;
  const Span b = con.base();
  c.premises.push_back(verdict_premise("G is an abelian group", sys.category.is_abelian_group()));
  c.premises.push_back(verdict_premise("alpha is trivial", alpha_trivial(sys)));
  c.premises.push_back(verdict_premise("B is commutative, associative and unital",
                                       is_commutative(b) && sys.bases[0].probe().associative == Tri::Yes &&
                                           sys.bases[0].probe().unit.has_value()));
  const GSimple gs = g_simplicity(con, lim);
  Premise gp = g_simple_premise(gs);
  if (gp.status == PremiseStatus::Failed)
    if (auto w = vanishing_ideal_witness(con)) {
      gp.witness = w->to_json();
      gp.detail = "functions vanishing on an orbit";
    }
  c.criteria.push_back(gp);
  Premise mc = max_commutative_premise(b, lim);
  c.criteria.push_back(mc);
  c.conclusion = gp.status == PremiseStatus::Verified && mc.status == PremiseStatus::Verified;
  c.route = "commutative B: simple iff B G-simple and maximal commutative";
  c.notes.push_back(std::string("action ") + (d.minimal ? "minimal" : "not minimal") + ", " +
                    (d.faithful ? "faithful" : "not faithful"));
  if (gs.value && *gs.value != d.minimal) c.notes.push_back("G-simplicity of B differs from minimality");
  if (mc.status != PremiseStatus::Undecided)
    c.notes.push_back(std::string("B maximal commutative: ") + (mc.status == PremiseStatus::Verified ? "yes" : "no"));
  finalize(c);
  simplicity_oracle(c, con.ring, lim);
  if (!d.faithful) {
    if (auto w = nonfaithful_witness_ideal(con)) {
      const Span full = Span::full(con.ring);
      bool ideal = is_ideal_in(full, *w), proper = !w->is_full(), nonzero = !w->is_zero();
      c.notes.push_back(std::string("non-faithful witness b(u_k - u_kg): ideal ") + (ideal ? "yes" : "no") +
                        ", nonzero " + (nonzero ? "yes" : "no") + ", proper " + (proper ? "yes" : "no"));
      if (c.oracle_value && *c.oracle_value && ideal && proper && nonzero) {
        c.oracle = OracleStatus::Disagrees;
        c.oracle_detail = "oracle says simple but the non-faithful witness ideal is proper";
      }
    }
  }
  return c;
}

Certificate certify_ore(const SigmaDerivationData& data, const Limits& lim, std::string instance) {
  Certificate c = start(std::move(instance), "Ore extension necessity", "A is simple", lim);
  auto rep = validate_sigma_derivation(data);
  c.premises.push_back(verdict_premise("sigma-delta data is valid", rep.ok, {}, rep.to_json()));
  SigmaDeltaVerdict sd;
  bool decided = false;
  try {
    sd = is_sigma_delta_simple(data, lim);
    decided = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLarge && e.code() != ErrorCode::InfiniteScalarField) throw;
  }
  if (decided && !sd.simple) {
    Premise p = verdict_premise("B has a nonzero proper sigma-delta-invariant ideal I", true);
    p.witness = sd.witness->to_json();
    c.premises.push_back(p);
    c.conclusion = false;
    c.route = "a simple Ore extension has a sigma-delta-simple B; IA is a proper nonzero ideal";
    finalize(c);
    auto tr = check_A_invariance_truncated(*sd.witness, data, 4);
    set_oracle(c, tr.holds ? std::optional<bool>(false) : std::nullopt, "truncated A-invariance of I (n <= 4)",
               tr.holds ? "B x^n I lies in IA" : "truncated check failed");
    if (!tr.holds) {
      c.oracle = OracleStatus::Disagrees;
      c.oracle_detail = "sigma-delta-invariant ideal fails A-invariance at degree " +
                        std::to_string(tr.failing_degree.value_or(0));
    }
    return c;
  }
  c.premises.push_back(from_optional("B is sigma-delta-simple", decided ? std::optional<bool>(sd.simple) : std::nullopt,
                                     decided ? std::to_string(sd.ideals_checked) + " ideals checked" : std::string()));
  c.premises.push_back(undecided("Z(A) is a field", "A is infinite; out of scope"));
  c.conclusion = true;
  c.route = "differential polynomial ring: B sigma-delta-simple and Z(A) a field";
  finalize(c);
  set_oracle(c, std::nullopt, "none", "A = B[x; sigma, delta] is infinite");
  return c;
}

namespace {

Construction trivially_graded(const Ring& r) {
  auto triv = CategoryPresentation::cyclic_group(1);
  Grading g = validate_grading(r, triv, {Span::full(r)});
  return Construction{r, g, std::nullopt, {0}, {}, {{"construction", "trivially graded"}}};
}

CorpusInstance with_construction(Construction c, std::vector<std::string> pipelines) {
  CorpusInstance inst;
  inst.construction = std::move(c);
  inst.pipelines = std::move(pipelines);
  return inst;
}

DynamicsResult dynamics_of(std::uint32_t x, const CategoryPresentation& g, const std::vector<std::vector<std::uint32_t>>& act,
                           const ScalarSpec& f) {
  return dynamics_skew_group_ring(x, g, act, f);
}

CorpusInstance dynamics_instance(DynamicsResult d) {
  CorpusInstance inst;
  inst.construction = d.construction;
  inst.dynamics = std::move(d);
  inst.pipelines = {"dynamics", "crossed"};
  return inst;
}

std::shared_ptr<SigmaDerivationData> ore_data(Ring b, Matrix sigma, Matrix delta) {
  return std::make_shared<SigmaDerivationData>(SigmaDerivationData{std::move(b), std::move(sigma), std::move(delta)});
}

Matrix zeros(const ScalarSpec& f, std::size_t d) { return Matrix(d, zero_vec(f, d)); }

std::vector<CorpusEntry> make_corpus() {
  const auto F2 = ScalarSpec::modular(2), F3 = ScalarSpec::modular(3), Q = ScalarSpec::rationals();
  std::vector<CorpusEntry> v;
  v.push_back({"f4-frobenius", "F4 skew Z2 by the Frobenius automorphism", [] {
                 auto f4 = finite_field(2, 2);
                 auto c = skew_group_ring(f4.ring, CategoryPresentation::cyclic_group(2),
                                          {RingMap::identity(f4.ring), f4.frobenius});
                 return with_construction(c, {"crossed", "necessity", "sufficiency", "groupoid"});
               }});
  v.push_back({"f2cubed-rotation", "F2^3 skew Z3 rotating the coordinates", [F2] {
                 auto d = dynamics_of(3, CategoryPresentation::cyclic_group(3), {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, F2);
                 auto inst = dynamics_instance(d);
                 inst.pipelines.push_back("sufficiency");
                 inst.pipelines.push_back("necessity");
                 return inst;
               }});
  v.push_back({"f2-group-algebra-z2", "F2[Z2], trivial action", [F2] {
                 Ring b = scalar_algebra(F2);
                 auto c = skew_group_ring(b, CategoryPresentation::cyclic_group(2), {RingMap::identity(b), RingMap::identity(b)});
                 return with_construction(c, {"crossed", "twisted"});
               }});
  v.push_back({"m2-f2-pair", "M2(F2) graded by the pair groupoid", [F2] {
                 return with_construction(matrix_ring(scalar_algebra(F2), 2),
                                          {"groupoid", "matrix", "sufficiency", "necessity", "crossed"});
               }});
  v.push_back({"m3-f2-parity", "M3(F2) graded by Z2 through index parity", [F2] {
                 return with_construction(m3_parity_grading(scalar_algebra(F2)), {"groupoid", "necessity"});
               }});
  v.push_back({"z4-trivial", "Z/4Z trivially graded", [] {
                 return with_construction(trivially_graded(Ring::integers_mod(4)), {"necessity", "sufficiency"});
               }});
  v.push_back({"m2-f3", "M2(F3)", [F3] { return with_construction(matrix_ring(scalar_algebra(F3), 2), {"matrix"}); }});
  v.push_back({"m2-z4", "M2(Z/4Z)", [] {
                 return with_construction(matrix_ring(scalar_algebra(ScalarSpec::modular(4)), 2), {"matrix"});
               }});
  v.push_back({"m2-octonions-f3", "M2 over the octonions over F3", [F3] {
                 auto t = cayley_tower(F3, 3);
                 return with_construction(matrix_ring(t.back().construction.ring, 2), {"matrix"});
               }});
  v.push_back({"quaternions-f3", "quaternions over F3", [F3] {
                 CorpusInstance inst;
                 inst.cayley = cayley_tower(F3, 2).back();
                 inst.pipelines = {"cayley"};
                 return inst;
               }});
  v.push_back({"octonions-f3", "octonions over F3", [F3] {
                 CorpusInstance inst;
                 inst.cayley = cayley_tower(F3, 3).back();
                 inst.pipelines = {"cayley"};
                 return inst;
               }});
  v.push_back({"tower-q", "Cayley-Dickson tower over Q up to the sedenions", [Q] {
                 CorpusInstance inst;
                 inst.tower = cayley_tower(Q, 4);
                 inst.pipelines = {"tower"};
                 return inst;
               }});
  v.push_back({"q-i", "Q(i) as the double of Q", [Q] {
                 CorpusInstance inst;
                 inst.cayley = cayley_tower(Q, 1).back();
                 inst.pipelines = {"cayley"};
                 return inst;
               }});
  v.push_back({"qi-squared-swap", "double of Q(i) x Q(i) with the factor swap", [Q] {
                 Ring qi = cayley_tower(Q, 1).back().construction.ring;
                 Ring b = direct_product(qi, qi, "Q(i) x Q(i)");
                 RingMap s = swap_factors(qi);
                 s.kind = MapKind::AntiHomomorphism;
                 Element minus_one = b.scalar(Scalar::from_int(Q, -1), *b.probe().unit);
                 CorpusInstance inst;
                 inst.cayley = cayley_dickson(b, s, minus_one, CayleyFlavor::Classical, {}, "double of Q(i) x Q(i)");
                 inst.pipelines = {"cayley"};
                 return inst;
               }});
  v.push_back({"bales-2-q", "Q twisted by the Bales cocycle on (Z2)^2", [Q] {
                 return with_construction(bales_twisted_group_ring(Q, 2), {"twisted"});
               }});
  v.push_back({"bales-4-q", "Q twisted by the Bales cocycle on (Z2)^4", [Q] {
                 return with_construction(bales_twisted_group_ring(Q, 4), {"twisted"});
               }});
  v.push_back({"bales-2-f3", "F3 twisted by the Bales cocycle on (Z2)^2", [F3] {
                 return with_construction(bales_twisted_group_ring(F3, 2), {"twisted", "crossed"});
               }});
  v.push_back({"trivial-cocycle-f3", "F3[Z2] as a twisted group ring with alpha = 1", [F3] {
                 Ring b = scalar_algebra(F3);
                 Element one = *b.probe().unit;
                 auto c = twisted_group_ring(b, CategoryPresentation::cyclic_group(2), {{one, one}, {one, one}});
                 return with_construction(c, {"twisted", "crossed"});
               }});
  v.push_back({"dyn-nonfaithful", "Z4 acting on two points through Z2, over F2", [F2] {
                 return dynamics_instance(dynamics_of(2, CategoryPresentation::cyclic_group(4),
                                                      {{0, 1}, {1, 0}, {0, 1}, {1, 0}}, F2));
               }});
  v.push_back({"dyn-fixed-point", "Z2 swapping two of three points, over F2", [F2] {
                 return dynamics_instance(dynamics_of(3, CategoryPresentation::cyclic_group(2), {{0, 1, 2}, {1, 0, 2}}, F2));
               }});
  v.push_back({"dyn-klein-regular-f3", "Z2 x Z2 acting regularly on four points, over F3", [F3] {
                 auto g = CategoryPresentation::abelian_group({2, 2});
                 std::vector<std::vector<std::uint32_t>> act(4, std::vector<std::uint32_t>(4));
                 for (std::uint32_t a = 0; a < 4; ++a)
                   for (std::uint32_t x = 0; x < 4; ++x) act[a][x] = g.mul(a, x);
                 return dynamics_instance(dynamics_of(4, g, act, F3));
               }});
  v.push_back({"disconnected", "F2 x F2[y]/(y^2) graded by two isolated objects", [F2] {
                 Ring f2 = scalar_algebra(F2);
                 Ring t = truncated_polynomials(F2, 2).ring;
                 Ring a = direct_product(f2, t, "F2 x F2[y]/(y^2)");
                 auto cat = CategoryPresentation::disjoint_union(CategoryPresentation::cyclic_group(1),
                                                                 CategoryPresentation::cyclic_group(1));
                 Grading g = validate_grading(a, cat, {Span::of(a, {a.basis(0)}), Span::of(a, {a.basis(1), a.basis(2)})});
                 return with_construction(Construction{a, g, std::nullopt, {}, {}, {}}, {"groupoid", "necessity"});
               }});
  v.push_back({"ore-truncated-f3", "F3[y]/(y^3) with d/dy", [F3] {
                 auto t = truncated_polynomials(F3, 3);
                 CorpusInstance inst;
                 inst.ore = ore_data(t.ring, identity_matrix(F3, 3), t.derivative.matrix);
                 inst.pipelines = {"ore"};
                 return inst;
               }});
  v.push_back({"ore-truncated-f3-zero", "F3[y]/(y^3) with sigma = id, delta = 0", [F3] {
                 auto t = truncated_polynomials(F3, 3);
                 CorpusInstance inst;
                 inst.ore = ore_data(t.ring, identity_matrix(F3, 3), zeros(F3, 3));
                 inst.pipelines = {"ore"};
                 return inst;
               }});
  v.push_back({"ore-f4-frobenius", "F4 with sigma = Frobenius, delta = sigma - id", [F2] {
                 auto f4 = finite_field(2, 2);
                 Matrix delta = f4.frobenius.matrix;
                 for (std::size_t i = 0; i < 2; ++i) delta[i][i] -= Scalar::one(F2);
                 CorpusInstance inst;
                 inst.ore = ore_data(f4.ring, f4.frobenius.matrix, delta);
                 inst.pipelines = {"ore"};
                 return inst;
               }});
  v.push_back({"ore-f2xf2-swap", "F2 x F2 with sigma = swap, delta = 0", [F2] {
                 Ring f2 = scalar_algebra(F2);
                 Ring b = direct_product(f2, f2, "F2 x F2");
                 CorpusInstance inst;
                 inst.ore = ore_data(b, swap_factors(f2).matrix, zeros(F2, 2));
                 inst.pipelines = {"ore"};
                 return inst;
               }});
  return v;
}

const Ring* main_ring(const CorpusInstance& inst) {
  if (inst.construction) return &inst.construction->ring;
  if (inst.cayley) return &inst.cayley->construction.ring;
  if (!inst.tower.empty()) return &inst.tower.back().construction.ring;
  return nullptr;
}

}  // namespace

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = make_corpus();
  return corpus;
}

std::vector<Certificate> run_pipelines(const CorpusInstance& inst, const Limits& lim) {
  std::vector<Certificate> out;
  for (const auto& p : inst.pipelines) {
    if (p == "necessity") out.push_back(certify_necessity(inst.construction->base(), &inst.construction->grading, lim, inst.id));
    else if (p == "sufficiency")
      out.push_back(certify_sufficiency(inst.construction->base(), &inst.construction->grading, nullptr, lim, inst.id));
    else if (p == "groupoid") out.push_back(certify_groupoid_graded(inst.construction->grading, lim, inst.id));
    else if (p == "crossed") out.push_back(certify_crossed_product(*inst.construction, lim, inst.id));
    else if (p == "cayley") out.push_back(certify_cayley(*inst.cayley, false, lim, inst.id));
    else if (p == "tower") {
      for (auto& c : certify_cayley_tower(inst.tower, lim)) {
        c.instance = inst.id + "/" + c.instance;
        out.push_back(std::move(c));
      }
    } else if (p == "twisted") out.push_back(certify_twisted(*inst.construction, lim, inst.id));
    else if (p == "matrix") out.push_back(certify_matrix(*inst.construction, {}, lim, inst.id));
    else if (p == "dynamics") out.push_back(certify_dynamics(*inst.dynamics, lim, inst.id));
    else if (p == "ore") out.push_back(certify_ore(*inst.ore, lim, inst.id));
    else throw Error(ErrorCode::InvalidArgument, "unknown pipeline " + p);
  }
  return out;
}

CorpusReport cross_check_corpus(const Limits& lim, bool timings) {
  const auto& corpus = builtin_corpus();
  std::vector<nlohmann::json> rows(corpus.size());
  std::vector<std::size_t> disagree(corpus.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      nlohmann::json row{{"id", corpus[i].id}, {"description", corpus[i].description}};
      try {
        CorpusInstance inst = corpus[i].build();
        inst.id = corpus[i].id;
        inst.description = corpus[i].description;
        if (const Ring* r = main_ring(inst)) {
          row["ring"] = r->name();
          if (r->is_algebra()) row["dimension"] = r->dim();
          auto v = decide_simplicity(*r, lim);
          row["oracle"] = v.to_json();
          row["oracle_method"] = v.method;
        } else {
          row["oracle"] = {{"Inconclusive", {{"reason", "infinite ring"}}}};
          row["oracle_method"] = "none";
        }
        auto certs = run_pipelines(inst, lim);
        auto arr = nlohmann::json::array();
        std::string verdict = "withheld";
        for (const auto& c : certs) {
          if (c.oracle == OracleStatus::Disagrees) ++disagree[i];
          if (verdict == "withheld" && c.property == "A is simple" && c.conclusion)
            verdict = *c.conclusion ? "Simple" : "NotSimple";
          arr.push_back(c.to_json());
        }
        row["pipeline_verdict"] = verdict;
        row["certificates"] = arr;
        row["agreement"] = disagree[i] ? "disagrees" : "agrees";
      } catch (const Error& e) {
        row["error"] = {{"code", to_string(e.code())}, {"message", e.what()}, {"witness", e.witness()}};
        row["agreement"] = "error";
        ++disagree[i];
      }
      if (timings)
        row["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      rows[i] = std::move(row);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  CorpusReport rep;
  rep.instances = corpus.size();
  auto inst = nlohmann::json::array();
  std::size_t simple = 0, not_simple = 0, inconclusive = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rep.disagreements += disagree[i];
    const auto& o = rows[i].value("oracle", nlohmann::json());
    if (o.is_string() && o == "Simple") ++simple;
    else if (o.is_object() && o.contains("NotSimple")) ++not_simple;
    else ++inconclusive;
    inst.push_back(std::move(rows[i]));
  }
  rep.report = {{"instances", inst},
                {"summary",
                 {{"instances", rep.instances},
                  {"disagreements", rep.disagreements},
                  {"oracle_simple", simple},
                  {"oracle_not_simple", not_simple},
                  {"oracle_inconclusive", inconclusive}}}};
  return rep;
}

}  // namespace nalab
