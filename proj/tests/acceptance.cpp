// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nalab/certify.hpp"
#include "nalab/recipe.hpp"
#include "oracle.hpp"

using namespace nalab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const ScalarSpec kQ = ScalarSpec::rationals();

std::string str(std::size_t n) { return std::to_string(n); }

bool same(const Ring& a, const Element& x, const Ring& b, const Element& y) {
  return a.element_json(x) == b.element_json(y);
}

std::uint32_t reverse_bits(std::uint32_t p, std::uint32_t n) {
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < n; ++i)
    if (p >> i & 1) r |= 1u << (n - 1 - i);
  return r;
}

// Every construction carried by a corpus instance, with its id.
std::vector<std::pair<std::string, Construction>> constructions_of(const CorpusInstance& inst) {
  std::vector<std::pair<std::string, Construction>> out;
  if (inst.construction) out.emplace_back(inst.id, *inst.construction);
  if (inst.cayley) out.emplace_back(inst.id, inst.cayley->construction);
  for (std::size_t i = 1; i < inst.tower.size(); ++i)
    out.emplace_back(inst.id + "/" + str(i), inst.tower[i].construction);
  if (inst.dynamics && !inst.construction) out.emplace_back(inst.id, inst.dynamics->construction);
  return out;
}

std::vector<CorpusInstance> corpus_instances() {
  std::vector<CorpusInstance> out;
  for (const auto& e : builtin_corpus()) {
    auto inst = e.build();
    inst.id = e.id;
    out.push_back(std::move(inst));
  }
  return out;
}

bool enumerable(const Ring& r, const Limits& lim) { return r.is_finite() && r.cardinality() <= lim.cap; }

// ---------------------------------------------------------------------------

Outcome bales_anticommutativity() {
  std::size_t pairs = 0, bad = 0;
  for (std::uint64_t p = 1; p < 32; ++p)
    for (std::uint64_t q = 1; q < 32; ++q) {
      if (p == q) continue;
      ++pairs;
      if (bales_alpha(p, q) != -bales_alpha(q, p)) ++bad;
    }
  return {bad == 0, str(bad) + " violations over " + str(pairs) + " ordered pairs p != q"};
}

Outcome bales_tower_agreement() {
  auto tower = cayley_tower(kQ, 4);
  std::ostringstream os;
  bool pass = true;
  std::vector<std::size_t> mismatches;
  for (std::uint32_t n = 1; n <= 4; ++n) {
    const Ring& cd = tower[n].construction.ring;
    auto tw = bales_twisted_group_ring(kQ, n);
    const Ring& b = tw.system->bases[0];
    std::size_t bad = 0;
    for (std::uint32_t p = 0; p < (1u << n); ++p)
      for (std::uint32_t q = 0; q < (1u << n); ++q) {
        Element x = tw.ring.mul(tw.lift(p, b.basis(0)), tw.lift(q, b.basis(0)));
        if (!same(tw.ring, x, cd, cd.mul(cd.basis(p), cd.basis(q)))) ++bad;
      }
    mismatches.push_back(bad);
    pass &= bad == 0;
    os << (n > 1 ? ", " : "") << "n=" << n << ": " << bad;
  }
  os << " mismatching entries";
  return {pass, os.str()};
}

// Not a criterion: the relation between the two conventions that does hold.
std::string bales_convention_info() {
  auto tower = cayley_tower(kQ, 4);
  std::ostringstream os;
  for (std::uint32_t n = 1; n <= 4; ++n) {
    const Ring& cd = tower[n].construction.ring;
    auto xg = CategoryPresentation::xor_group(n);
    Ring q1 = scalar_algebra(kQ);
    std::vector<std::vector<Element>> alpha(1u << n);
    for (std::uint32_t p = 0; p < (1u << n); ++p)
      for (std::uint32_t q = 0; q < (1u << n); ++q)
        alpha[p].push_back(q1.scalar(Scalar::from_int(kQ, bales_alpha(q, p)), q1.basis(0)));
    auto tw = twisted_group_ring(q1, xg, alpha);
    std::size_t bad = 0;
    for (std::uint32_t p = 0; p < (1u << n); ++p)
      for (std::uint32_t q = 0; q < (1u << n); ++q) {
        Element x = tw.ring.mul(tw.lift(p, q1.basis(0)), tw.lift(q, q1.basis(0)));
        Element y = cd.mul(cd.basis(reverse_bits(p, n)), cd.basis(reverse_bits(q, n)));
        // Map y back to the twisted layout.
        auto coords = cd.element_json(y);
        auto mapped = coords;
        for (std::uint32_t k = 0; k < (1u << n); ++k) mapped[k] = coords[reverse_bits(k, n)];
        if (tw.ring.element_json(x) != mapped) ++bad;
      }
    os << (n > 1 ? ", " : "") << "n=" << n << ": " << bad;
  }
  return "bit-reversed tower vs twisted ring with alpha(q,p): " + os.str() + " mismatching entries";
}

Outcome tower_centers() {
  auto tower = cayley_tower(kQ, 4);
  std::vector<std::size_t> dims;
  for (const auto& l : tower) dims.push_back(center(l.construction.ring).dim());
  std::ostringstream os;
  os << "dim Z(B_i) for i=0..4:";
  for (auto d : dims) os << ' ' << d;
  return {dims == std::vector<std::size_t>{1, 2, 1, 1, 1}, os.str()};
}

Outcome nonassociativity_ladder() {
  auto tower = cayley_tower(kQ, 4);
  const Ring& h = tower[2].construction.ring;
  const Ring& o = tower[3].construction.ring;
  const Ring& s = tower[4].construction.ring;
  std::ostringstream os;
  bool pass = h.probe().associative == Tri::Yes;
  os << "H associative: " << to_string(h.probe().associative);

  std::optional<std::array<std::size_t, 3>> triple;
  for (std::size_t i = 1; i < 8 && !triple; ++i)
    for (std::size_t j = 1; j < 8 && !triple; ++j)
      for (std::size_t k = 1; k < 8 && !triple; ++k) {
        auto l = o.mul(o.mul(o.basis(i), o.basis(j)), o.basis(k));
        auto r = o.mul(o.basis(i), o.mul(o.basis(j), o.basis(k)));
        if (!o.is_zero(o.sub(l, r))) triple = std::array<std::size_t, 3>{i, j, k};
      }
  pass &= triple.has_value() && o.probe().associative == Tri::No;
  if (triple) {
    const auto [i, j, k] = *triple;
    const bool reverified = !o.is_zero(o.sub(o.mul(o.mul(o.basis(i), o.basis(j)), o.basis(k)),
                                             o.mul(o.basis(i), o.mul(o.basis(j), o.basis(k)))));
    pass &= reverified;
    os << "; O: (e" << i << " e" << j << ") e" << k << " != e" << i << " (e" << j << " e" << k << ")";
  }

  std::optional<std::pair<Element, Element>> zd;
  std::string zd_text;
  for (std::size_t a = 1; a < 16 && !zd; ++a)
    for (std::size_t b = a + 1; b < 16 && !zd; ++b)
      for (std::size_t c = 1; c < 16 && !zd; ++c)
        for (std::size_t d = c + 1; d < 16 && !zd; ++d)
          for (int sign : {1, -1}) {
            auto x = s.add(s.basis(a), s.basis(b));
            auto y = s.add(s.basis(c), sign > 0 ? s.basis(d) : s.neg(s.basis(d)));
            if (s.is_zero(s.mul(x, y))) {
              zd = std::make_pair(x, y);
              zd_text = "(e" + str(a) + " + e" + str(b) + ")(e" + str(c) + (sign > 0 ? " + e" : " - e") + str(d) + ") = 0";
              break;
            }
          }
  pass &= zd.has_value();
  if (zd) {
    pass &= !s.is_zero(zd->first) && !s.is_zero(zd->second) && s.is_zero(s.mul(zd->first, zd->second));
    os << "; S: " << zd_text;
  } else {
    os << "; S: no zero-divisor pair found";
  }
  return {pass, os.str()};
}

Construction f4_frobenius() {
  auto f4 = finite_field(2, 2);
  return skew_group_ring(f4.ring, CategoryPresentation::cyclic_group(2), {RingMap::identity(f4.ring), f4.frobenius});
}

Outcome f4_crossed_product() {
  auto a = f4_frobenius();
  auto v = is_simple(a.ring);
  auto t = oracle::tables_of(a.ring);
  const bool brute = oracle::simple(t);
  auto c = certify_crossed_product(a);
  bool criteria = true;
  for (const auto& p : c.criteria) criteria &= p.status == PremiseStatus::Verified;
  const bool pass = v.kind == Simplicity::Simple && brute && c.conclusion && *c.conclusion && criteria &&
                    c.premises_hold() && c.oracle == OracleStatus::Agrees;
  return {pass, "is_simple: " + std::string(to_string(v.kind)) + ", subset oracle: " + (brute ? "simple" : "not simple") +
                    ", certificate: " + (c.conclusion && *c.conclusion ? "Simple" : "not concluded") +
                    ", oracle " + std::string(to_string(c.oracle))};
}

Outcome m3_parity() {
  auto m3 = m3_parity_grading(scalar_algebra(ScalarSpec::modular(2)));
  Span a0 = m3.grading.a0();
  auto ideals = enumerate_ideals_in(a0);
  std::vector<Span> inv;
  for (const auto& i : ideals)
    if (is_A_invariant(i)) inv.push_back(i);
  const bool exact = inv.size() == 2 && std::any_of(inv.begin(), inv.end(), [](const Span& s) { return s.is_zero(); }) &&
                     std::any_of(inv.begin(), inv.end(), [&](const Span& s) { return s == a0; });
  auto c = certify_groupoid_graded(m3.grading);
  const bool route_b = c.route.rfind("(b)", 0) == 0;
  const bool brute = is_simple(m3.ring).kind == Simplicity::Simple;
  const bool pass = ideals.size() == 4 && exact && c.conclusion && *c.conclusion && route_b && brute &&
                    c.oracle == OracleStatus::Agrees;
  return {pass, str(ideals.size()) + " ideals of A0, " + str(inv.size()) +
                    " A-invariant (zero and A0); certificate route '" + c.route + "', brute force " +
                    (brute ? "Simple" : "not Simple")};
}

Outcome matrix_criterion() {
  struct Inst {
    std::string name;
    Construction con;
    bool expect;
  };
  auto o3 = cayley_tower(ScalarSpec::modular(3), 3)[3].construction.ring;
  std::vector<Inst> insts{
      {"M2(F3)", matrix_ring(scalar_algebra(ScalarSpec::modular(3)), 2), true},
      {"M2(Z4)", matrix_ring(scalar_algebra(ScalarSpec::modular(4)), 2), false},
      {"M2(O over F3)", matrix_ring(o3, 2), true},
      {"M3(F2)", matrix_ring(scalar_algebra(ScalarSpec::modular(2)), 3), true},
  };
  bool pass = true;
  std::ostringstream os;
  for (const auto& in : insts) {
    auto c = certify_matrix(in.con);
    auto v = decide_simplicity(in.con.ring);
    const bool concluded = c.conclusion.has_value();
    const bool iff = concluded && *c.conclusion == in.expect && v.kind != Simplicity::Inconclusive &&
                     (v.kind == Simplicity::Simple) == in.expect && c.oracle == OracleStatus::Agrees;
    bool witness_ok = true;
    if (!in.expect) {
      witness_ok = v.witness && !v.witness->is_zero() && !v.witness->is_full() &&
                   is_ideal_in(Span::full(in.con.ring), *v.witness);
    }
    pass &= iff && witness_ok;
    os << (os.tellp() > 0 ? "; " : "") << in.name << ": " << to_string(v.kind)
       << (concluded ? (*c.conclusion ? " / certified simple" : " / certified not simple") : " / withheld")
       << (in.expect ? "" : (witness_ok ? " (witness ideal verified)" : " (witness missing)"));
  }
  return {pass, os.str()};
}

struct Tally {
  std::size_t instances = 0, checks = 0, exceptions = 0, skipped = 0;
  std::vector<std::string> notes;
};

Outcome invariance_equivalences(const std::vector<CorpusInstance>& corpus) {
  Tally t;
  const Limits lim;
  std::size_t ore_instances = 0;
  for (const auto& inst : corpus) {
    for (const auto& [id, con] : constructions_of(inst)) {
      if (!con.system) continue;
      const Span b = con.base();
      if (!enumerable(con.ring, lim) && !b.ring().is_finite()) {
        ++t.skipped;
        continue;
      }
      std::vector<Span> ideals;
      try {
        ideals = enumerate_ideals_in(b, lim);
      } catch (const Error&) {
        ++t.skipped;
        continue;
      }
      ++t.instances;
      for (const auto& i : ideals) {
        ++t.checks;
        if (is_G_invariant(con, i) != is_A_invariant(i)) {
          ++t.exceptions;
          t.notes.push_back(id);
        }
      }
    }
    if (inst.ore && inst.ore->base.is_finite()) {
      ++ore_instances;
      const auto& d = *inst.ore;
      for (const auto& i : enumerate_ideals(d.base, lim)) {
        ++t.checks;
        const bool inv = is_sigma_delta_invariant(i, d);
        const bool a_inv = check_A_invariance_truncated(i, d, 4).holds;
        bool ok = inv == a_inv;
        if (!inv) {
          auto w = degree_one_witness(i, d);
          ok &= w && i.contains(w->c) && !in_extended_ideal(w->product, i);
        }
        if (!ok) {
          ++t.exceptions;
          t.notes.push_back(inst.id);
        }
      }
    }
  }
  std::string detail = str(t.instances) + " crossed-product and " + str(ore_instances) + " Ore instances, " +
                       str(t.checks) + " ideals checked, " + str(t.exceptions) + " exceptions";
  if (t.skipped) detail += ", " + str(t.skipped) + " infinite bases not enumerable";
  for (const auto& n : t.notes) detail += " [" + n + "]";
  return {t.exceptions == 0 && t.instances > 0 && ore_instances > 0, detail};
}

struct DegreeResult {
  std::string id;
  Construction con;
};

Outcome degree_maps(const std::vector<CorpusInstance>& corpus, std::vector<DegreeResult>& valid) {
  const Limits lim;
  std::size_t graded = 0, bad = 0, skipped = 0;
  std::vector<std::string> notes;
  for (const auto& inst : corpus)
    for (const auto& [id, con] : constructions_of(inst)) {
      if (!enumerable(con.ring, lim)) {
        ++skipped;
        continue;
      }
      auto flags = grading_flags(con.grading, lim);
      if (!flags.left_nondegenerate && !flags.right_nondegenerate) continue;
      ++graded;
      auto dm = support_degree_map(con.grading, DegreeSubring::CenterOfA0, lim);
      auto v = verify_degree_map(dm, lim);
      if (v.kind == DegreeVerdictKind::Valid) {
        valid.push_back({id, con});
      } else {
        ++bad;
        notes.push_back(id + ": " + std::string(to_string(v.kind)));
      }
    }

  // Differential polynomial rings from the corpus.
  std::size_t ore_data = 0, samples = 0, ore_bad = 0;
  for (const auto& inst : corpus) {
    if (!inst.ore || !inst.ore->sigma_is_identity() || !inst.ore->base.is_finite()) continue;
    ++ore_data;
    const auto& d = *inst.ore;
    const auto z = center(d.base).elements();
    std::mt19937_64 rng(lim.seed);
    const auto x = SkewPolynomial::x_power(d, 1);
    for (int s = 0; s < 1000; ++s) {
      const std::size_t n = 1 + s % 4;
      auto a = random_skew_polynomial(d, n, true, rng);
      ++samples;
      bool ok = true;
      for (const auto& b : z) {
        auto cb = SkewPolynomial::constant(d, b);
        auto comm = ore_mul(a, cb) - ore_mul(cb, a);
        ok &= ore_degree_map(comm) < ore_degree_map(a);
      }
      auto direct = ore_mul(a, x) - ore_mul(x, a);
      std::vector<Element> closed;
      for (std::size_t i = 0; i <= n; ++i) closed.push_back(d.base.neg(d.delta_of(a.coeff(i))));
      ok &= SkewPolynomial(&d, closed) == direct;
      ok &= commutator_degree_drop(a, std::nullopt).commutator == direct;
      if (!ok) ++ore_bad;
    }
  }
  std::string detail = str(graded) + " non-degenerate graded instances, " + str(bad) + " not Valid; " +
                       str(ore_data) + " differential instances, " + str(samples) + " monic samples, " +
                       str(ore_bad) + " failures";
  if (skipped) detail += "; " + str(skipped) + " infinite instances or beyond the enumeration cap";
  for (const auto& n : notes) detail += " [" + n + "]";
  return {bad == 0 && ore_bad == 0 && graded > 0 && ore_data > 0, detail};
}

Outcome intersection_property(const std::vector<DegreeResult>& valid) {
  const Limits lim;
  std::size_t ideals = 0, bad = 0;
  std::vector<std::string> notes;
  for (const auto& [id, con] : valid) {
    Span b = degree_subring(con.grading, DegreeSubring::CenterOfA0, lim);
    Span c = centralizer(con.ring, b.generators(), lim);
    for (const auto& i : enumerate_ideals(con.ring, lim)) {
      if (i.is_zero()) continue;
      ++ideals;
      if (i.intersect(c).is_zero()) {
        ++bad;
        notes.push_back(id);
      }
    }
    auto v = ideal_intersection_property(con.ring, c, lim);
    if (!v.holds) {
      ++bad;
      notes.push_back(id + " (library)");
    }
  }
  std::string detail = str(valid.size()) + " instances, " + str(ideals) + " nonzero ideals, " + str(bad) + " exceptions";
  for (const auto& n : notes) detail += " [" + n + "]";
  return {bad == 0 && !valid.empty(), detail};
}

Outcome i_and_p(const std::vector<CorpusInstance>& corpus) {
  const Limits lim;
  std::size_t instances = 0, ideals = 0, bad = 0, lib_checked = 0, skipped = 0;
  std::vector<std::string> notes;
  for (const auto& inst : corpus)
    for (const auto& [id, con] : constructions_of(inst)) {
      if (!enumerable(con.ring, lim)) {
        ++skipped;
        continue;
      }
      auto flags = grading_flags(con.grading, lim);
      if (!flags.locally_unital) continue;
      ++instances;
      const Ring& a = con.ring;
      const Span a0 = con.grading.a0();
      const auto& agens = a.additive_generators();
      for (const auto& i : enumerate_ideals_in(a0, lim)) {
        if (!is_A_invariant(i)) continue;
        ++ideals;
        std::vector<Element> prods;
        for (const auto& x : i.generators())
          for (const auto& y : agens) prods.push_back(a.mul(x, y));
        Span ia = Span::of(a, prods);
        if (!(ia.intersect(a0) == i)) {
          ++bad;
          notes.push_back(id);
          continue;
        }
        try {
          auto r = apply_i_and_p(a0, i);
          ++lib_checked;
          if (!(r.b_cap == i)) {
            ++bad;
            notes.push_back(id + " (library)");
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotIdealAssociative) throw;
        }
      }
    }
  std::string detail = str(instances) + " locally unital instances, " + str(ideals) + " A-invariant ideals of A0, " +
                       str(bad) + " with B ∩ IA != I (" + str(lib_checked) + " also through apply_i_and_p)";
  if (skipped) detail += "; " + str(skipped) + " infinite instances or beyond the enumeration cap";
  for (const auto& n : notes) detail += " [" + n + "]";
  return {bad == 0 && ideals > 0, detail};
}

// ---- finite dynamics sweep -------------------------------------------------

std::vector<std::vector<std::uint32_t>> permutations(std::uint32_t n) {
  std::vector<std::uint32_t> p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<std::uint32_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// All homomorphisms G -> Sym(X), as tables action[g][x].
std::vector<std::vector<std::vector<std::uint32_t>>> actions(const CategoryPresentation& g, std::uint32_t x) {
  const std::uint32_t m = g.num_morphisms();
  // Smallest generating set by brute force.
  auto generated = [&](const std::vector<std::uint32_t>& gens) {
    std::set<std::uint32_t> s{0};
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto a : std::vector<std::uint32_t>(s.begin(), s.end()))
        for (auto b : gens)
          if (s.insert(g.mul(a, b)).second) grew = true;
    }
    return s.size() == m;
  };
  std::vector<std::uint32_t> gens;
  if (m > 1) {
    for (std::uint32_t a = 1; a < m && gens.empty(); ++a)
      if (generated({a})) gens = {a};
    for (std::uint32_t a = 1; a < m && gens.empty(); ++a)
      for (std::uint32_t b = a + 1; b < m && gens.empty(); ++b)
        if (generated({a, b})) gens = {a, b};
  }
  const auto perms = permutations(x);
  std::vector<std::vector<std::vector<std::uint32_t>>> out;
  std::vector<std::size_t> choice(gens.size(), 0);
  while (true) {
    std::vector<std::vector<std::uint32_t>> act(m);
    act[0] = perms[0];
    // Breadth-first extension along right multiplication by generators.
    std::vector<std::uint32_t> queue{0};
    bool consistent = true;
    for (std::size_t qi = 0; qi < queue.size() && consistent; ++qi) {
      const auto a = queue[qi];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto ab = g.mul(a, gens[k]);
        std::vector<std::uint32_t> img(x);
        for (std::uint32_t p = 0; p < x; ++p) img[p] = act[a][perms[choice[k]][p]];
        if (act[ab].empty()) {
          act[ab] = img;
          queue.push_back(ab);
        } else if (act[ab] != img) {
          consistent = false;
        }
      }
    }
    if (consistent) {
      for (std::uint32_t a = 0; a < m && consistent; ++a)
        for (std::uint32_t b = 0; b < m && consistent; ++b)
          for (std::uint32_t p = 0; p < x; ++p)
            if (act[g.mul(a, b)][p] != act[a][act[b][p]]) consistent = false;
      if (consistent) out.push_back(act);
    }
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == perms.size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return out;
}

Outcome dynamics_sweep() {
  std::vector<std::pair<std::string, CategoryPresentation>> groups;
  for (std::uint32_t n = 1; n <= 6; ++n) groups.emplace_back("Z" + str(n), CategoryPresentation::cyclic_group(n));
  groups.emplace_back("Z2xZ2", CategoryPresentation::abelian_group({2, 2}));
  std::size_t total = 0, bad = 0, nonfaithful = 0, oracle_checked = 0;
  std::vector<std::string> notes;
  for (std::uint32_t p : {2u, 3u}) {
    const ScalarSpec f = ScalarSpec::modular(p);
    for (const auto& [gname, g] : groups)
      for (std::uint32_t x = 1; x <= 4; ++x)
        for (const auto& act : actions(g, x)) {
          ++total;
          const std::uint32_t m = g.num_morphisms();
          // Independent minimality and faithfulness.
          std::vector<char> orbit(x, 0);
          for (std::uint32_t a = 0; a < m; ++a) orbit[act[a][0]] = 1;
          const bool minimal = std::all_of(orbit.begin(), orbit.end(), [](char c) { return c; });
          bool faithful = true;
          for (std::uint32_t a = 1; a < m && faithful; ++a) {
            bool moves = false;
            for (std::uint32_t q = 0; q < x; ++q) moves |= act[a][q] != q;
            faithful = moves;
          }
          auto d = dynamics_skew_group_ring(x, g, act, f);
          auto v = decide_simplicity(d.construction.ring);
          bool ok = d.minimal == minimal && d.faithful == faithful && v.kind != Simplicity::Inconclusive &&
                    (v.kind == Simplicity::Simple) == (minimal && faithful);
          if (d.construction.ring.cardinality() <= 256) {
            ++oracle_checked;
            ok &= oracle::simple_by_principal(oracle::tables_of(d.construction.ring)) == (minimal && faithful);
          }
          auto c = certify_dynamics(d);
          ok &= c.conclusion.has_value() && *c.conclusion == (minimal && faithful) && c.oracle != OracleStatus::Disagrees;
          if (!faithful) {
            ++nonfaithful;
            auto w = nonfaithful_witness_ideal(d.construction);
            ok &= w && !w->is_zero() && !w->is_full() && is_ideal_in(Span::full(d.construction.ring), *w);
          }
          if (!ok) {
            ++bad;
            std::ostringstream os;
            os << gname << " on " << x << " points over F" << p;
            notes.push_back(os.str());
          }
        }
  }
  std::string detail = str(total) + " actions (" + str(nonfaithful) + " non-faithful, " + str(oracle_checked) +
                       " also by subset oracle), " + str(bad) + " exceptions";
  for (std::size_t i = 0; i < notes.size() && i < 5; ++i) detail += " [" + notes[i] + "]";
  return {bad == 0, detail};
}

Outcome corpus_determinism() {
  RunOptions o;
  auto a = run_corpus(o);
  auto b = run_corpus(o);
  const std::string sa = a.report.dump(2), sb = b.report.dump(2);
  return {sa == sb && a.exit_code == 0, str(sa.size()) + " bytes, " + (sa == sb ? "identical" : "different") +
                                            ", exit " + str(a.exit_code)};
}

}  // namespace

int main() {
  const auto corpus = corpus_instances();
  std::vector<DegreeResult> valid_degree;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Bales cocycle anticommutativity", bales_anticommutativity},
      {"twisted group ring vs Cayley-Dickson tables", bales_tower_agreement},
      {"tower centers over Q", tower_centers},
      {"nonassociativity ladder", nonassociativity_ladder},
      {"F4 skew Z2 simplicity", f4_crossed_product},
      {"M3(F2) parity grading", m3_parity},
      {"matrix criterion", matrix_criterion},
      {"invariance equivalences", [&] { return invariance_equivalences(corpus); }},
      {"degree maps", [&] { return degree_maps(corpus, valid_degree); }},
      {"ideal intersection property", [&] { return intersection_property(valid_degree); }},
      {"B ∩ IA = I on locally unital gradings", [&] { return i_and_p(corpus); }},
      {"finite dynamics sweep", dynamics_sweep},
      {"corpus determinism", corpus_determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s #%zu %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (k == 1) std::printf("  info: %s\n", bales_convention_info().c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
