#include <doctest.h>

#include "nalab/constructions.hpp"
#include "oracle.hpp"

using namespace nalab;

namespace {

Ring f2() { return scalar_algebra(ScalarSpec::modular(2)); }

Element e(const Construction& m, std::uint32_t n, std::uint32_t i, std::uint32_t j) { return m.ring.basis(i * n + j); }

Construction group_algebra_f2_z2() {
  Ring b = f2();
  return skew_group_ring(b, CategoryPresentation::cyclic_group(2), {RingMap::identity(b), RingMap::identity(b)});
}

Construction f4_frobenius() {
  auto f4 = finite_field(2, 2);
  return skew_group_ring(f4.ring, CategoryPresentation::cyclic_group(2), {RingMap::identity(f4.ring), f4.frobenius});
}

Span upper_block(const Construction& m3) {
  return Span::of(m3.ring, {e(m3, 3, 0, 0), e(m3, 3, 0, 1), e(m3, 3, 1, 0), e(m3, 3, 1, 1)});
}

}  // namespace

TEST_CASE("overlapping components are rejected") {
  Ring r = Ring::integers_mod(4);
  auto g = CategoryPresentation::cyclic_group(2);
  try {
    validate_grading(r, g, {Span::full(r), Span::of(r, {r.element(2)})});
    FAIL("expected NotDirectSum");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotDirectSum);
  }
}

TEST_CASE("components that break the filter condition are rejected") {
  auto m = matrix_ring(f2(), 2);
  auto g = CategoryPresentation::cyclic_group(2);
  // Diagonal E11 in degree 0 and E22 in degree 1 is a direct sum but
  // E12 * E21 = E11 lands in the wrong degree.
  std::vector<Span> comps{Span::of(m.ring, {e(m, 2, 0, 0), e(m, 2, 0, 1)}), Span::of(m.ring, {e(m, 2, 1, 1), e(m, 2, 1, 0)})};
  try {
    validate_grading(m.ring, g, comps);
    FAIL("expected FilterViolation");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::FilterViolation);
  }
}

TEST_CASE("the parity grading of M3(F2) is valid and strong") {
  auto m3 = m3_parity_grading(f2());
  CHECK(m3.grading.size() == 2);
  CHECK(m3.grading.component(0).order() == 32);
  CHECK(m3.grading.component(1).order() == 16);
  auto flags = grading_flags(m3.grading);
  CHECK(flags.strongly_graded);
  CHECK(flags.locally_unital);
  CHECK(flags.left_nondegenerate);
  CHECK(flags.right_nondegenerate);
}

TEST_CASE("supports") {
  auto m3 = m3_parity_grading(f2());
  const auto& gr = m3.grading;
  CHECK(gr.support(m3.ring.zero()).empty());
  CHECK(gr.support(e(m3, 3, 0, 1)) == std::vector<std::uint32_t>{0});
  CHECK(gr.support(e(m3, 3, 2, 0)) == std::vector<std::uint32_t>{1});
  auto a = m3.ring.add(e(m3, 3, 0, 0), e(m3, 3, 0, 2));
  CHECK(gr.support(a) == std::vector<std::uint32_t>{0, 1});
  auto parts = gr.decompose(a);
  CHECK(parts[0] == e(m3, 3, 0, 0));
  CHECK(parts[1] == e(m3, 3, 0, 2));
}

TEST_CASE("crossed product gradings are locally unital with 1 = 1_B u_e") {
  auto skew = f4_frobenius();
  auto flags = grading_flags(skew.grading);
  REQUIRE(flags.locally_unital);
  REQUIRE(flags.local_units.size() == 1);
  REQUIRE(flags.local_units[0]);
  CHECK(*flags.local_units[0] == skew.lift(0, *find_unit(skew.system->bases[0])));
  CHECK(flags.strongly_graded);

  auto mp = matrix_ring(f2(), 2);
  auto mf = grading_flags(mp.grading);
  CHECK(mf.locally_unital);
  REQUIRE(mf.local_units.size() == 2);
  CHECK(*mf.local_units[0] == e(mp, 2, 0, 0));
  CHECK(*mf.local_units[1] == e(mp, 2, 1, 1));
}

TEST_CASE("F2[Z2] graded by Z2 has all four flags") {
  auto g = group_algebra_f2_z2();
  auto flags = grading_flags(g.grading);
  CHECK(flags.locally_unital);
  CHECK(flags.strongly_graded);
  CHECK(flags.left_nondegenerate);
  CHECK(flags.right_nondegenerate);
  // Oracle: A_1 A_1 = A_0 by a 4-element scan.
  auto comp1 = g.grading.component(1).elements();
  Span prod(g.ring);
  for (const auto& x : comp1)
    for (const auto& y : comp1) prod.insert(g.ring.mul(x, y));
  CHECK(prod == g.grading.component(0));
}

TEST_CASE("a grading with a zero product is not strong") {
  auto tp = truncated_polynomials(ScalarSpec::modular(2), 2);
  // F2[y]/y^2 graded by Z2 with y in degree 1: y*y = 0 breaks strongness.
  auto g = validate_grading(tp.ring, CategoryPresentation::cyclic_group(2),
                            {Span::of(tp.ring, {tp.ring.basis(0)}), Span::of(tp.ring, {tp.ring.basis(1)})});
  auto flags = grading_flags(g);
  CHECK_FALSE(flags.strongly_graded);
  REQUIRE(flags.strong_failure);
  CHECK((*flags.strong_failure)[0] == 1);
  CHECK((*flags.strong_failure)[1] == 1);
}

TEST_CASE("degree maps") {
  auto m3 = m3_parity_grading(f2());
  auto dm = support_degree_map(m3.grading, DegreeSubring::CenterOfA0);
  CHECK(verify_degree_map(dm).kind == DegreeVerdictKind::Valid);
  // X = Z(A_0): scalars of the 2x2 block plus the corner.
  Span x = degree_subring(m3.grading, DegreeSubring::CenterOfA0);
  CHECK(x == Span::of(m3.ring, {m3.ring.add(e(m3, 3, 0, 0), e(m3, 3, 1, 1)), e(m3, 3, 2, 2)}));
  CHECK(dm.d(m3.ring.zero()) == 0);
  CHECK(dm.d(e(m3, 3, 1, 2)) == 1);

  auto skew = f4_frobenius();
  Span hom = degree_subring(skew.grading, DegreeSubring::HomogeneousElements);
  for (std::uint32_t g = 0; g < 2; ++g) CHECK(hom.contains(skew.grading.component(g)));
  auto hdm = support_degree_map(skew.grading, DegreeSubring::HomogeneousElements);
  for (const auto& a : skew.ring.enumerate())
    if (!skew.ring.is_zero(a)) CHECK(hdm.d(a) >= 1);
  CHECK(verify_degree_map(support_degree_map(skew.grading, DegreeSubring::CenterOfA0)).kind == DegreeVerdictKind::Valid);
}

TEST_CASE("degree map violations") {
  auto m = matrix_ring(f2(), 2);
  const Ring r = m.ring;
  DegreeMap bad0{r, [](const Element&) -> std::uint64_t { return 1; }, {}, "d = 1"};
  auto v0 = verify_degree_map(bad0);
  CHECK(v0.kind == DegreeVerdictKind::D1Violation);
  REQUIRE(v0.element);
  CHECK(r.is_zero(*v0.element));

  // d = 1 off zero cannot drop on the ideal generated by E12 in the upper
  // triangular algebra: E12 E11 - E11 E12 = -E12.
  auto f = ScalarSpec::modular(2);
  DenseConstants c(3, std::vector<Vec>(3, zero_vec(f, 3)));  // E11, E12, E22
  c[0][0][0] = Scalar::one(f);
  c[0][1][1] = Scalar::one(f);
  c[1][2][1] = Scalar::one(f);
  c[2][2][2] = Scalar::one(f);
  Ring t2 = Ring::make_algebra(f, 3, c, "T2(F2)");
  DegreeMap flat{t2, [t2](const Element& a) -> std::uint64_t { return t2.is_zero(a) ? 0 : 1; }, {t2.basis(0)}, "d = 1 off 0"};
  auto v = verify_degree_map(flat);
  CHECK(v.kind == DegreeVerdictKind::D2Violation);
  REQUIRE(v.ideal);
  CHECK(*v.ideal == Span::of(t2, {t2.basis(1)}));

  // The same map on M2(F2) is valid: the only nonzero ideal contains 1.
  DegreeMap ok{r, [r](const Element& a) -> std::uint64_t { return r.is_zero(a) ? 0 : 1; }, {e(m, 2, 0, 0)}, "d = 1 off 0"};
  CHECK(verify_degree_map(ok).kind == DegreeVerdictKind::Valid);
}

TEST_CASE("ideal intersection property") {
  auto m2 = matrix_ring(f2(), 2);
  auto v = ideal_intersection_property(m2.ring, Span::of(m2.ring, {e(m2, 2, 0, 1)}));
  CHECK(v.holds);

  Ring z4 = Ring::integers_mod(4);
  CHECK(ideal_intersection_property(z4, Span::of(z4, {z4.element(2)})).holds);

  Ring z6 = Ring::integers_mod(6);
  auto f = ideal_intersection_property(z6, Span::of(z6, {z6.element(3)}));
  CHECK_FALSE(f.holds);
  REQUIRE(f.witness);
  CHECK(f.witness->order() == 3);
  CHECK(f.witness->contains(z6.element(2)));
}

TEST_CASE("componentwise invariance on the graded M3(F2)") {
  auto m3 = m3_parity_grading(f2());
  Span a0 = m3.grading.a0();
  for (const auto& i : enumerate_ideals_in(a0)) {
    auto c = check_invariance_componentwise(m3.grading, i);
    const bool j_eq_k = i.is_zero() || i == a0;
    CHECK(c.plain == j_eq_k);
    CHECK(c.a_invariant == j_eq_k);
    if (c.conjugation_applicable) CHECK(c.conjugation == j_eq_k);
  }
  auto blk = check_invariance_componentwise(m3.grading, upper_block(m3));
  CHECK_FALSE(blk.plain);
  CHECK(blk.conjugation_applicable);
  CHECK_FALSE(blk.conjugation);
  auto full = check_invariance_componentwise(m3.grading, a0);
  CHECK(full.plain);
  CHECK(full.conjugation);
  auto zero = check_invariance_componentwise(m3.grading, Span(m3.ring));
  CHECK(zero.plain);
  CHECK(zero.conjugation);
}

TEST_CASE("componentwise invariance needs a locally unital grading") {
  auto f = ScalarSpec::modular(2);
  Ring null2 = Ring::make_algebra(f, 2, DenseConstants(2, std::vector<Vec>(2, zero_vec(f, 2))), "null");
  auto g = validate_grading(null2, CategoryPresentation::cyclic_group(2),
                            {Span::of(null2, {null2.basis(0)}), Span::of(null2, {null2.basis(1)})});
  CHECK_FALSE(grading_flags(g).locally_unital);
  try {
    check_invariance_componentwise(g, Span(null2));
    FAIL("expected PreconditionUnmet");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::PreconditionUnmet);
  }
}

TEST_CASE("local units and full ideals") {
  auto m2 = matrix_ring(f2(), 2);
  auto all = local_units_full_ideal_test(m2.grading, Span::full(m2.ring), LocalUnitsVariant::AllObjects);
  CHECK(all.criterion);
  CHECK(all.full);
  CHECK(all.units_in_ideal.size() == 2);
  Span i = ideal_closure(m2.ring, {e(m2, 2, 0, 0)});
  auto some = local_units_full_ideal_test(m2.grading, i, LocalUnitsVariant::SomeObject);
  CHECK(some.criterion);
  CHECK(some.full);

  auto g = group_algebra_f2_z2();
  auto one = *find_unit(g.ring);
  auto u = g.lift(1, *find_unit(g.system->bases[0]));
  Span aug = ideal_closure(g.ring, {g.ring.add(one, u)});
  CHECK(aug.order() == 2);
  auto t = local_units_full_ideal_test(g.grading, aug, LocalUnitsVariant::AllObjects);
  CHECK_FALSE(t.criterion);
  CHECK_FALSE(t.full);
}

TEST_CASE("graded ideal associativity holds in associative examples") {
  auto m3 = m3_parity_grading(f2());
  CHECK(graded_ideal_associativity(m3.grading, m3.grading.a0()).holds);
  auto o = cayley_tower(ScalarSpec::modular(3), 3)[3].construction;
  CHECK(graded_ideal_associativity(o.grading, Span::full(o.ring), 3).holds);
}

TEST_CASE("categories") {
  auto pg = CategoryPresentation::pair_groupoid(3);
  pg.validate();
  CHECK(pg.is_groupoid());
  CHECK(pg.is_connected());
  CHECK(pg.is_locally_abelian());
  CHECK_FALSE(pg.is_group());
  auto du = CategoryPresentation::disjoint_union(CategoryPresentation::cyclic_group(1), CategoryPresentation::cyclic_group(2));
  CHECK_FALSE(du.is_connected());
  CHECK(du.num_objects() == 2);
  CHECK(CategoryPresentation::parse("Z2xZ2").num_morphisms() == 4);
  CHECK(CategoryPresentation::parse("XOR3").num_morphisms() == 8);
  CHECK(CategoryPresentation::parse("pair2").num_objects() == 2);
  // S3 from its table is a non-abelian group.
  std::vector<std::vector<std::uint32_t>> perms{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  std::vector<std::vector<std::uint32_t>> table(6, std::vector<std::uint32_t>(6));
  for (std::uint32_t a = 0; a < 6; ++a)
    for (std::uint32_t b = 0; b < 6; ++b) {
      std::vector<std::uint32_t> c(3);
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      for (std::uint32_t k = 0; k < 6; ++k)
        if (perms[k] == c) table[a][b] = k;
    }
  auto s3 = CategoryPresentation::from_group_table(table);
  CHECK(s3.is_group());
  CHECK_FALSE(s3.is_abelian_group());
}
