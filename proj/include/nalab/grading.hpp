#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nalab/category.hpp"
#include "nalab/ideal.hpp"

namespace nalab {

// A ring together with a direct-sum decomposition A = ⊕_g A_g indexed by the
// morphisms of a finite category and satisfying the filter condition.
class Grading {
 public:
  const Ring& ring() const noexcept { return ring_; }
  const CategoryPresentation& category() const noexcept { return cat_; }
  const Span& component(std::uint32_t g) const { return comps_.at(g); }
  const std::vector<Span>& components() const noexcept { return comps_; }
  std::size_t size() const noexcept { return comps_.size(); }

  // a = Σ_g a_g with a_g ∈ A_g.
  std::vector<Element> decompose(const Element& a) const;
  Element component_of(const Element& a, std::uint32_t g) const;
  std::vector<std::uint32_t> support(const Element& a) const;

  // A_0 = ⊕_{e ∈ ob(G)} A_e.
  Span a0() const;
  // A_{G_e}, the sum of the components over the vertex group at e.
  Span vertex_ring(std::uint32_t e) const;
  // ⊕ of the components with g not an identity.
  Span off_identity() const;
  Span sum_of(const std::vector<std::uint32_t>& morphisms) const;

  nlohmann::json to_json() const;

  friend Grading validate_grading(const Ring& a, const CategoryPresentation& g, std::vector<Span> components);

 private:
  Grading(Ring r, CategoryPresentation c, std::vector<Span> comps)
      : ring_(std::move(r)), cat_(std::move(c)), comps_(std::move(comps)) {}

  Ring ring_;
  CategoryPresentation cat_;
  std::vector<Span> comps_;
  // Linear form: rows map coordinates in A to coordinates in the
  // concatenated component bases.
  Matrix to_component_coords_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<Element>> comp_basis_;
  // Finite form: for each element index of A, the index (inside
  // comp_members_[g]) of each component.
  std::vector<std::vector<Element>> comp_members_;
  std::vector<std::uint32_t> decomp_;
};

// Checks the direct-sum and filter conditions on spanning sets.
// Throws NotDirectSum or FilterViolation.
Grading validate_grading(const Ring& a, const CategoryPresentation& g, std::vector<Span> components);

// The unit of a span that is closed under multiplication, if it has one.
std::optional<Element> unit_of_span(const Span& s);

struct GradingFlags {
  bool locally_unital = false;
  bool strongly_graded = false;
  bool left_nondegenerate = false;
  bool right_nondegenerate = false;
  std::vector<std::optional<Element>> local_units;  // 1_{A_e} per object
  std::optional<std::array<std::uint32_t, 2>> strong_failure;  // (g,h) with A_g A_h != A_gh
  nlohmann::json to_json(const Ring& r) const;
};
GradingFlags grading_flags(const Grading& gr, const Limits& lim = {});

struct DegreeMap {
  Ring ring;
  std::function<std::uint64_t(const Element&)> d;
  std::vector<Element> x;  // generating set of B
  std::string name;
};

enum class DegreeVerdictKind { Valid, D1Violation, D2Violation };
struct DegreeVerdict {
  DegreeVerdictKind kind = DegreeVerdictKind::Valid;
  std::optional<Element> element;
  std::optional<Span> ideal;
  std::uint64_t elements_checked = 0;
  nlohmann::json to_json() const;
};
std::string_view to_string(DegreeVerdictKind k);

// (d1) on every element; (d2) over the principal ideal of every nonzero
// element, searched exhaustively.
DegreeVerdict verify_degree_map(const DegreeMap& dm, const Limits& lim = {});

enum class DegreeSubring { CenterOfA0, HomogeneousElements };
// d(a) = |Supp(a)| with X = Z(A_0) or X = ∪_g A_g.
DegreeMap support_degree_map(const Grading& gr, DegreeSubring choice, const Limits& lim = {});
// The subring B that the generating set of `support_degree_map` spans.
Span degree_subring(const Grading& gr, DegreeSubring choice, const Limits& lim = {});

struct IntersectionVerdict {
  bool holds = true;
  std::optional<Span> witness;
  std::size_t ideals_checked = 0;
};
// Every nonzero ideal of A meets S nontrivially.
IntersectionVerdict ideal_intersection_property(const Ring& a, const Span& s, const Limits& lim = {});

// Associativity of I against every word of up to `max_len - 1` components.
AssociativityCheck graded_ideal_associativity(const Grading& gr, const Span& i, std::size_t max_len = 4);

struct ComponentwiseInvariance {
  bool plain = false;             // A_g I_{d(g)} ⊆ I_{c(g)} A_g for all g
  bool conjugation = false;       // A_g I_{d(g)} A_{g^-1} ⊆ I_{c(g)} for all g
  bool conjugation_applicable = false;
  bool a_invariant = false;       // AI ⊆ IA, computed directly
};
// Throws PreconditionUnmet when the grading is not locally unital, and
// Disagreement when a criterion contradicts the direct computation.
ComponentwiseInvariance check_invariance_componentwise(const Grading& gr, const Span& i, const Limits& lim = {});

enum class LocalUnitsVariant { AllObjects, SomeObject };
struct LocalUnitsTest {
  bool criterion = false;
  bool full = false;
  std::vector<std::uint32_t> units_in_ideal;
};
// Throws PreconditionUnmet or Disagreement.
LocalUnitsTest local_units_full_ideal_test(const Grading& gr, const Span& i, LocalUnitsVariant variant,
                                           const Limits& lim = {});

}  // namespace nalab
