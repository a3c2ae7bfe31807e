#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nalab/grading.hpp"

namespace nalab {

enum class MapKind { Homomorphism, AntiHomomorphism };

// A linear map between structure algebras. Column j of `matrix` holds the
// coordinates of the image of basis element j.
struct RingMap {
  Matrix matrix;
  MapKind kind = MapKind::Homomorphism;

  static RingMap identity(const Ring& b);
  Element apply(const Ring& target, const Element& x) const;
  nlohmann::json to_json() const;
};
RingMap compose_maps(const RingMap& f, const RingMap& g);  // f∘g

enum class Twist { Straight, Opposite };

struct CrossedSystem {
  CategoryPresentation category;
  std::vector<Ring> bases;                                 // B_e per object
  std::vector<RingMap> sigma;                              // σ_g : B_{d(g)} -> B_{c(g)}
  std::map<std::pair<std::uint32_t, std::uint32_t>, Element> alpha;  // missing pairs mean 1
  std::map<std::pair<std::uint32_t, std::uint32_t>, Twist> twist;    // missing pairs mean Straight
  std::string name = "crossed product";

  const Ring& base_of(std::uint32_t g) const { return bases.at(category.cod.at(g)); }
  Element alpha_of(std::uint32_t g, std::uint32_t h) const;
  Twist twist_of(std::uint32_t g, std::uint32_t h) const;
};

struct Violation {
  std::string kind;  // UnitViolation, HomomorphismViolation, ...
  std::string detail;
  nlohmann::json witness;
};

struct CrossedReport {
  bool ok = true;
  std::vector<Violation> violations;
  nlohmann::json to_json() const;
};

// Each B_e unital; each σ_g additive, (anti)multiplicative on basis pairs and
// unit preserving; σ a functor; each α a unit that associates and commutes
// with B_{c(g)}; α normalized.
CrossedReport validate_crossed_system(const CrossedSystem& sys);

// A constructed ring with its canonical grading. For crossed products the
// basis of A is laid out in blocks B_{c(g)}u_g in morphism order.
struct Construction {
  Ring ring;
  Grading grading;
  std::optional<CrossedSystem> system;
  std::vector<std::size_t> offsets;  // block offset per morphism (crossed products)
  std::vector<std::string> warnings;
  nlohmann::json info = nlohmann::json::object();

  // b u_g for b in B_{c(g)}.
  Element lift(std::uint32_t g, const Element& b) const;
  // The B_{c(g)} coordinate of a_g.
  Element coefficient(const Element& a, std::uint32_t g) const;
  // B = A_0.
  Span base() const { return grading.a0(); }
};

// Throws ValidationFailure with the itemized report as witness.
Construction crossed_product(const CrossedSystem& sys);

// σ_g(I_{d(g)}) ⊆ I_{c(g)} for an ideal I of B given as a span inside A.
bool is_G_invariant(const Construction& c, const Span& i);

// B ⋊^σ G with trivial α. `action[g]` is σ_g.
Construction skew_group_ring(const Ring& b, const CategoryPresentation& group, std::vector<RingMap> action);
// B ⋊_α G with σ = id. alpha[g][h] is α_{g,h}.
Construction twisted_group_ring(const Ring& b, const CategoryPresentation& group,
                                const std::vector<std::vector<Element>>& alpha);

// The ±1 cocycle on the XOR group, evaluated by its recursion.
int bales_alpha(std::uint64_t p, std::uint64_t q);
// Q (or F_p) twisted by the Bales cocycle over the XOR group on n bits.
Construction bales_twisted_group_ring(const ScalarSpec& field, std::uint32_t n);

enum class CayleyFlavor { Classical, Custom };
struct CayleyTwists {
  Twist ee = Twist::Straight, eg = Twist::Opposite, ge = Twist::Straight, gg = Twist::Opposite;
};
struct CayleyResult {
  Construction construction;
  RingMap extended_sigma;             // σ(a + b u) = σ(a) − b u
  bool extended_sigma_anti = false;   // verified on basis pairs
};
// Throws SigmaNotInvolutive or AlphaNotCentralUnit.
CayleyResult cayley_dickson(const Ring& b, const RingMap& sigma, const Element& alpha,
                            CayleyFlavor flavor = CayleyFlavor::Classical, CayleyTwists twists = {},
                            std::string name = {});

inline constexpr std::uint32_t kTowerCapRationals = 5;
inline constexpr std::uint32_t kTowerCapFinite = 8;
// [B_0, ..., B_levels], B_0 the one-dimensional field algebra, each level the
// classical double of the previous one with conjugation and α_i.
std::vector<CayleyResult> cayley_tower(const ScalarSpec& field, std::uint32_t levels,
                                       std::vector<Scalar> alphas = {});
// The one-dimensional algebra k with basis 1.
Ring scalar_algebra(const ScalarSpec& field);

// Crossed product over the pair groupoid on n objects. sigma[i][j] is
// σ_ij : B_j -> B_i; alpha[{i,j,k}] is α_ijk ∈ B_i (missing means 1).
struct MatrixSystem {
  std::vector<Ring> bases;
  std::vector<std::vector<RingMap>> sigma;
  std::map<std::array<std::uint32_t, 3>, Element> alpha;
  std::map<std::array<std::uint32_t, 3>, Twist> twist;
};
// Throws CoherenceViolation.
Construction matrix_ring(const MatrixSystem& sys);
// M_n(B) with identity σ, trivial α.
Construction matrix_ring(const Ring& b, std::uint32_t n);

// M_3(B) regraded by Z_2 by class parity (indices 0,1 in class 0, index 2 in
// class 1).
Construction m3_parity_grading(const Ring& b);

struct DynamicsResult {
  Construction construction;
  bool minimal = false;
  bool faithful = false;
};
// B = k^X with pointwise operations, σ_g(f) = f∘s(g⁻¹). action[g][x] = s(g)(x).
// Throws NotAnAction.
DynamicsResult dynamics_skew_group_ring(std::uint32_t x_size, const CategoryPresentation& group,
                                        const std::vector<std::vector<std::uint32_t>>& action,
                                        const ScalarSpec& field);

// F_{p^k} as a k-dimensional F_p algebra with basis 1, y, ..., y^{k-1}.
struct FiniteField {
  Ring ring;
  std::vector<std::uint32_t> modulus;  // monic irreducible, low degree first
  RingMap frobenius;
};
FiniteField finite_field(std::uint32_t p, std::uint32_t k);

// F_p[y]/(y^k) with the derivation d/dy.
struct TruncatedPolynomials {
  Ring ring;
  RingMap derivative;  // kind is meaningless for a derivation
};
TruncatedPolynomials truncated_polynomials(const ScalarSpec& field, std::uint32_t k);

// B1 × B2 as a block algebra.
Ring direct_product(const Ring& b1, const Ring& b2, std::string name = "product");
// Swap of the factors of B × B.
RingMap swap_factors(const Ring& b);

// Restricts a grading along a map of morphism sets: new component h is the sum
// of the old components g with map[g] = h.
Grading coarsen_grading(const Grading& gr, const CategoryPresentation& target,
                        const std::vector<std::uint32_t>& map);

}  // namespace nalab
