#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "nalab/constructions.hpp"

namespace nalab {

// B with an endomorphism σ and a σ-derivation δ, both given by matrices on
// the basis of B (column j = image of basis element j).
struct SigmaDerivationData {
  Ring base;
  Matrix sigma;
  Matrix delta;

  Element sigma_of(const Element& b) const;
  Element delta_of(const Element& b) const;
  bool sigma_is_identity() const;
};

struct OreReport {
  bool ok = true;
  std::vector<Violation> violations;
  nlohmann::json to_json() const;
};
// Associativity and unit of B, σ unital and multiplicative, the twisted
// Leibniz rule δ(bc) = σ(b)δ(c) + δ(b)c, and δ(1) = 0, on basis pairs.
OreReport validate_sigma_derivation(const SigmaDerivationData& data);

// b_0 + b_1 x + ... + b_n x^n, without trailing zero coefficients.
class SkewPolynomial {
 public:
  SkewPolynomial(const SigmaDerivationData* data, std::vector<Element> coeffs);
  static SkewPolynomial zero(const SigmaDerivationData& data);
  static SkewPolynomial constant(const SigmaDerivationData& data, const Element& b);
  static SkewPolynomial x_power(const SigmaDerivationData& data, std::size_t n);

  const std::vector<Element>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  // Throws InvalidArgument for the zero polynomial.
  std::size_t degree() const;
  const SigmaDerivationData& data() const noexcept { return *data_; }
  Element coeff(std::size_t i) const;

  SkewPolynomial operator+(const SkewPolynomial& o) const;
  SkewPolynomial operator-(const SkewPolynomial& o) const;
  friend bool operator==(const SkewPolynomial& a, const SkewPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  nlohmann::json to_json() const;

 private:
  const SigmaDerivationData* data_;
  std::vector<Element> coeffs_;
};

// [s_{i,0}(b), ..., s_{i,i}(b)] with x^i b = Σ_j s_{i,i-j}(b) x^j.
std::vector<Element> s_coefficients(std::size_t i, const Element& b, const SigmaDerivationData& data);
SkewPolynomial ore_mul(const SkewPolynomial& p, const SkewPolynomial& q);
SkewPolynomial random_skew_polynomial(const SigmaDerivationData& data, std::size_t degree, bool monic,
                                      std::mt19937_64& rng);

bool is_sigma_delta_invariant(const Span& i, const SigmaDerivationData& data);

struct SigmaDeltaVerdict {
  bool simple = true;
  std::optional<Span> witness;
  std::size_t ideals_checked = 0;
};
SigmaDeltaVerdict is_sigma_delta_simple(const SigmaDerivationData& data, const Limits& lim = {});

// deg(p) + 1, and 0 for p = 0.
std::uint64_t ore_degree_map(const SkewPolynomial& p);

struct CommutatorDrop {
  bool drop = false;
  SkewPolynomial commutator;
};
// ab - ba for b in Z(B), or ax - xa when `b` is empty. Needs σ = id; the
// x-case needs a monic. Throws PreconditionUnmet, or Disagreement when the
// closed forms fail.
CommutatorDrop commutator_degree_drop(const SkewPolynomial& a, const std::optional<Element>& b);

struct TruncatedInvariance {
  bool holds = true;
  std::size_t n_max = 0;
  std::optional<std::size_t> failing_degree;
  std::optional<Element> failing_b;
  std::optional<Element> failing_c;
};
// B x^n I ⊆ IA for all n ≤ n_max, with IA = ⊕_j I x^j.
TruncatedInvariance check_A_invariance_truncated(const Span& i, const SigmaDerivationData& data, std::size_t n_max);

// c ∈ I with x c = σ(c)x + δ(c) ∉ IA, when σ(I) ⊄ I or δ(I) ⊄ I.
struct DegreeOneWitness {
  Element c;
  SkewPolynomial product;
};
std::optional<DegreeOneWitness> degree_one_witness(const Span& i, const SigmaDerivationData& data);

// Whether every coefficient of p lies in I.
bool in_extended_ideal(const SkewPolynomial& p, const Span& i);

}  // namespace nalab
