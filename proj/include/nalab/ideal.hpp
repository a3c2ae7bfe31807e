#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nalab/ring.hpp"
#include "nalab/span.hpp"

namespace nalab {

// Enumeration caps and the pseudorandom seed shared by the brute-force
// oracles. Reports copy these verbatim.
struct Limits {
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t closure_steps = 1'000'000;
  std::uint64_t seed = 0xC0FFEE;
  std::size_t random_samples = 32;
  // Brute-force principal-ideal scans are used below this many projective
  // points; above it the module irreducibility test takes over.
  std::uint64_t brute_force_points = 20'000;

  nlohmann::json to_json() const;
};

using IdealBasis = Span;

// Smallest span containing `gens` and closed under multiplication on both
// sides by the generators of `over` (the whole ring by default).
Span ideal_closure(const Ring& r, const std::vector<Element>& gens, const Limits& lim = {});
Span ideal_closure_in(const Span& over, const std::vector<Element>& gens, const Limits& lim = {});
bool is_ideal_in(const Span& over, const Span& i);

// All two-sided ideals (of the whole ring, or of a subring given as a span),
// sorted by size and then canonically.
std::vector<Span> enumerate_ideals(const Ring& r, const Limits& lim = {});
std::vector<Span> enumerate_ideals_in(const Span& over, const Limits& lim = {});

enum class Simplicity { Simple, NotSimple, Inconclusive };
std::string_view to_string(Simplicity s);

struct SimplicityVerdict {
  Simplicity kind = Simplicity::Inconclusive;
  std::optional<Span> witness;  // proper nonzero ideal, or A*A when it vanishes
  std::string method;
  std::string reason;
  nlohmann::json to_json() const;
};

SimplicityVerdict is_simple(const Ring& r, const Limits& lim = {});

// Subring generated by `gens` (closed under addition and multiplication).
Span subring_closure(const Ring& r, const std::vector<Element>& gens, const Limits& lim = {});
// C_A(B), where B is the subring generated by gens_of_b.
Span centralizer(const Ring& a, const std::vector<Element>& gens_of_b, const Limits& lim = {});
Span center(const Ring& a);
bool is_commutative(const Span& b);
// Throws BNotCommutative when B is not commutative.
bool is_maximal_commutative(const Span& b, const Limits& lim = {});

// A I ⊆ I A inside the ambient ring of I.
bool is_A_invariant(const Span& i);

struct ASimplicityVerdict {
  bool a_simple = false;
  std::optional<Span> witness;
  std::size_t ideals_checked = 0;
};
ASimplicityVerdict is_A_simple(const Span& b, const Limits& lim = {});

struct AssociativityCheck {
  bool holds = true;
  std::string failing;  // e.g. "(IA)A != I(AA)"
};
// Compares every bracketing of the words with one I and `copies` copies of A.
AssociativityCheck check_ideal_associativity(const Span& i, int copies = 2);
// Compares every bracketing of the product f[0] f[1] ... f[n-1].
AssociativityCheck check_bracketings(const std::vector<Span>& f, const std::vector<std::string>& names);

enum class Side { Left, Right };
// BI = I (left) or IB = I (right).
bool identity_property(const Span& i, const Span& b, Side side);

struct IAndP {
  Span ia;      // i(I) = IA, an ideal of A
  Span b_cap;   // p(i(I)) = B ∩ IA
};
// Throws NotAInvariant or NotIdealAssociative; the associativity check runs
// on I itself with two copies of A.
IAndP apply_i_and_p(const Span& b, const Span& i);

// Linear spans over F_p: true when the multiplication module of `r` has no
// proper nonzero submodule. Exact when it returns a value; nullopt when no
// usable singular element was found.
struct IrreducibilityResult {
  bool irreducible = false;
  std::optional<Span> witness;
};
std::optional<IrreducibilityResult> multiplication_module_test(const Ring& r, const Limits& lim);

}  // namespace nalab
