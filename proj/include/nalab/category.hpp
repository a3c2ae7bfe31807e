#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace nalab {

// A finite small category. Morphisms are indexed 0..m-1; the composite gh is
// defined exactly when d(g) = c(h). Groups are one-object categories whose
// morphism 0 is the identity.
struct CategoryPresentation {
  std::vector<std::string> objects;
  std::vector<std::string> morphisms;
  std::vector<std::uint32_t> dom;       // d(g)
  std::vector<std::uint32_t> cod;       // c(g)
  std::vector<std::uint32_t> identity;  // identity morphism of each object
  std::vector<std::vector<std::int32_t>> compose;  // gh, or -1 when not composable
  std::vector<std::int32_t> inverse;    // empty unless every morphism is invertible

  std::size_t num_objects() const noexcept { return objects.size(); }
  std::size_t num_morphisms() const noexcept { return morphisms.size(); }
  bool composable(std::uint32_t g, std::uint32_t h) const { return dom.at(g) == cod.at(h); }
  std::uint32_t mul(std::uint32_t g, std::uint32_t h) const;
  bool is_identity(std::uint32_t g) const;
  bool is_groupoid() const noexcept { return !inverse.empty(); }
  bool is_group() const noexcept { return objects.size() == 1 && is_groupoid(); }
  bool is_connected() const;
  // Every vertex group G_e is abelian.
  bool is_locally_abelian() const;
  bool is_abelian_group() const { return is_group() && is_locally_abelian(); }
  std::vector<std::uint32_t> vertex_group(std::uint32_t e) const;

  // Checks identities, associativity on composable triples and inverses;
  // fills `inverse` when every morphism turns out invertible.
  void validate();

  nlohmann::json to_json() const;

  static CategoryPresentation from_group_table(const std::vector<std::vector<std::uint32_t>>& table,
                                               std::vector<std::string> names = {});
  static CategoryPresentation cyclic_group(std::uint32_t n);
  // Z_{n1} x ... x Z_{nk}, elements in mixed radix with the first factor least significant.
  static CategoryPresentation abelian_group(const std::vector<std::uint32_t>& orders);
  // (Z_2)^bits with XOR as group law; element p is the integer p.
  static CategoryPresentation xor_group(std::uint32_t bits);
  // Objects 0..n-1, morphisms (i,j) = i*n + j with (i,j)(j,k) = (i,k).
  static CategoryPresentation pair_groupoid(std::uint32_t n);
  static CategoryPresentation disjoint_union(const CategoryPresentation& a, const CategoryPresentation& b);
  // Parses "Z<n>", "Z<a>xZ<b>...", "XOR<n>", "pair<n>".
  static CategoryPresentation parse(const std::string& text);
};

}  // namespace nalab
