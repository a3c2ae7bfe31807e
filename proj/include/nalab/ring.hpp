#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nalab/linalg.hpp"
#include "nalab/scalar.hpp"

namespace nalab {

enum class Tri { Yes, No, Unknown };
std::string_view to_string(Tri t);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1ull << 20;
inline constexpr std::uint64_t kDefaultTableCap = 4096;

namespace detail {
struct RingImpl;
}

// An element is a value tagged with the id of its owning ring. Table rings
// use `index`; structure algebras use `coords` (length = dimension).
struct Element {
  std::uint64_t ring_id = 0;
  std::uint32_t index = 0;
  Vec coords;

  friend bool operator==(const Element& a, const Element& b) {
    return a.ring_id == b.ring_id && a.index == b.index && a.coords == b.coords;
  }
};

// One structure-constant entry: basis_i * basis_j has coefficient `value`
// on basis_k.
struct Term {
  std::uint32_t k;
  Scalar value;
};

// Dense constants c[i][j][k]; basis_i * basis_j = sum_k c[i][j][k] basis_k.
using DenseConstants = std::vector<std::vector<Vec>>;

struct PropertyReport {
  Tri associative = Tri::Unknown;
  std::optional<std::array<Element, 3>> associativity_witness;
  Tri commutative = Tri::Unknown;
  std::optional<std::array<Element, 2>> commutativity_witness;
  Tri unital = Tri::Unknown;
  std::optional<Element> unit;
  std::uint64_t size = 0;  // 0 when infinite
  std::size_t dimension = 0;
};

// A ring given either by finite addition/multiplication tables or by
// structure constants over Q or F_p. Neither associativity nor a unit is
// assumed. Rings are immutable and cheap to copy (shared representation).
class Ring {
 public:
  enum class Kind { Table, Algebra };

  // Validates the abelian group law and both distributive laws exhaustively.
  static Ring make_table(std::vector<std::vector<std::uint32_t>> add,
                         std::vector<std::vector<std::uint32_t>> mul, std::uint32_t zero,
                         std::string name = "table ring");
  static Ring make_algebra(ScalarSpec field, std::size_t dim, const DenseConstants& constants,
                           std::string name = "algebra");
  static Ring make_algebra_sparse(ScalarSpec field, std::size_t dim,
                                  std::vector<std::vector<std::vector<Term>>> constants,
                                  std::string name = "algebra");
  // Z/nZ as a table ring.
  static Ring integers_mod(std::uint32_t n);

  Kind kind() const;
  bool is_table() const { return kind() == Kind::Table; }
  bool is_algebra() const { return kind() == Kind::Algebra; }
  std::uint64_t id() const;
  const std::string& name() const;
  Ring renamed(std::string name) const;

  // Table rings: element count. Algebras: p^d over F_p, 0 over Q.
  std::uint64_t cardinality() const;
  bool is_finite() const { return cardinality() != 0; }
  std::size_t dim() const;                // algebras only
  const ScalarSpec& field() const;        // algebras only
  std::uint32_t table_size() const;       // tables only

  Element zero() const;
  Element element(std::uint32_t index) const;  // tables
  Element element(Vec coords) const;           // algebras
  Element basis(std::size_t i) const;          // algebras
  Element scalar(const Scalar& s, const Element& unit) const;

  Element add(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  bool is_zero(const Element& a) const;
  void check_owner(const Element& a) const;

  // Additive generators: the basis for algebras, a minimal generating set of
  // the additive group for tables.
  const std::vector<Element>& additive_generators() const;

  // All elements, zero first. Throws InfiniteScalarField or TooLarge.
  std::vector<Element> enumerate(std::uint64_t cap = kDefaultEnumerationCap) const;
  // Bijection between [0, cardinality) and elements for finite rings.
  std::uint64_t index_of(const Element& a) const;
  Element from_index(std::uint64_t i) const;

  Element random_element(std::mt19937_64& rng) const;

  const std::vector<std::vector<std::vector<Term>>>& constants() const;  // algebras
  const std::vector<std::uint32_t>& add_table() const;                   // tables, n*n
  const std::vector<std::uint32_t>& mul_table() const;                   // tables, n*n

  // Cached, thread-safe structural probe.
  const PropertyReport& probe() const;

  nlohmann::json element_json(const Element& a) const;
  Element element_from_json(const nlohmann::json& j) const;
  std::string element_string(const Element& a) const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.impl_ == b.impl_; }

 private:
  friend Ring opposite(const Ring& r);
  friend Ring to_table(const Ring& r, std::uint64_t cap);
  explicit Ring(std::shared_ptr<const detail::RingImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::RingImpl> impl_;
};

enum class RingOp { Add, Mul, Neg };
Element ring_eval(const Ring& r, const Element& a, const Element& b, RingOp op);

PropertyReport probe_properties(const Ring& r);
Ring opposite(const Ring& r);
std::vector<Element> enumerate_elements(const Ring& r, std::uint64_t cap = kDefaultEnumerationCap);

// Explicit conversion of an F_p algebra (or table ring) into table form.
Ring to_table(const Ring& r, std::uint64_t cap = kDefaultTableCap);

// Two representations describe the same ring on the same carrier: identical
// tables, or identical structure constants.
bool same_tables(const Ring& a, const Ring& b);

// Unit search: returns the two-sided identity if one exists.
std::optional<Element> find_unit(const Ring& r);
// Two-sided inverse of `a` w.r.t. `unit`, if any.
std::optional<Element> find_inverse(const Ring& r, const Element& a, const Element& unit);

// Left and right multiplication operators of an algebra as d x d matrices
// acting on column coordinate vectors.
Matrix left_mult_matrix(const Ring& r, const Element& a);
Matrix right_mult_matrix(const Ring& r, const Element& a);

}  // namespace nalab
