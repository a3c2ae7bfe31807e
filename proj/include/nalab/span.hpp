#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "nalab/linalg.hpp"
#include "nalab/ring.hpp"

namespace nalab {

// True when additive spans of `r` are handled as vector subspaces (an algebra
// over Q or F_p). Otherwise spans are explicit subgroups of a finite ring.
bool uses_linear_spans(const Ring& r);

// An additive subgroup (or subspace) of a ring. Used for ideals, subrings,
// grading components and product spans alike. The linear form is a canonical
// echelon basis; the finite form is an explicit member set.
class Span {
 public:
  explicit Span(Ring ring);
  static Span of(const Ring& ring, const std::vector<Element>& gens);
  static Span full(const Ring& ring);

  const Ring& ring() const noexcept { return ring_; }
  bool is_linear() const noexcept { return linear_; }

  // Returns true when the span grew.
  bool insert(const Element& e);
  bool contains(const Element& e) const;
  bool contains(const Span& other) const;
  bool is_zero() const;
  bool is_full() const;

  // Additive generators: the echelon basis, or a greedy generating set.
  std::vector<Element> generators() const;
  // Number of elements; 0 for a nonzero span over Q.
  std::uint64_t order() const;
  std::size_t dim() const;
  const Subspace& subspace() const;

  std::vector<Element> elements(std::uint64_t cap = kDefaultEnumerationCap) const;
  // One nonzero element per line through the origin for linear spans; all
  // nonzero elements otherwise. Generates the same principal ideals.
  std::vector<Element> projective_elements(std::uint64_t cap = kDefaultEnumerationCap) const;

  Span operator+(const Span& other) const;
  Span intersect(const Span& other) const;
  friend bool operator==(const Span& a, const Span& b);

  nlohmann::json to_json() const;
  std::string key() const;  // canonical string, usable for dedup

 private:
  Ring ring_;
  bool linear_;
  std::optional<Subspace> sub_;
  std::vector<char> mask_;
  std::vector<Element> members_;
  std::vector<Element> gens_;
};

// Additive span of {x*y : x in X, y in Y}; exact on spanning sets.
Span product_span(const Span& x, const Span& y);
// Span of x(yz) + (x'y')z', the triple product of subsets.
Span triple_span(const Span& x, const Span& y, const Span& z);

// A subring presented as a ring of its own, with coordinate maps back and
// forth. Linear spans keep the echelon basis as the new basis.
struct SubringView {
  Ring ring;
  Span in_parent;
  std::vector<Element> images;  // image of each basis element / table index
  std::vector<std::int64_t> position;  // finite form: parent index -> table index
  Element to_parent(const Element& x) const;
  Element from_parent(const Element& a) const;
};
SubringView subring_as_ring(const Span& s, std::string name);

}  // namespace nalab
