#pragma once

#include <cstddef>
#include <vector>

#include "nalab/scalar.hpp"

namespace nalab {

// A subspace of F^n held as a reduced row echelon basis. Two subspaces are
// equal iff their bases are identical, which makes the form canonical.
class Subspace {
 public:
  Subspace(ScalarSpec field, std::size_t ambient_dim);
  static Subspace span(ScalarSpec field, std::size_t ambient_dim, const std::vector<Vec>& gens);
  static Subspace full(ScalarSpec field, std::size_t ambient_dim);

  // Adds v to the span; returns true when the dimension grew.
  bool insert(const Vec& v);
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }
  bool contains(const Subspace& other) const;

  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t ambient_dim() const noexcept { return n_; }
  const ScalarSpec& field() const noexcept { return field_; }
  const std::vector<Vec>& basis() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  bool is_zero() const noexcept { return rows_.empty(); }
  bool is_full() const noexcept { return rows_.size() == n_; }

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  ScalarSpec field_;
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

// Kernel of the linear map F^n -> F^m sending e_i to images[i].
std::vector<Vec> kernel(const ScalarSpec& field, std::size_t m, const std::vector<Vec>& images);

// Square matrices are stored row-major as vectors of rows.
using Matrix = std::vector<Vec>;

Matrix identity_matrix(const ScalarSpec& field, std::size_t n);
Vec mat_vec(const Matrix& m, const Vec& v);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
std::size_t rank(const ScalarSpec& field, const Matrix& m);
// Solves m x = b; returns false when inconsistent.
bool solve(const ScalarSpec& field, const Matrix& m, const Vec& b, Vec& x);

void require_field(const ScalarSpec& spec);

}  // namespace nalab
