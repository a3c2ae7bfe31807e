#include "nalab/linalg.hpp"

#include <algorithm>

namespace nalab {

void require_field(const ScalarSpec& spec) {
  if (!spec.is_field())
    throw Error(ErrorCode::InvalidArgument,
                "linear algebra requires a field; got " + spec.to_string());
}

Subspace::Subspace(ScalarSpec field, std::size_t ambient_dim)
    : field_(field), n_(ambient_dim) {
  require_field(field_);
}

Subspace Subspace::span(ScalarSpec field, std::size_t ambient_dim, const std::vector<Vec>& gens) {
  Subspace s(field, ambient_dim);
  for (const auto& g : gens) s.insert(g);
  return s;
}

Subspace Subspace::full(ScalarSpec field, std::size_t ambient_dim) {
  Subspace s(field, ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    s.rows_.push_back(unit_vec(field, ambient_dim, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Vec Subspace::reduce(Vec v) const {
  if (v.size() != n_) throw Error(ErrorCode::ShapeMismatch, "vector length does not match subspace");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const auto& c = v[pivots_[r]];
    if (!c.is_zero()) {
      Scalar f = -c;
      axpy(v, f, rows_[r]);
    }
  }
  return v;
}

bool Subspace::insert(const Vec& v) {
  Vec w = reduce(v);
  std::size_t p = 0;
  while (p < n_ && w[p].is_zero()) ++p;
  if (p == n_) return false;
  Scalar inv = w[p].inverse();
  for (auto& x : w) x *= inv;
  for (auto& row : rows_) {
    if (!row[p].is_zero()) {
      Scalar f = -row[p];
      axpy(row, f, w);
    }
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(w));
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& r : other.rows_)
    if (!contains(r)) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& other) const {
  Subspace s = *this;
  for (const auto& r : other.rows_) s.insert(r);
  return s;
}

Subspace Subspace::intersect(const Subspace& other) const {
  // Solve sum a_i u_i - sum b_j w_j = 0 and map the a-part back.
  std::vector<Vec> images;
  for (const auto& u : rows_) images.push_back(u);
  for (const auto& w : other.rows_) images.push_back(neg(w));
  Subspace out(field_, n_);
  for (const auto& k : kernel(field_, n_, images)) {
    Vec v = zero_vec(field_, n_);
    for (std::size_t i = 0; i < rows_.size(); ++i) axpy(v, k[i], rows_[i]);
    out.insert(v);
  }
  return out;
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.n_ == b.n_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
}

std::vector<Vec> kernel(const ScalarSpec& field, std::size_t m, const std::vector<Vec>& images) {
  require_field(field);
  const std::size_t n = images.size();
  // Augmented rows [T(e_i) | e_i]; eliminate on the first m columns.
  std::vector<Vec> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (images[i].size() != m) throw Error(ErrorCode::ShapeMismatch, "kernel: image length mismatch");
    Vec r = images[i];
    r.resize(m + n, Scalar::zero(field));
    r[m + i] = Scalar::one(field);
    rows.push_back(std::move(r));
  }
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m && lead < n; ++col) {
    std::size_t piv = lead;
    while (piv < n && rows[piv][col].is_zero()) ++piv;
    if (piv == n) continue;
    std::swap(rows[piv], rows[lead]);
    Scalar inv = rows[lead][col].inverse();
    for (auto& x : rows[lead]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r != lead && !rows[r][col].is_zero()) {
        Scalar f = -rows[r][col];
        axpy(rows[r], f, rows[lead]);
      }
    }
    ++lead;
  }
  std::vector<Vec> out;
  for (std::size_t r = lead; r < n; ++r) out.emplace_back(rows[r].begin() + m, rows[r].end());
  return out;
}

Matrix identity_matrix(const ScalarSpec& field, std::size_t n) {
  Matrix m;
  for (std::size_t i = 0; i < n; ++i) m.push_back(unit_vec(field, n, i));
  return m;
}

Vec mat_vec(const Matrix& m, const Vec& v) {
  Vec out;
  out.reserve(m.size());
  for (const auto& row : m) {
    if (row.size() != v.size()) throw Error(ErrorCode::ShapeMismatch, "mat_vec shape mismatch");
    if (v.empty()) throw Error(ErrorCode::ShapeMismatch, "mat_vec on empty vector");
    Scalar acc = row[0] * v[0];
    for (std::size_t j = 1; j < v.size(); ++j)
      if (!row[j].is_zero() && !v[j].is_zero()) acc += row[j] * v[j];
    out.push_back(std::move(acc));
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return m;
  Matrix t(m[0].size(), Vec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  Matrix bt = transpose(b);
  Matrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mat_vec(bt, a[i]);
  return out;
}

std::size_t rank(const ScalarSpec& field, const Matrix& m) {
  if (m.empty()) return 0;
  return Subspace::span(field, m[0].size(), m).dim();
}

bool solve(const ScalarSpec& field, const Matrix& m, const Vec& b, Vec& x) {
  require_field(field);
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  Matrix aug = m;
  for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
  std::vector<std::size_t> pivcols;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows; ++col) {
    std::size_t piv = lead;
    while (piv < rows && aug[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(aug[piv], aug[lead]);
    Scalar inv = aug[lead][col].inverse();
    for (auto& v : aug[lead]) v *= inv;
    for (std::size_t r = 0; r < rows; ++r)
      if (r != lead && !aug[r][col].is_zero()) {
        Scalar f = -aug[r][col];
        axpy(aug[r], f, aug[lead]);
      }
    pivcols.push_back(col);
    ++lead;
  }
  for (std::size_t r = lead; r < rows; ++r)
    if (!aug[r][cols].is_zero()) return false;
  x = zero_vec(field, cols);
  for (std::size_t r = 0; r < pivcols.size(); ++r) x[pivcols[r]] = aug[r][cols];
  return true;
}

}  // namespace nalab
