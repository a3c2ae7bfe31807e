#include "nalab/span.hpp"

#include <algorithm>

namespace nalab {

namespace {

constexpr std::uint64_t kFiniteSpanCap = 1ull << 22;

std::uint64_t saturating_pow(std::uint64_t p, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (r > (std::uint64_t{1} << 62) / p) return std::uint64_t{1} << 62;
    r *= p;
  }
  return r;
}

// Calls f on every coefficient vector in F_p^k (projective: first nonzero = 1).
template <typename F>
void for_each_coefficients(std::uint32_t p, std::size_t k, bool projective, F&& f) {
  std::vector<std::uint32_t> c(k, 0);
  if (!projective) {
    while (true) {
      f(c);
      std::size_t i = 0;
      while (i < k && ++c[i] == p) c[i++] = 0;
      if (i == k) return;
    }
  }
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::fill(c.begin(), c.end(), 0);
    c[lead] = 1;
    while (true) {
      f(c);
      std::size_t i = lead + 1;
      while (i < k && ++c[i] == p) c[i++] = 0;
      if (i >= k) break;
    }
  }
}

}  // namespace

bool uses_linear_spans(const Ring& r) { return r.is_algebra() && r.field().is_field(); }

Span::Span(Ring ring) : ring_(std::move(ring)), linear_(uses_linear_spans(ring_)) {
  if (linear_) {
    sub_.emplace(ring_.field(), ring_.dim());
    return;
  }
  const auto n = ring_.cardinality();
  if (n > kFiniteSpanCap)
    throw Error(ErrorCode::TooLarge, "ring too large for explicit subgroup spans (" + std::to_string(n) + ")");
  mask_.assign(n, 0);
  Element z = ring_.zero();
  mask_[ring_.index_of(z)] = 1;
  members_.push_back(std::move(z));
}

Span Span::of(const Ring& ring, const std::vector<Element>& gens) {
  Span s(ring);
  for (const auto& g : gens) s.insert(g);
  return s;
}

Span Span::full(const Ring& ring) {
  if (uses_linear_spans(ring)) {
    Span s(ring);
    s.sub_ = Subspace::full(ring.field(), ring.dim());
    return s;
  }
  return of(ring, ring.additive_generators());
}

bool Span::insert(const Element& e) {
  ring_.check_owner(e);
  if (linear_) return sub_->insert(e.coords);
  if (mask_[ring_.index_of(e)]) return false;
  gens_.push_back(e);
  const std::vector<Element> base = members_;
  Element cur = e;
  while (!mask_[ring_.index_of(cur)]) {
    for (const auto& m : base) {
      Element s = ring_.add(m, cur);
      auto idx = ring_.index_of(s);
      if (!mask_[idx]) {
        mask_[idx] = 1;
        members_.push_back(std::move(s));
      }
    }
    cur = ring_.add(cur, e);
  }
  return true;
}

bool Span::contains(const Element& e) const {
  ring_.check_owner(e);
  if (linear_) return sub_->contains(e.coords);
  return mask_[ring_.index_of(e)] != 0;
}

bool Span::contains(const Span& other) const {
  for (const auto& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

bool Span::is_zero() const { return linear_ ? sub_->is_zero() : members_.size() == 1; }

bool Span::is_full() const {
  return linear_ ? sub_->is_full() : members_.size() == ring_.cardinality();
}

std::vector<Element> Span::generators() const {
  if (!linear_) return gens_;
  std::vector<Element> out;
  out.reserve(sub_->dim());
  for (const auto& row : sub_->basis()) out.push_back(ring_.element(row));
  return out;
}

std::uint64_t Span::order() const {
  if (!linear_) return members_.size();
  if (sub_->is_zero()) return 1;
  if (!ring_.field().is_finite()) return 0;
  return saturating_pow(ring_.field().modulus(), sub_->dim());
}

std::size_t Span::dim() const {
  if (!linear_) throw Error(ErrorCode::InvalidArgument, "dim() of a non-linear span");
  return sub_->dim();
}

const Subspace& Span::subspace() const {
  if (!linear_) throw Error(ErrorCode::InvalidArgument, "subspace() of a non-linear span");
  return *sub_;
}

std::vector<Element> Span::elements(std::uint64_t cap) const {
  if (!linear_) {
    if (members_.size() > cap) throw Error(ErrorCode::TooLarge, "span exceeds enumeration cap");
    return members_;
  }
  if (!ring_.field().is_finite() && !sub_->is_zero())
    throw Error(ErrorCode::InfiniteScalarField, "cannot enumerate a span over Q");
  if (order() > cap) throw Error(ErrorCode::TooLarge, "span exceeds enumeration cap");
  std::vector<Element> out;
  if (sub_->is_zero()) {
    out.push_back(ring_.zero());
    return out;
  }
  const auto p = ring_.field().modulus();
  const auto& basis = sub_->basis();
  for_each_coefficients(p, basis.size(), false, [&](const std::vector<std::uint32_t>& c) {
    Vec v = zero_vec(ring_.field(), ring_.dim());
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i]) axpy(v, Scalar::residue(c[i], p), basis[i]);
    out.push_back(ring_.element(std::move(v)));
  });
  return out;
}

std::vector<Element> Span::projective_elements(std::uint64_t cap) const {
  if (!linear_) {
    if (members_.size() > cap) throw Error(ErrorCode::TooLarge, "span exceeds enumeration cap");
    return {members_.begin() + 1, members_.end()};
  }
  if (sub_->is_zero()) return {};
  if (!ring_.field().is_finite()) throw Error(ErrorCode::InfiniteScalarField, "cannot enumerate a span over Q");
  const auto p = ring_.field().modulus();
  const auto& basis = sub_->basis();
  if (order() / (p - 1) > cap) throw Error(ErrorCode::TooLarge, "span exceeds enumeration cap");
  std::vector<Element> out;
  for_each_coefficients(p, basis.size(), true, [&](const std::vector<std::uint32_t>& c) {
    Vec v = zero_vec(ring_.field(), ring_.dim());
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i]) axpy(v, Scalar::residue(c[i], p), basis[i]);
    out.push_back(ring_.element(std::move(v)));
  });
  return out;
}

Span Span::operator+(const Span& other) const {
  if (!(ring_ == other.ring_)) throw Error(ErrorCode::RingMismatch, "spans of different rings");
  Span s = *this;
  for (const auto& g : other.generators()) s.insert(g);
  return s;
}

Span Span::intersect(const Span& other) const {
  if (!(ring_ == other.ring_)) throw Error(ErrorCode::RingMismatch, "spans of different rings");
  Span s(ring_);
  if (linear_) {
    s.sub_ = sub_->intersect(*other.sub_);
    return s;
  }
  for (const auto& m : members_)
    if (other.contains(m)) s.insert(m);
  return s;
}

bool operator==(const Span& a, const Span& b) {
  if (!(a.ring_ == b.ring_)) return false;
  if (a.linear_) return *a.sub_ == *b.sub_;
  return a.mask_ == b.mask_;
}

nlohmann::json Span::to_json() const {
  auto arr = nlohmann::json::array();
  if (!linear_ && ring_.is_table()) {
    std::vector<std::uint32_t> idx;
    for (const auto& m : members_) idx.push_back(m.index);
    std::sort(idx.begin(), idx.end());
    for (auto i : idx) arr.push_back(i);
    return arr;
  }
  if (!linear_) {
    std::vector<std::pair<std::uint64_t, const Element*>> sorted;
    for (const auto& m : members_) sorted.emplace_back(ring_.index_of(m), &m);
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [i, m] : sorted) arr.push_back(ring_.element_json(*m));
    return arr;
  }
  for (const auto& g : generators()) arr.push_back(ring_.element_json(g));
  return arr;
}

std::string Span::key() const {
  if (!linear_) return std::string(mask_.begin(), mask_.end());
  std::string s;
  for (const auto& row : sub_->basis()) {
    for (const auto& c : row) {
      s += c.to_string();
      s += ',';
    }
    s += ';';
  }
  return s;
}

Span product_span(const Span& x, const Span& y) {
  const Ring& r = x.ring();
  Span out(r);
  const auto xs = x.generators();
  const auto ys = y.generators();
  for (const auto& a : xs) {
    for (const auto& b : ys) {
      out.insert(r.mul(a, b));
      if (out.is_full()) return out;
    }
  }
  return out;
}

Span triple_span(const Span& x, const Span& y, const Span& z) {
  return product_span(x, product_span(y, z)) + product_span(product_span(x, y), z);
}

Element SubringView::to_parent(const Element& x) const {
  ring.check_owner(x);
  if (ring.is_table()) return images.at(x.index);
  const Ring& p = in_parent.ring();
  Vec v = zero_vec(p.field(), p.dim());
  for (std::size_t i = 0; i < images.size(); ++i) axpy(v, x.coords[i], images[i].coords);
  return p.element(std::move(v));
}

Element SubringView::from_parent(const Element& a) const {
  if (!in_parent.contains(a)) throw Error(ErrorCode::InvalidArgument, "element outside the subring");
  if (ring.is_table()) return ring.element(static_cast<std::uint32_t>(position.at(in_parent.ring().index_of(a))));
  const auto& piv = in_parent.subspace().pivots();
  Vec v;
  v.reserve(piv.size());
  for (auto p : piv) v.push_back(a.coords[p]);
  return ring.element(std::move(v));
}

SubringView subring_as_ring(const Span& s, std::string name) {
  const Ring& parent = s.ring();
  if (s.is_linear()) {
    if (s.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero subring has no basis");
    const auto basis = s.generators();
    const auto& piv = s.subspace().pivots();
    const std::size_t k = basis.size();
    std::vector<std::vector<std::vector<Term>>> c(k, std::vector<std::vector<Term>>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        Element w = parent.mul(basis[i], basis[j]);
        if (!s.contains(w))
          throw Error(ErrorCode::InvalidArgument, "span is not closed under multiplication",
                      nlohmann::json::array({parent.element_json(basis[i]), parent.element_json(basis[j])}));
        for (std::size_t r = 0; r < k; ++r)
          if (!w.coords[piv[r]].is_zero()) c[i][j].push_back(Term{static_cast<std::uint32_t>(r), w.coords[piv[r]]});
      }
    SubringView v{Ring::make_algebra_sparse(parent.field(), k, std::move(c), std::move(name)), s, basis, {}};
    return v;
  }
  const auto members = s.elements();
  const auto n = members.size();
  std::vector<std::int64_t> pos(parent.cardinality(), -1);
  for (std::size_t i = 0; i < n; ++i) pos[parent.index_of(members[i])] = static_cast<std::int64_t>(i);
  std::vector<std::vector<std::uint32_t>> add(n, std::vector<std::uint32_t>(n)), mul = add;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto a = pos[parent.index_of(parent.add(members[i], members[j]))];
      auto m = pos[parent.index_of(parent.mul(members[i], members[j]))];
      if (m < 0)
        throw Error(ErrorCode::InvalidArgument, "subgroup is not closed under multiplication",
                    nlohmann::json::array({parent.element_json(members[i]), parent.element_json(members[j])}));
      add[i][j] = static_cast<std::uint32_t>(a);
      mul[i][j] = static_cast<std::uint32_t>(m);
    }
  SubringView v{Ring::make_table(std::move(add), std::move(mul), 0, std::move(name)), s, members, std::move(pos)};
  return v;
}

}  // namespace nalab
