#include "nalab/ore.hpp"

#include <algorithm>

namespace nalab {

Element SigmaDerivationData::sigma_of(const Element& b) const { return base.element(mat_vec(sigma, b.coords)); }

Element SigmaDerivationData::delta_of(const Element& b) const { return base.element(mat_vec(delta, b.coords)); }

bool SigmaDerivationData::sigma_is_identity() const { return sigma == identity_matrix(base.field(), base.dim()); }

nlohmann::json OreReport::to_json() const {
  auto v = nlohmann::json::array();
  for (const auto& x : violations) v.push_back({{"kind", x.kind}, {"detail", x.detail}, {"witness", x.witness}});
  return {{"ok", ok}, {"violations", v}};
}

OreReport validate_sigma_derivation(const SigmaDerivationData& data) {
  OreReport rep;
  auto fail = [&](std::string kind, std::string detail, nlohmann::json w = nullptr) {
    rep.ok = false;
    rep.violations.push_back(Violation{std::move(kind), std::move(detail), std::move(w)});
  };
  const Ring& b = data.base;
  if (!b.is_algebra()) {
    fail("ShapeViolation", "base must be a structure algebra");
    return rep;
  }
  const auto d = b.dim();
  auto square = [&](const Matrix& m) {
    return m.size() == d && std::all_of(m.begin(), m.end(), [&](const Vec& r) { return r.size() == d; });
  };
  if (!square(data.sigma) || !square(data.delta)) {
    fail("ShapeViolation", "sigma and delta must be d x d matrices");
    return rep;
  }
  const auto& probe = b.probe();
  if (probe.associative != Tri::Yes) fail("AssociativityViolation", "base ring is not associative");
  if (!probe.unit) {
    fail("UnitViolation", "base ring is not unital");
    return rep;
  }
  const Element& one = *probe.unit;
  if (!(data.sigma_of(one) == one)) fail("EndomorphismViolation", "sigma(1) != 1");
  if (!b.is_zero(data.delta_of(one))) fail("DeltaUnitViolation", "delta(1) != 0", b.element_json(data.delta_of(one)));
  bool endo = true, leib = true;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Element x = b.basis(i), y = b.basis(j), xy = b.mul(x, y);
      if (endo && !(data.sigma_of(xy) == b.mul(data.sigma_of(x), data.sigma_of(y)))) {
        fail("EndomorphismViolation", "sigma is not multiplicative", nlohmann::json::array({i, j}));
        endo = false;
      }
      if (leib) {
        Element rhs = b.add(b.mul(data.sigma_of(x), data.delta_of(y)), b.mul(data.delta_of(x), y));
        if (!(data.delta_of(xy) == rhs)) {
          fail("LeibnizViolation", "delta(bc) != sigma(b)delta(c) + delta(b)c", nlohmann::json::array({i, j}));
          leib = false;
        }
      }
    }
  return rep;
}

SkewPolynomial::SkewPolynomial(const SigmaDerivationData* data, std::vector<Element> coeffs)
    : data_(data), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) data_->base.check_owner(c);
  while (!coeffs_.empty() && data_->base.is_zero(coeffs_.back())) coeffs_.pop_back();
}

SkewPolynomial SkewPolynomial::zero(const SigmaDerivationData& data) { return SkewPolynomial(&data, {}); }

SkewPolynomial SkewPolynomial::constant(const SigmaDerivationData& data, const Element& b) {
  return SkewPolynomial(&data, {b});
}

SkewPolynomial SkewPolynomial::x_power(const SigmaDerivationData& data, std::size_t n) {
  const auto& one = data.base.probe().unit;
  if (!one) throw Error(ErrorCode::PreconditionUnmet, "base ring is not unital");
  std::vector<Element> c(n + 1, data.base.zero());
  c[n] = *one;
  return SkewPolynomial(&data, std::move(c));
}

std::size_t SkewPolynomial::degree() const {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "the zero polynomial has no degree");
  return coeffs_.size() - 1;
}

Element SkewPolynomial::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : data_->base.zero(); }

SkewPolynomial SkewPolynomial::operator+(const SkewPolynomial& o) const {
  const auto n = std::max(coeffs_.size(), o.coeffs_.size());
  std::vector<Element> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(data_->base.add(coeff(i), o.coeff(i)));
  return SkewPolynomial(data_, std::move(c));
}

SkewPolynomial SkewPolynomial::operator-(const SkewPolynomial& o) const {
  const auto n = std::max(coeffs_.size(), o.coeffs_.size());
  std::vector<Element> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(data_->base.sub(coeff(i), o.coeff(i)));
  return SkewPolynomial(data_, std::move(c));
}

nlohmann::json SkewPolynomial::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& c : coeffs_) arr.push_back(data_->base.element_json(c));
  return arr;
}

namespace {

// Coefficients of x^i b, index = power of x.
std::vector<Element> x_power_times(std::size_t i, const Element& b, const SigmaDerivationData& data) {
  const Ring& r = data.base;
  std::vector<Element> p{b};
  for (std::size_t step = 0; step < i; ++step) {
    std::vector<Element> next(p.size() + 1, r.zero());
    for (std::size_t j = 0; j < p.size(); ++j) {
      // x (c x^j) = σ(c) x^{j+1} + δ(c) x^j
      next[j + 1] = r.add(next[j + 1], data.sigma_of(p[j]));
      next[j] = r.add(next[j], data.delta_of(p[j]));
    }
    p = std::move(next);
  }
  return p;
}

}  // namespace

std::vector<Element> s_coefficients(std::size_t i, const Element& b, const SigmaDerivationData& data) {
  auto p = x_power_times(i, b, data);
  std::vector<Element> out;
  for (std::size_t m = 0; m <= i; ++m) out.push_back(p[i - m]);
  return out;
}

SkewPolynomial ore_mul(const SkewPolynomial& p, const SkewPolynomial& q) {
  if (&p.data() != &q.data()) throw Error(ErrorCode::RingMismatch, "skew polynomials over different data");
  const auto& data = p.data();
  const Ring& r = data.base;
  if (p.is_zero() || q.is_zero()) return SkewPolynomial::zero(data);
  std::vector<Element> out(p.coeffs().size() + q.coeffs().size() - 1, r.zero());
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    for (std::size_t k = 0; k < q.coeffs().size(); ++k) {
      if (r.is_zero(p.coeffs()[i]) || r.is_zero(q.coeffs()[k])) continue;
      auto xb = x_power_times(i, q.coeffs()[k], data);
      for (std::size_t j = 0; j < xb.size(); ++j)
        out[j + k] = r.add(out[j + k], r.mul(p.coeffs()[i], xb[j]));
    }
  return SkewPolynomial(&data, std::move(out));
}

SkewPolynomial random_skew_polynomial(const SigmaDerivationData& data, std::size_t degree, bool monic,
                                      std::mt19937_64& rng) {
  std::vector<Element> c;
  for (std::size_t i = 0; i <= degree; ++i) c.push_back(data.base.random_element(rng));
  if (monic) {
    const auto& one = data.base.probe().unit;
    if (!one) throw Error(ErrorCode::PreconditionUnmet, "base ring is not unital");
    c[degree] = *one;
  }
  return SkewPolynomial(&data, std::move(c));
}

bool is_sigma_delta_invariant(const Span& i, const SigmaDerivationData& data) {
  for (const auto& g : i.generators())
    if (!i.contains(data.sigma_of(g)) || !i.contains(data.delta_of(g))) return false;
  return true;
}

SigmaDeltaVerdict is_sigma_delta_simple(const SigmaDerivationData& data, const Limits& lim) {
  SigmaDeltaVerdict v;
  for (const auto& i : enumerate_ideals(data.base, lim)) {
    if (i.is_zero() || i.is_full()) continue;
    ++v.ideals_checked;
    if (is_sigma_delta_invariant(i, data)) {
      v.simple = false;
      v.witness = i;
      return v;
    }
  }
  return v;
}

std::uint64_t ore_degree_map(const SkewPolynomial& p) { return p.is_zero() ? 0 : p.degree() + 1; }

CommutatorDrop commutator_degree_drop(const SkewPolynomial& a, const std::optional<Element>& b) {
  const auto& data = a.data();
  const Ring& r = data.base;
  if (!data.sigma_is_identity()) throw Error(ErrorCode::PreconditionUnmet, "sigma must be the identity", "sigma_identity");
  if (b) {
    for (const auto& g : r.additive_generators())
      if (!(r.mul(*b, g) == r.mul(g, *b)))
        throw Error(ErrorCode::PreconditionUnmet, "b is not central in B", "b_central");
    SkewPolynomial bp = SkewPolynomial::constant(data, *b);
    SkewPolynomial c = ore_mul(a, bp) - ore_mul(bp, a);
    if (!a.is_zero() && !r.is_zero(c.coeff(a.degree())))
      throw Error(ErrorCode::Disagreement, "degree-n coefficient of ab - ba does not vanish", c.to_json());
    return CommutatorDrop{ore_degree_map(c) < ore_degree_map(a) || a.is_zero(), c};
  }
  const auto& one = r.probe().unit;
  if (a.is_zero() || !one || !(a.coeffs().back() == *one))
    throw Error(ErrorCode::PreconditionUnmet, "the x-case needs a monic polynomial", "monic");
  SkewPolynomial x = SkewPolynomial::x_power(data, 1);
  SkewPolynomial c = ore_mul(a, x) - ore_mul(x, a);
  std::vector<Element> closed;
  for (const auto& bi : a.coeffs()) closed.push_back(r.neg(data.delta_of(bi)));
  if (!(c == SkewPolynomial(&data, closed)))
    throw Error(ErrorCode::Disagreement, "ax - xa differs from -sum delta(b_i) x^i", c.to_json());
  return CommutatorDrop{ore_degree_map(c) < ore_degree_map(a), c};
}

bool in_extended_ideal(const SkewPolynomial& p, const Span& i) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(), [&](const Element& c) { return i.contains(c); });
}

TruncatedInvariance check_A_invariance_truncated(const Span& i, const SigmaDerivationData& data, std::size_t n_max) {
  TruncatedInvariance res;
  res.n_max = n_max;
  const Ring& r = data.base;
  const auto ig = i.generators();
  for (std::size_t n = 0; n <= n_max; ++n)
    for (const auto& c : ig) {
      auto xc = x_power_times(n, c, data);
      for (std::size_t k = 0; k < r.dim(); ++k) {
        const Element b = r.basis(k);
        for (const auto& coef : xc)
          if (!i.contains(r.mul(b, coef))) {
            res.holds = false;
            res.failing_degree = n;
            res.failing_b = b;
            res.failing_c = c;
            return res;
          }
      }
    }
  return res;
}

std::optional<DegreeOneWitness> degree_one_witness(const Span& i, const SigmaDerivationData& data) {
  SkewPolynomial x = SkewPolynomial::x_power(data, 1);
  for (const auto& c : i.generators()) {
    SkewPolynomial p = ore_mul(x, SkewPolynomial::constant(data, c));
    if (!in_extended_ideal(p, i)) return DegreeOneWitness{c, p};
  }
  return std::nullopt;
}

}  // namespace nalab
