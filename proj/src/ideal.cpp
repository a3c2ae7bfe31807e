#include "nalab/ideal.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_set>

namespace nalab {

nlohmann::json Limits::to_json() const {
  return {{"cap", cap},
          {"closure_steps", closure_steps},
          {"seed", seed},
          {"random_samples", random_samples},
          {"brute_force_points", brute_force_points}};
}

std::string_view to_string(Simplicity s) {
  switch (s) {
    case Simplicity::Simple: return "Simple";
    case Simplicity::NotSimple: return "NotSimple";
    case Simplicity::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

nlohmann::json SimplicityVerdict::to_json() const {
  switch (kind) {
    case Simplicity::Simple: return "Simple";
    case Simplicity::NotSimple: {
      nlohmann::json w = witness ? witness->to_json() : nlohmann::json(nullptr);
      nlohmann::json body = {{"witness", w}};
      if (!reason.empty()) body["reason"] = reason;
      return {{"NotSimple", body}};
    }
    case Simplicity::Inconclusive: return {{"Inconclusive", {{"reason", reason}}}};
  }
  return nullptr;
}

Span ideal_closure_in(const Span& over, const std::vector<Element>& gens, const Limits& lim) {
  const Ring& r = over.ring();
  Span out(r);
  const auto og = over.generators();
  std::deque<Element> queue(gens.begin(), gens.end());
  std::uint64_t steps = 0;
  while (!queue.empty()) {
    Element x = std::move(queue.front());
    queue.pop_front();
    if (!out.insert(x)) continue;
    if (out.is_full()) break;
    if (++steps > lim.closure_steps) throw Error(ErrorCode::TooLarge, "ideal closure exceeded the step cap");
    for (const auto& a : og) {
      queue.push_back(r.mul(a, x));
      queue.push_back(r.mul(x, a));
    }
  }
  return out;
}

Span ideal_closure(const Ring& r, const std::vector<Element>& gens, const Limits& lim) {
  return ideal_closure_in(Span::full(r), gens, lim);
}

bool is_ideal_in(const Span& over, const Span& i) {
  if (!over.contains(i)) return false;
  const Ring& r = over.ring();
  for (const auto& a : over.generators())
    for (const auto& x : i.generators())
      if (!i.contains(r.mul(a, x)) || !i.contains(r.mul(x, a))) return false;
  return true;
}

namespace {

std::uint64_t span_size_key(const Span& s) { return s.is_linear() ? s.dim() : s.order(); }

void sort_spans(std::vector<Span>& v) {
  std::stable_sort(v.begin(), v.end(), [](const Span& a, const Span& b) {
    auto ka = span_size_key(a), kb = span_size_key(b);
    if (ka != kb) return ka < kb;
    return a.key() < b.key();
  });
}

}  // namespace

std::vector<Span> enumerate_ideals_in(const Span& over, const Limits& lim) {
  std::vector<Span> ideals;
  std::unordered_set<std::string> seen;
  auto add = [&](Span s) {
    if (seen.insert(s.key()).second) {
      ideals.push_back(std::move(s));
      return true;
    }
    return false;
  };
  add(Span(over.ring()));
  for (const auto& a : over.projective_elements(lim.cap)) add(ideal_closure_in(over, {a}, lim));
  // Join closure: every ideal is the sum of the principal ideals of its members.
  for (std::size_t i = 0; i < ideals.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(ideals[i] + ideals[j]);
  sort_spans(ideals);
  return ideals;
}

std::vector<Span> enumerate_ideals(const Ring& r, const Limits& lim) {
  return enumerate_ideals_in(Span::full(r), lim);
}

namespace {

Matrix zero_matrix(const ScalarSpec& f, std::size_t d) { return Matrix(d, zero_vec(f, d)); }

Matrix random_combination(const ScalarSpec& f, const std::vector<Matrix>& gens, std::mt19937_64& rng) {
  const auto p = f.modulus();
  const std::size_t d = gens.front().size();
  Matrix theta = zero_matrix(f, d);
  auto coeff = [&] { return Scalar::residue(static_cast<long long>(rng() % p), p); };
  for (const auto& g : gens) {
    Scalar c = coeff();
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < d; ++i) axpy(theta[i], c, g[i]);
  }
  // A couple of words of length two make θ less likely to lie in a small
  // commutative subalgebra.
  for (int k = 0; k < 2; ++k) {
    const auto& a = gens[rng() % gens.size()];
    const auto& b = gens[rng() % gens.size()];
    Matrix ab = mat_mul(a, b);
    Scalar c = coeff();
    for (std::size_t i = 0; i < d; ++i) axpy(theta[i], c, ab[i]);
  }
  return theta;
}

// Kernel of a d x d matrix acting on column vectors.
std::vector<Vec> matrix_kernel(const ScalarSpec& f, const Matrix& m) {
  const std::size_t d = m.size();
  std::vector<Vec> images(d, Vec(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) images[j][i] = m[i][j];
  return kernel(f, d, images);
}

std::vector<Vec> projective_combinations(const ScalarSpec& f, const std::vector<Vec>& basis) {
  std::vector<Vec> out;
  const auto p = f.modulus();
  const std::size_t k = basis.size();
  const std::size_t d = basis.front().size();
  std::vector<std::uint32_t> c(k, 0);
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::fill(c.begin(), c.end(), 0);
    c[lead] = 1;
    while (true) {
      Vec v = zero_vec(f, d);
      for (std::size_t i = 0; i < k; ++i)
        if (c[i]) axpy(v, Scalar::residue(c[i], p), basis[i]);
      out.push_back(std::move(v));
      std::size_t i = lead + 1;
      while (i < k && ++c[i] == p) c[i++] = 0;
      if (i >= k) break;
    }
  }
  return out;
}

Subspace spin(const ScalarSpec& f, const std::vector<Matrix>& gens, const Vec& v) {
  Subspace s(f, v.size());
  std::deque<Vec> queue{v};
  while (!queue.empty() && !s.is_full()) {
    Vec x = std::move(queue.front());
    queue.pop_front();
    if (!s.insert(x)) continue;
    for (const auto& g : gens) queue.push_back(mat_vec(g, x));
  }
  return s;
}

}  // namespace

std::optional<IrreducibilityResult> multiplication_module_test(const Ring& r, const Limits& lim) {
  if (!uses_linear_spans(r) || !r.field().is_finite())
    throw Error(ErrorCode::InvalidArgument, "module test needs an algebra over F_p");
  const auto& f = r.field();
  const std::size_t d = r.dim();
  const auto p = f.modulus();
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < d; ++i) {
    for (auto m : {left_mult_matrix(r, r.basis(i)), right_mult_matrix(r, r.basis(i))}) {
      bool zero = true;
      for (const auto& row : m) zero = zero && is_zero_vec(row);
      if (!zero) gens.push_back(std::move(m));
    }
  }
  if (gens.empty()) return IrreducibilityResult{d == 1, std::nullopt};
  std::vector<Matrix> gens_t;
  for (const auto& g : gens) gens_t.push_back(transpose(g));

  constexpr std::uint64_t kMaxKernelPoints = 4096;
  std::mt19937_64 rng(lim.seed);
  const std::uint32_t shifts = std::min<std::uint32_t>(p, 64);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Matrix theta0 = random_combination(f, gens, rng);
    std::optional<Matrix> best;
    std::size_t best_null = 0;
    for (std::uint32_t lam = 0; lam < shifts; ++lam) {
      Matrix theta = theta0;
      for (std::size_t i = 0; i < d; ++i) theta[i][i] -= Scalar::residue(lam, p);
      auto k = matrix_kernel(f, theta);
      if (k.empty()) continue;
      if (!best || k.size() < best_null) {
        best = std::move(theta);
        best_null = k.size();
      }
      if (best_null == 1) break;
    }
    if (!best) continue;
    std::uint64_t points = 1;
    for (std::size_t i = 0; i < best_null && points <= kMaxKernelPoints; ++i) points *= p;
    if (points > kMaxKernelPoints) continue;

    // Any proper nonzero submodule W meets ker θ, or its annihilator in the
    // dual meets ker θ^T; spinning every kernel line covers both cases.
    for (const auto& v : projective_combinations(f, matrix_kernel(f, *best))) {
      Subspace s = spin(f, gens, v);
      if (!s.is_full()) {
        Span w(r);
        for (const auto& row : s.basis()) w.insert(r.element(row));
        return IrreducibilityResult{false, w};
      }
    }
    for (const auto& v : projective_combinations(f, matrix_kernel(f, transpose(*best)))) {
      Subspace s = spin(f, gens_t, v);
      if (!s.is_full()) {
        std::vector<Vec> images(d, Vec(s.dim()));
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < s.dim(); ++j) images[i][j] = s.basis()[j][i];
        Span w(r);
        for (const auto& x : kernel(f, s.dim(), images)) w.insert(r.element(x));
        return IrreducibilityResult{false, w};
      }
    }
    return IrreducibilityResult{true, std::nullopt};
  }
  return std::nullopt;
}

SimplicityVerdict is_simple(const Ring& r, const Limits& lim) {
  SimplicityVerdict v;
  const Span full = Span::full(r);
  if (full.is_zero()) {
    v.kind = Simplicity::NotSimple;
    v.method = "structure";
    v.reason = "zero ring";
    v.witness = full;
    return v;
  }
  Span sq = product_span(full, full);
  if (sq.is_zero()) {
    v.kind = Simplicity::NotSimple;
    v.method = "structure";
    v.reason = "A*A = 0";
    v.witness = sq;
    return v;
  }
  if (!sq.is_full()) {
    // A*A is always a two-sided ideal.
    v.kind = Simplicity::NotSimple;
    v.method = "structure";
    v.witness = sq;
    return v;
  }
  if (r.is_algebra() && !r.field().is_finite()) {
    v.method = "witness search";
    std::vector<Element> candidates;
    for (std::size_t i = 0; i < r.dim(); ++i) candidates.push_back(r.basis(i));
    std::mt19937_64 rng(lim.seed);
    for (std::size_t k = 0; k < lim.random_samples; ++k) candidates.push_back(r.random_element(rng));
    for (const auto& a : candidates) {
      if (r.is_zero(a)) continue;
      Span i = ideal_closure(r, {a}, lim);
      if (!i.is_full()) {
        v.kind = Simplicity::NotSimple;
        v.witness = i;
        return v;
      }
    }
    v.kind = Simplicity::Inconclusive;
    v.reason = "infinite scalar field; use certify pipelines";
    return v;
  }
  std::uint64_t points = full.order() - 1;
  if (full.is_linear()) points /= (r.field().modulus() - 1);
  if (full.is_linear() && (points > lim.brute_force_points || points > lim.cap)) {
    v.method = "multiplication module test";
    auto res = multiplication_module_test(r, lim);
    if (!res) {
      v.kind = Simplicity::Inconclusive;
      v.reason = "no singular element with a small kernel found";
      return v;
    }
    v.kind = res->irreducible ? Simplicity::Simple : Simplicity::NotSimple;
    v.witness = res->witness;
    return v;
  }
  if (points > lim.cap) {
    v.kind = Simplicity::Inconclusive;
    v.method = "principal-ideal scan";
    v.reason = "ring exceeds the enumeration cap";
    return v;
  }
  v.method = "principal-ideal scan";
  for (const auto& a : full.projective_elements(lim.cap)) {
    Span i = ideal_closure(r, {a}, lim);
    if (!i.is_full()) {
      v.kind = Simplicity::NotSimple;
      v.witness = i;
      return v;
    }
  }
  v.kind = Simplicity::Simple;
  return v;
}

Span subring_closure(const Ring& r, const std::vector<Element>& gens, const Limits& lim) {
  Span s = Span::of(r, gens);
  std::uint64_t steps = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto g = s.generators();
    for (const auto& x : g)
      for (const auto& y : g) {
        if (++steps > lim.closure_steps) throw Error(ErrorCode::TooLarge, "subring closure exceeded the step cap");
        if (s.insert(r.mul(x, y))) changed = true;
      }
  }
  return s;
}

Span centralizer(const Ring& a, const std::vector<Element>& gens_of_b, const Limits& lim) {
  const Span b = subring_closure(a, gens_of_b, lim);
  const auto bg = b.generators();
  Span out(a);
  if (uses_linear_spans(a)) {
    const std::size_t d = a.dim();
    if (bg.empty()) return Span::full(a);
    std::vector<Vec> images;
    for (std::size_t i = 0; i < d; ++i) {
      Vec img;
      img.reserve(d * bg.size());
      for (const auto& y : bg) {
        Vec c = a.sub(a.mul(a.basis(i), y), a.mul(y, a.basis(i))).coords;
        img.insert(img.end(), c.begin(), c.end());
      }
      images.push_back(std::move(img));
    }
    for (auto& k : kernel(a.field(), d * bg.size(), images)) out.insert(a.element(std::move(k)));
    return out;
  }
  for (const auto& x : a.enumerate(lim.cap)) {
    bool ok = true;
    for (const auto& y : bg)
      if (!(a.mul(x, y) == a.mul(y, x))) {
        ok = false;
        break;
      }
    if (ok) out.insert(x);
  }
  return out;
}

Span center(const Ring& a) { return centralizer(a, a.additive_generators()); }

bool is_commutative(const Span& b) {
  const Ring& r = b.ring();
  const auto g = b.generators();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!(r.mul(g[i], g[j]) == r.mul(g[j], g[i]))) return false;
  return true;
}

bool is_maximal_commutative(const Span& b, const Limits& lim) {
  if (!is_commutative(b)) throw Error(ErrorCode::BNotCommutative, "B is not commutative", b.to_json());
  return centralizer(b.ring(), b.generators(), lim) == b;
}

bool is_A_invariant(const Span& i) {
  const Span full = Span::full(i.ring());
  return product_span(i, full).contains(product_span(full, i));
}

ASimplicityVerdict is_A_simple(const Span& b, const Limits& lim) {
  ASimplicityVerdict v;
  for (const auto& i : enumerate_ideals_in(b, lim)) {
    if (i.is_zero() || i == b) continue;
    ++v.ideals_checked;
    if (is_A_invariant(i)) {
      v.witness = i;
      return v;
    }
  }
  v.a_simple = true;
  return v;
}

namespace {

struct Bracketed {
  std::string text;
  Span span;
};

std::vector<Bracketed> bracketings(const std::vector<Span>& f, const std::vector<std::string>& names,
                                   std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return {Bracketed{names[lo], f[lo]}};
  std::vector<Bracketed> out;
  for (std::size_t mid = lo + 1; mid < hi; ++mid) {
    auto left = bracketings(f, names, lo, mid);
    auto right = bracketings(f, names, mid, hi);
    for (const auto& l : left)
      for (const auto& r : right) {
        std::string lt = mid - lo > 1 ? "(" + l.text + ")" : l.text;
        std::string rt = hi - mid > 1 ? "(" + r.text + ")" : r.text;
        out.push_back(Bracketed{lt + rt, product_span(l.span, r.span)});
      }
  }
  return out;
}

}  // namespace

AssociativityCheck check_bracketings(const std::vector<Span>& f, const std::vector<std::string>& names) {
  AssociativityCheck res;
  if (f.size() < 3) return res;
  auto all = bracketings(f, names, 0, f.size());
  for (std::size_t k = 1; k < all.size(); ++k)
    if (!(all[k].span == all[0].span)) {
      res.holds = false;
      res.failing = all[0].text + " != " + all[k].text;
      return res;
    }
  return res;
}

AssociativityCheck check_ideal_associativity(const Span& i, int copies) {
  if (copies < 1 || copies > 3) throw Error(ErrorCode::InvalidArgument, "copies must be 1, 2 or 3");
  const Span full = Span::full(i.ring());
  AssociativityCheck res;
  const std::size_t len = static_cast<std::size_t>(copies) + 1;
  for (std::size_t pos = 0; pos < len; ++pos) {
    std::vector<Span> f(len, full);
    std::vector<std::string> names(len, "A");
    f[pos] = i;
    names[pos] = "I";
    auto all = bracketings(f, names, 0, len);
    for (std::size_t k = 1; k < all.size(); ++k)
      if (!(all[k].span == all[0].span)) {
        res.holds = false;
        res.failing = all[0].text + " != " + all[k].text;
        return res;
      }
  }
  return res;
}

bool identity_property(const Span& i, const Span& b, Side side) {
  return (side == Side::Left ? product_span(b, i) : product_span(i, b)) == i;
}

IAndP apply_i_and_p(const Span& b, const Span& i) {
  if (!is_A_invariant(i)) throw Error(ErrorCode::NotAInvariant, "ideal is not A-invariant", i.to_json());
  auto assoc = check_ideal_associativity(i, 2);
  if (!assoc.holds) throw Error(ErrorCode::NotIdealAssociative, "ideal does not associate: " + assoc.failing);
  const Span full = Span::full(i.ring());
  Span ia = product_span(i, full);
  if (!is_ideal_in(full, ia)) throw Error(ErrorCode::ValidationFailure, "IA is not an ideal of A", ia.to_json());
  return IAndP{ia, b.intersect(ia)};
}

}  // namespace nalab
