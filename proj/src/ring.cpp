#include "nalab/ring.hpp"

#include <atomic>
#include <mutex>

namespace nalab {

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

namespace detail {

struct RingImpl {
  std::uint64_t id = 0;
  Ring::Kind kind = Ring::Kind::Table;
  std::string name;

  // table representation
  std::uint32_t n = 0;
  std::uint32_t zero = 0;
  std::vector<std::uint32_t> add, mul, neg;

  // algebra representation
  ScalarSpec field = ScalarSpec::rationals();
  std::size_t dim = 0;
  std::vector<std::vector<std::vector<Term>>> constants;

  std::vector<Element> generators;

  mutable std::once_flag probe_once;
  mutable PropertyReport report;
};

}  // namespace detail

namespace {

std::uint64_t next_ring_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

using Impl = detail::RingImpl;

void compute_table_generators(Impl& impl) {
  // Greedy: adjoin the first element outside the current subgroup.
  std::vector<char> in(impl.n, 0);
  std::vector<std::uint32_t> members{impl.zero};
  in[impl.zero] = 1;
  for (std::uint32_t x = 0; x < impl.n; ++x) {
    if (in[x]) continue;
    Element g;
    g.ring_id = impl.id;
    g.index = x;
    impl.generators.push_back(g);
    // S + <x> is the union of the cosets S + jx.
    std::vector<std::uint32_t> grown = members;
    std::uint32_t cur = x;
    while (!in[cur]) {
      for (auto m : members) {
        auto s = impl.add[static_cast<std::size_t>(m) * impl.n + cur];
        if (!in[s]) {
          in[s] = 1;
          grown.push_back(s);
        }
      }
      cur = impl.add[static_cast<std::size_t>(cur) * impl.n + x];
    }
    members = std::move(grown);
  }
}

std::shared_ptr<Impl> table_impl(std::uint32_t n, std::vector<std::uint32_t> add,
                                 std::vector<std::uint32_t> mul, std::uint32_t zero,
                                 std::string name) {
  auto impl = std::make_shared<Impl>();
  impl->id = next_ring_id();
  impl->kind = Ring::Kind::Table;
  impl->name = std::move(name);
  impl->n = n;
  impl->zero = zero;
  impl->add = std::move(add);
  impl->mul = std::move(mul);
  impl->neg.assign(n, 0);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (impl->add[static_cast<std::size_t>(a) * n + b] == zero) {
        impl->neg[a] = b;
        break;
      }
  compute_table_generators(*impl);
  return impl;
}

}  // namespace

Ring Ring::make_table(std::vector<std::vector<std::uint32_t>> add,
                      std::vector<std::vector<std::uint32_t>> mul, std::uint32_t zero,
                      std::string name) {
  const std::size_t n = add.size();
  if (n == 0 || mul.size() != n) throw Error(ErrorCode::ShapeMismatch, "tables must be square of equal size");
  if (n > (1u << 16)) throw Error(ErrorCode::TooLarge, "table ring too large");
  for (std::size_t i = 0; i < n; ++i)
    if (add[i].size() != n || mul[i].size() != n)
      throw Error(ErrorCode::ShapeMismatch, "tables must be square of equal size");
  if (zero >= n) throw Error(ErrorCode::ShapeMismatch, "zero index out of range");
  std::vector<std::uint32_t> A(n * n), M(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (add[i][j] >= n || mul[i][j] >= n)
        throw Error(ErrorCode::ShapeMismatch, "table entry out of range",
                    nlohmann::json::array({i, j}));
      A[i * n + j] = add[i][j];
      M[i * n + j] = mul[i][j];
    }
  auto at = [&](const std::vector<std::uint32_t>& t, std::size_t i, std::size_t j) { return t[i * n + j]; };
  for (std::size_t a = 0; a < n; ++a) {
    if (at(A, zero, a) != a || at(A, a, zero) != a)
      throw Error(ErrorCode::NotAbelianGroup, "designated zero is not neutral",
                  nlohmann::json::array({zero, a}));
    bool has_neg = false;
    for (std::size_t b = 0; b < n; ++b) {
      if (at(A, a, b) != at(A, b, a))
        throw Error(ErrorCode::NotAbelianGroup, "addition not commutative", nlohmann::json::array({a, b}));
      if (at(A, a, b) == zero) has_neg = true;
    }
    if (!has_neg) throw Error(ErrorCode::NotAbelianGroup, "element without negative", nlohmann::json::array({a, a}));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (at(A, at(A, a, b), c) != at(A, a, at(A, b, c)))
          throw Error(ErrorCode::NotAbelianGroup, "addition not associative",
                      nlohmann::json::array({a, b}));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        auto bc = at(A, b, c);
        if (at(M, a, bc) != at(A, at(M, a, b), at(M, a, c)) ||
            at(M, bc, a) != at(A, at(M, b, a), at(M, c, a)))
          throw Error(ErrorCode::DistributivityViolation, "multiplication does not distribute",
                      nlohmann::json::array({a, b, c}));
      }
  return Ring(table_impl(static_cast<std::uint32_t>(n), std::move(A), std::move(M), zero, std::move(name)));
}

Ring Ring::make_algebra_sparse(ScalarSpec field, std::size_t dim,
                               std::vector<std::vector<std::vector<Term>>> constants,
                               std::string name) {
  if (dim == 0) throw Error(ErrorCode::ShapeMismatch, "algebra dimension must be positive");
  if (constants.size() != dim) throw Error(ErrorCode::ShapeMismatch, "constants must be d x d x d");
  for (auto& row : constants) {
    if (row.size() != dim) throw Error(ErrorCode::ShapeMismatch, "constants must be d x d x d");
    for (auto& terms : row) {
      std::vector<Term> kept;
      for (auto& t : terms) {
        if (t.k >= dim) throw Error(ErrorCode::ShapeMismatch, "constant index out of range");
        if (t.value.is_rational() != field.is_rational() ||
            (!field.is_rational() && t.value.as_residue().modulus != field.modulus()))
          throw Error(ErrorCode::ShapeMismatch, "constant not in the scalar field");
        if (!t.value.is_zero()) kept.push_back(t);
      }
      terms = std::move(kept);
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->id = next_ring_id();
  impl->kind = Kind::Algebra;
  impl->name = std::move(name);
  impl->field = field;
  impl->dim = dim;
  impl->constants = std::move(constants);
  for (std::size_t i = 0; i < dim; ++i) {
    Element e;
    e.ring_id = impl->id;
    e.coords = unit_vec(field, dim, i);
    impl->generators.push_back(std::move(e));
  }
  return Ring(impl);
}

Ring Ring::make_algebra(ScalarSpec field, std::size_t dim, const DenseConstants& constants,
                        std::string name) {
  if (constants.size() != dim) throw Error(ErrorCode::ShapeMismatch, "constants must be d x d x d");
  std::vector<std::vector<std::vector<Term>>> sparse(dim, std::vector<std::vector<Term>>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    if (constants[i].size() != dim) throw Error(ErrorCode::ShapeMismatch, "constants must be d x d x d");
    for (std::size_t j = 0; j < dim; ++j) {
      if (constants[i][j].size() != dim) throw Error(ErrorCode::ShapeMismatch, "constants must be d x d x d");
      for (std::size_t k = 0; k < dim; ++k)
        if (!constants[i][j][k].is_zero())
          sparse[i][j].push_back(Term{static_cast<std::uint32_t>(k), constants[i][j][k]});
    }
  }
  return make_algebra_sparse(field, dim, std::move(sparse), std::move(name));
}

Ring Ring::integers_mod(std::uint32_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "Z_n needs n >= 2");
  if (n > 4096) throw Error(ErrorCode::TooLarge, "Z_n table too large");
  std::vector<std::uint32_t> A(static_cast<std::size_t>(n) * n), M(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      A[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
      M[static_cast<std::size_t>(a) * n + b] =
          static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % n);
    }
  return Ring(table_impl(n, std::move(A), std::move(M), 0, "Z_" + std::to_string(n)));
}

Ring::Kind Ring::kind() const { return impl_->kind; }
std::uint64_t Ring::id() const { return impl_->id; }
const std::string& Ring::name() const { return impl_->name; }

Ring Ring::renamed(std::string name) const {
  // Keeps the same id: the carrier and elements are unchanged.
  auto impl = std::make_shared<Impl>();
  impl->id = impl_->id;
  impl->kind = impl_->kind;
  impl->name = std::move(name);
  impl->n = impl_->n;
  impl->zero = impl_->zero;
  impl->add = impl_->add;
  impl->mul = impl_->mul;
  impl->neg = impl_->neg;
  impl->field = impl_->field;
  impl->dim = impl_->dim;
  impl->constants = impl_->constants;
  impl->generators = impl_->generators;
  return Ring(impl);
}

std::uint64_t Ring::cardinality() const {
  if (is_table()) return impl_->n;
  if (impl_->field.is_rational()) return 0;
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < impl_->dim; ++i) {
    if (c > (std::uint64_t{1} << 62) / impl_->field.modulus()) return std::uint64_t{1} << 62;
    c *= impl_->field.modulus();
  }
  return c;
}

std::size_t Ring::dim() const {
  if (!is_algebra()) throw Error(ErrorCode::InvalidArgument, "dim() on a table ring");
  return impl_->dim;
}

const ScalarSpec& Ring::field() const {
  if (!is_algebra()) throw Error(ErrorCode::InvalidArgument, "field() on a table ring");
  return impl_->field;
}

std::uint32_t Ring::table_size() const {
  if (!is_table()) throw Error(ErrorCode::InvalidArgument, "table_size() on an algebra");
  return impl_->n;
}

Element Ring::zero() const {
  Element e;
  e.ring_id = impl_->id;
  if (is_table())
    e.index = impl_->zero;
  else
    e.coords = zero_vec(impl_->field, impl_->dim);
  return e;
}

Element Ring::element(std::uint32_t index) const {
  if (!is_table()) throw Error(ErrorCode::InvalidArgument, "index element on an algebra");
  if (index >= impl_->n) throw Error(ErrorCode::ShapeMismatch, "element index out of range");
  Element e;
  e.ring_id = impl_->id;
  e.index = index;
  return e;
}

Element Ring::element(Vec coords) const {
  if (!is_algebra()) throw Error(ErrorCode::InvalidArgument, "coordinate element on a table ring");
  if (coords.size() != impl_->dim) throw Error(ErrorCode::ShapeMismatch, "coordinate length must equal dimension");
  for (const auto& c : coords)
    if (c.is_rational() != impl_->field.is_rational() ||
        (!c.is_rational() && c.as_residue().modulus != impl_->field.modulus()))
      throw Error(ErrorCode::RingMismatch, "coordinate outside the scalar field");
  Element e;
  e.ring_id = impl_->id;
  e.coords = std::move(coords);
  return e;
}

Element Ring::basis(std::size_t i) const {
  if (!is_algebra()) throw Error(ErrorCode::InvalidArgument, "basis() on a table ring");
  return impl_->generators.at(i);
}

Element Ring::scalar(const Scalar& s, const Element& unit) const {
  check_owner(unit);
  if (is_algebra()) return element(nalab::scale(s, unit.coords));
  // table ring: integer multiple of unit
  const auto& r = s.as_residue();
  Element acc = zero();
  for (std::uint32_t i = 0; i < r.value; ++i) acc = add(acc, unit);
  return acc;
}

void Ring::check_owner(const Element& a) const {
  if (a.ring_id != impl_->id) throw Error(ErrorCode::RingMismatch, "element belongs to a different ring");
}

Element Ring::add(const Element& a, const Element& b) const {
  check_owner(a);
  check_owner(b);
  Element e;
  e.ring_id = impl_->id;
  if (is_table())
    e.index = impl_->add[static_cast<std::size_t>(a.index) * impl_->n + b.index];
  else
    e.coords = nalab::add(a.coords, b.coords);
  return e;
}

Element Ring::neg(const Element& a) const {
  check_owner(a);
  Element e;
  e.ring_id = impl_->id;
  if (is_table())
    e.index = impl_->neg[a.index];
  else
    e.coords = nalab::neg(a.coords);
  return e;
}

Element Ring::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

Element Ring::mul(const Element& a, const Element& b) const {
  check_owner(a);
  check_owner(b);
  Element e;
  e.ring_id = impl_->id;
  if (is_table()) {
    e.index = impl_->mul[static_cast<std::size_t>(a.index) * impl_->n + b.index];
    return e;
  }
  const std::size_t d = impl_->dim;
  e.coords = zero_vec(impl_->field, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (a.coords[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b.coords[j].is_zero()) continue;
      const auto& terms = impl_->constants[i][j];
      if (terms.empty()) continue;
      Scalar s = a.coords[i] * b.coords[j];
      for (const auto& t : terms) e.coords[t.k] += s * t.value;
    }
  }
  return e;
}

bool Ring::is_zero(const Element& a) const {
  check_owner(a);
  return is_table() ? a.index == impl_->zero : is_zero_vec(a.coords);
}

const std::vector<Element>& Ring::additive_generators() const { return impl_->generators; }

std::uint64_t Ring::index_of(const Element& a) const {
  check_owner(a);
  if (is_table()) return a.index;
  if (!impl_->field.is_finite()) throw Error(ErrorCode::InfiniteScalarField, "no index over Q");
  std::uint64_t idx = 0;
  for (std::size_t i = impl_->dim; i-- > 0;) idx = idx * impl_->field.modulus() + a.coords[i].as_residue().value;
  return idx;
}

Element Ring::from_index(std::uint64_t i) const {
  if (is_table()) return element(static_cast<std::uint32_t>(i));
  if (!impl_->field.is_finite()) throw Error(ErrorCode::InfiniteScalarField, "no index over Q");
  Vec v;
  v.reserve(impl_->dim);
  const auto p = impl_->field.modulus();
  for (std::size_t k = 0; k < impl_->dim; ++k) {
    v.push_back(Scalar::residue(static_cast<long long>(i % p), p));
    i /= p;
  }
  Element e;
  e.ring_id = impl_->id;
  e.coords = std::move(v);
  return e;
}

std::vector<Element> Ring::enumerate(std::uint64_t cap) const {
  if (is_algebra() && !impl_->field.is_finite())
    throw Error(ErrorCode::InfiniteScalarField, "cannot enumerate an algebra over Q");
  const auto n = cardinality();
  if (n > cap) throw Error(ErrorCode::TooLarge, "ring has " + std::to_string(n) + " elements, cap " + std::to_string(cap));
  std::vector<Element> out;
  out.reserve(n);
  out.push_back(zero());
  for (std::uint64_t i = 0; i < n; ++i) {
    Element e = from_index(i);
    if (!is_zero(e)) out.push_back(std::move(e));
  }
  return out;
}

Element Ring::random_element(std::mt19937_64& rng) const {
  if (is_table()) return element(static_cast<std::uint32_t>(rng() % impl_->n));
  Vec v;
  v.reserve(impl_->dim);
  for (std::size_t i = 0; i < impl_->dim; ++i) {
    if (impl_->field.is_finite())
      v.push_back(Scalar::residue(static_cast<long long>(rng() % impl_->field.modulus()), impl_->field.modulus()));
    else
      v.push_back(Scalar::from_int(impl_->field, static_cast<long long>(rng() % 7) - 3));
  }
  return element(std::move(v));
}

const std::vector<std::vector<std::vector<Term>>>& Ring::constants() const {
  if (!is_algebra()) throw Error(ErrorCode::InvalidArgument, "constants() on a table ring");
  return impl_->constants;
}

const std::vector<std::uint32_t>& Ring::add_table() const {
  if (!is_table()) throw Error(ErrorCode::InvalidArgument, "add_table() on an algebra");
  return impl_->add;
}

const std::vector<std::uint32_t>& Ring::mul_table() const {
  if (!is_table()) throw Error(ErrorCode::InvalidArgument, "mul_table() on an algebra");
  return impl_->mul;
}

nlohmann::json Ring::element_json(const Element& a) const {
  check_owner(a);
  if (is_table()) return a.index;
  auto arr = nlohmann::json::array();
  for (const auto& c : a.coords) arr.push_back(c.to_string());
  return arr;
}

Element Ring::element_from_json(const nlohmann::json& j) const {
  if (is_table()) {
    if (!j.is_number_unsigned()) throw Error(ErrorCode::SchemaError, "table element must be an index");
    return element(j.get<std::uint32_t>());
  }
  if (!j.is_array() || j.size() != impl_->dim)
    throw Error(ErrorCode::SchemaError, "algebra element must be a coordinate array of length " + std::to_string(impl_->dim));
  Vec v;
  for (const auto& c : j) {
    if (c.is_string())
      v.push_back(Scalar::parse(impl_->field, c.get<std::string>()));
    else if (c.is_number_integer())
      v.push_back(Scalar::from_int(impl_->field, c.get<long long>()));
    else
      throw Error(ErrorCode::SchemaError, "scalar must be an integer or \"p/q\" string");
  }
  return element(std::move(v));
}

std::string Ring::element_string(const Element& a) const {
  if (is_table()) return std::to_string(a.index);
  std::string s = "(";
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (i) s += ",";
    s += a.coords[i].to_string();
  }
  return s + ")";
}

namespace {

void run_probe(const Ring& r, PropertyReport& rep) {
  rep.size = r.cardinality();
  rep.dimension = r.is_algebra() ? r.dim() : 0;
  // Trilinearity reduces associativity/commutativity to additive generators.
  const auto& gens = r.additive_generators();
  rep.associative = Tri::Yes;
  for (const auto& a : gens) {
    for (const auto& b : gens) {
      const Element ab = r.mul(a, b);
      for (const auto& c : gens) {
        if (!(r.mul(ab, c) == r.mul(a, r.mul(b, c)))) {
          rep.associative = Tri::No;
          rep.associativity_witness = std::array<Element, 3>{a, b, c};
          break;
        }
      }
      if (rep.associative == Tri::No) break;
    }
    if (rep.associative == Tri::No) break;
  }
  rep.commutative = Tri::Yes;
  for (const auto& a : gens) {
    for (const auto& b : gens)
      if (!(r.mul(a, b) == r.mul(b, a))) {
        rep.commutative = Tri::No;
        rep.commutativity_witness = std::array<Element, 2>{a, b};
        break;
      }
    if (rep.commutative == Tri::No) break;
  }
  auto unit = find_unit(r);
  rep.unital = unit ? Tri::Yes : Tri::No;
  rep.unit = unit;
}

}  // namespace

const PropertyReport& Ring::probe() const {
  std::call_once(impl_->probe_once, [this] { run_probe(*this, impl_->report); });
  return impl_->report;
}

Element ring_eval(const Ring& r, const Element& a, const Element& b, RingOp op) {
  switch (op) {
    case RingOp::Add: return r.add(a, b);
    case RingOp::Mul: return r.mul(a, b);
    case RingOp::Neg: return r.neg(a);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown ring operation");
}

PropertyReport probe_properties(const Ring& r) { return r.probe(); }

Ring opposite(const Ring& r) {
  std::string name = "opposite(" + r.name() + ")";
  if (r.is_table()) {
    const auto n = r.table_size();
    std::vector<std::uint32_t> M(static_cast<std::size_t>(n) * n);
    const auto& m = r.mul_table();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) M[a * n + b] = m[b * n + a];
    return Ring(table_impl(n, r.add_table(), std::move(M), r.zero().index, std::move(name)));
  }
  const auto d = r.dim();
  std::vector<std::vector<std::vector<Term>>> c(d, std::vector<std::vector<Term>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) c[i][j] = r.constants()[j][i];
  return Ring::make_algebra_sparse(r.field(), d, std::move(c), std::move(name));
}

std::vector<Element> enumerate_elements(const Ring& r, std::uint64_t cap) { return r.enumerate(cap); }

Ring to_table(const Ring& r, std::uint64_t cap) {
  if (r.is_table()) return r;
  if (!r.field().is_finite()) throw Error(ErrorCode::InfiniteScalarField, "conversion to a table is forbidden over Q");
  const auto n = r.cardinality();
  if (n > cap) throw Error(ErrorCode::TooLarge, "table conversion of " + std::to_string(n) + " elements exceeds cap");
  std::vector<Element> elems;
  elems.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) elems.push_back(r.from_index(i));
  std::vector<std::uint32_t> A(n * n), M(n * n);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) {
      A[a * n + b] = static_cast<std::uint32_t>(r.index_of(r.add(elems[a], elems[b])));
      M[a * n + b] = static_cast<std::uint32_t>(r.index_of(r.mul(elems[a], elems[b])));
    }
  // Index 0 is the zero vector.
  return Ring(table_impl(static_cast<std::uint32_t>(n), std::move(A), std::move(M), 0, r.name()));
}

bool same_tables(const Ring& a, const Ring& b) {
  if (a.kind() != b.kind()) return false;
  if (a.is_table())
    return a.table_size() == b.table_size() && a.add_table() == b.add_table() &&
           a.mul_table() == b.mul_table() && a.zero().index == b.zero().index;
  if (!(a.field() == b.field()) || a.dim() != b.dim()) return false;
  const auto d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto& x = a.constants()[i][j];
      const auto& y = b.constants()[i][j];
      if (x.size() != y.size()) return false;
      for (std::size_t t = 0; t < x.size(); ++t)
        if (x[t].k != y[t].k || !(x[t].value == y[t].value)) return false;
    }
  return true;
}

std::optional<Element> find_unit(const Ring& r) {
  const auto& gens = r.additive_generators();
  if (r.is_table() || !r.field().is_field()) {
    const auto n = r.cardinality();
    if (n > kDefaultEnumerationCap) throw Error(ErrorCode::TooLarge, "ring too large for a unit search");
    for (std::uint64_t e = 0; e < n; ++e) {
      Element u = r.from_index(e);
      bool ok = true;
      for (const auto& g : gens)
        if (!(r.mul(u, g) == g) || !(r.mul(g, u) == g)) {
          ok = false;
          break;
        }
      if (ok) return u;
    }
    return std::nullopt;
  }
  // Solve e*b_j = b_j and b_j*e = b_j, linear in the coordinates of e.
  const auto d = r.dim();
  const auto& F = r.field();
  Matrix m;
  Vec rhs;
  for (std::size_t j = 0; j < d; ++j) {
    Matrix left(d, zero_vec(F, d)), right(d, zero_vec(F, d));  // [k][i]
    for (std::size_t i = 0; i < d; ++i) {
      for (const auto& t : r.constants()[i][j]) left[t.k][i] += t.value;
      for (const auto& t : r.constants()[j][i]) right[t.k][i] += t.value;
    }
    for (std::size_t k = 0; k < d; ++k) {
      m.push_back(left[k]);
      rhs.push_back(k == j ? Scalar::one(F) : Scalar::zero(F));
      m.push_back(right[k]);
      rhs.push_back(k == j ? Scalar::one(F) : Scalar::zero(F));
    }
  }
  Vec x;
  if (!solve(F, m, rhs, x)) return std::nullopt;
  return r.element(std::move(x));
}

std::optional<Element> find_inverse(const Ring& r, const Element& a, const Element& unit) {
  if (r.is_table() || !r.field().is_field()) {
    const auto n = r.cardinality();
    if (n > kDefaultEnumerationCap) throw Error(ErrorCode::TooLarge, "ring too large for an inverse search");
    for (std::uint64_t y = 0; y < n; ++y) {
      Element e = r.from_index(y);
      if (r.mul(a, e) == unit && r.mul(e, a) == unit) return e;
    }
    return std::nullopt;
  }
  Matrix L = left_mult_matrix(r, a), R = right_mult_matrix(r, a);
  Matrix m = L;
  m.insert(m.end(), R.begin(), R.end());
  Vec rhs = unit.coords;
  rhs.insert(rhs.end(), unit.coords.begin(), unit.coords.end());
  Vec x;
  if (!solve(r.field(), m, rhs, x)) return std::nullopt;
  return r.element(std::move(x));
}

Matrix left_mult_matrix(const Ring& r, const Element& a) {
  const auto d = r.dim();
  Matrix m(d, zero_vec(r.field(), d));
  for (std::size_t j = 0; j < d; ++j) {
    auto col = r.mul(a, r.basis(j)).coords;
    for (std::size_t k = 0; k < d; ++k) m[k][j] = col[k];
  }
  return m;
}

Matrix right_mult_matrix(const Ring& r, const Element& a) {
  const auto d = r.dim();
  Matrix m(d, zero_vec(r.field(), d));
  for (std::size_t j = 0; j < d; ++j) {
    auto col = r.mul(r.basis(j), a).coords;
    for (std::size_t k = 0; k < d; ++k) m[k][j] = col[k];
  }
  return m;
}

}  // namespace nalab
