#include "nalab/scalar.hpp"

#include <charconv>

namespace nalab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DivisionByNonUnit: return "DivisionByNonUnit";
    case ErrorCode::DistributivityViolation: return "DistributivityViolation";
    case ErrorCode::NotAbelianGroup: return "NotAbelianGroup";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InfiniteScalarField: return "InfiniteScalarField";
    case ErrorCode::BNotCommutative: return "BNotCommutative";
    case ErrorCode::NotAInvariant: return "NotAInvariant";
    case ErrorCode::NotIdealAssociative: return "NotIdealAssociative";
    case ErrorCode::NotDirectSum: return "NotDirectSum";
    case ErrorCode::FilterViolation: return "FilterViolation";
    case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::ValidationFailure: return "ValidationFailure";
    case ErrorCode::SigmaNotInvolutive: return "SigmaNotInvolutive";
    case ErrorCode::AlphaNotCentralUnit: return "AlphaNotCentralUnit";
    case ErrorCode::CoherenceViolation: return "CoherenceViolation";
    case ErrorCode::NotAnAction: return "NotAnAction";
    case ErrorCode::PremiseFailure: return "PremiseFailure";
    case ErrorCode::Disagreement: return "Disagreement";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnknownKind: return "UnknownKind";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ScalarSpec::ScalarSpec(std::uint32_t modulus) : modulus_(modulus), prime_(is_prime(modulus)) {}

ScalarSpec ScalarSpec::modular(std::uint32_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "modulus must be at least 2");
  if (n > (1u << 16)) throw Error(ErrorCode::InvalidArgument, "modulus too large (max 65536)");
  return ScalarSpec(n);
}

namespace {

std::uint32_t parse_uint(const std::string& s, const std::string& whole) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidArgument, "bad scalar spec '" + whole + "'");
  return v;
}

}  // namespace

ScalarSpec ScalarSpec::parse(const std::string& text) {
  if (text == "Q") return rationals();
  if (text.rfind("Fp:", 0) == 0) {
    auto p = parse_uint(text.substr(3), text);
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "Fp modulus must be prime: " + text);
    return modular(p);
  }
  if (text.rfind("Zn:", 0) == 0) return modular(parse_uint(text.substr(3), text));
  throw Error(ErrorCode::InvalidArgument, "unknown scalar spec '" + text + "'");
}

std::string ScalarSpec::to_string() const {
  if (is_rational()) return "Q";
  return (prime_ ? "Fp:" : "Zn:") + std::to_string(modulus_);
}

Scalar Scalar::zero(const ScalarSpec& spec) { return from_int(spec, 0); }
Scalar Scalar::one(const ScalarSpec& spec) { return from_int(spec, 1); }

Scalar Scalar::from_int(const ScalarSpec& spec, long long v) {
  if (spec.is_rational()) return rational(mpq_class(static_cast<long>(v)));
  return residue(v, spec.modulus());
}

Scalar Scalar::rational(const mpq_class& q) {
  Scalar s;
  mpq_class c = q;
  c.canonicalize();
  s.rep_ = std::move(c);
  return s;
}

Scalar Scalar::residue(long long v, std::uint32_t modulus) {
  Scalar s;
  long long m = modulus;
  long long r = v % m;
  if (r < 0) r += m;
  s.rep_ = ModInt{static_cast<std::uint32_t>(r), modulus};
  return s;
}

Scalar Scalar::parse(const ScalarSpec& spec, const std::string& text) {
  if (spec.is_rational()) {
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0)
      throw Error(ErrorCode::InvalidArgument, "bad rational '" + text + "'");
    return rational(q);
  }
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw Error(ErrorCode::InvalidArgument, "bad integer '" + text + "'");
    return residue(v, spec.modulus());
  }
  auto num = parse(spec, text.substr(0, slash));
  auto den = parse(spec, text.substr(slash + 1));
  return num / den;
}

bool Scalar::is_zero() const {
  if (auto* m = std::get_if<ModInt>(&rep_)) return m->value == 0;
  return sgn(std::get<mpq_class>(rep_)) == 0;
}

bool Scalar::is_one() const {
  if (auto* m = std::get_if<ModInt>(&rep_)) return m->value == 1;
  return std::get<mpq_class>(rep_) == 1;
}

ScalarSpec Scalar::spec() const {
  if (auto* m = std::get_if<ModInt>(&rep_)) return ScalarSpec::modular(m->modulus);
  return ScalarSpec::rationals();
}

namespace {

[[noreturn]] void mismatch() {
  throw Error(ErrorCode::RingMismatch, "scalars from different scalar rings");
}

}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  if (auto* a = std::get_if<ModInt>(&rep_)) {
    auto* b = std::get_if<ModInt>(&o.rep_);
    if (!b || b->modulus != a->modulus) mismatch();
    Scalar s;
    std::uint32_t v = a->value + b->value;
    if (v >= a->modulus) v -= a->modulus;
    s.rep_ = ModInt{v, a->modulus};
    return s;
  }
  if (!o.is_rational()) mismatch();
  Scalar s;
  s.rep_ = mpq_class(as_rational() + o.as_rational());
  return s;
}

Scalar Scalar::operator-() const {
  if (auto* a = std::get_if<ModInt>(&rep_)) {
    Scalar s;
    s.rep_ = ModInt{a->value == 0 ? 0 : a->modulus - a->value, a->modulus};
    return s;
  }
  Scalar s;
  s.rep_ = mpq_class(-as_rational());
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (auto* a = std::get_if<ModInt>(&rep_)) {
    auto* b = std::get_if<ModInt>(&o.rep_);
    if (!b || b->modulus != a->modulus) mismatch();
    Scalar s;
    s.rep_ = ModInt{static_cast<std::uint32_t>(
                        (static_cast<std::uint64_t>(a->value) * b->value) % a->modulus),
                    a->modulus};
    return s;
  }
  if (!o.is_rational()) mismatch();
  Scalar s;
  s.rep_ = mpq_class(as_rational() * o.as_rational());
  return s;
}

bool Scalar::is_unit() const {
  if (auto* a = std::get_if<ModInt>(&rep_)) {
    std::uint32_t x = a->value, y = a->modulus;
    while (y != 0) {
      auto t = x % y;
      x = y;
      y = t;
    }
    return x == 1;
  }
  return !is_zero();
}

Scalar Scalar::inverse() const {
  if (!is_unit()) throw Error(ErrorCode::DivisionByNonUnit, "division by non-unit " + to_string());
  if (auto* a = std::get_if<ModInt>(&rep_)) {
    // extended Euclid
    long long old_r = a->value, r = a->modulus, old_s = 1, s = 0;
    while (r != 0) {
      long long q = old_r / r;
      long long t = old_r - q * r;
      old_r = r;
      r = t;
      t = old_s - q * s;
      old_s = s;
      s = t;
    }
    return residue(old_s, a->modulus);
  }
  return rational(1 / as_rational());
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (auto* x = std::get_if<ModInt>(&a.rep_)) {
    auto* y = std::get_if<ModInt>(&b.rep_);
    return y && x->value == y->value && x->modulus == y->modulus;
  }
  return b.is_rational() && a.as_rational() == b.as_rational();
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (auto* x = std::get_if<ModInt>(&a.rep_)) {
    auto* y = std::get_if<ModInt>(&b.rep_);
    if (!y) return true;
    return std::pair(x->modulus, x->value) < std::pair(y->modulus, y->value);
  }
  if (!b.is_rational()) return false;
  return a.as_rational() < b.as_rational();
}

std::string Scalar::to_string() const {
  if (auto* m = std::get_if<ModInt>(&rep_)) return std::to_string(m->value);
  return as_rational().get_str();
}

Vec zero_vec(const ScalarSpec& spec, std::size_t n) { return Vec(n, Scalar::zero(spec)); }

Vec unit_vec(const ScalarSpec& spec, std::size_t n, std::size_t i) {
  Vec v = zero_vec(spec, n);
  v.at(i) = Scalar::one(spec);
  return v;
}

bool is_zero_vec(const Vec& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "vector length mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "vector length mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec neg(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vec scale(const Scalar& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

void axpy(Vec& y, const Scalar& s, const Vec& x) {
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += s * x[i];
}

}  // namespace nalab
