#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "nalab/error.hpp"

namespace nalab {

// Residue modulo n (n >= 2). The modulus travels with the value so that
// mixing residues of different rings is caught at the operation site.
struct ModInt {
  std::uint32_t value = 0;
  std::uint32_t modulus = 2;
};

// Describes the scalar ring of a structure algebra or the base of a scalar
// recipe: the rationals, or Z/nZ (a field exactly when n is prime).
class ScalarSpec {
 public:
  static ScalarSpec rationals() { return ScalarSpec(0); }
  static ScalarSpec modular(std::uint32_t n);
  // Parses "Q", "Fp:<prime>" or "Zn:<n>".
  static ScalarSpec parse(const std::string& text);

  bool is_rational() const noexcept { return modulus_ == 0; }
  bool is_finite() const noexcept { return modulus_ != 0; }
  bool is_field() const noexcept { return modulus_ == 0 || prime_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  // Number of elements; 0 for Q.
  std::uint64_t cardinality() const noexcept { return modulus_; }

  std::string to_string() const;

  friend bool operator==(const ScalarSpec& a, const ScalarSpec& b) noexcept {
    return a.modulus_ == b.modulus_;
  }

 private:
  explicit ScalarSpec(std::uint32_t modulus);
  std::uint32_t modulus_;
  bool prime_ = false;
};

bool is_prime(std::uint64_t n);

// Exact scalar: lowest-terms rational with positive denominator, or a reduced
// residue. Equality is representation equality.
class Scalar {
 public:
  Scalar() : rep_(ModInt{}) {}
  static Scalar zero(const ScalarSpec& spec);
  static Scalar one(const ScalarSpec& spec);
  static Scalar from_int(const ScalarSpec& spec, long long v);
  static Scalar rational(const mpq_class& q);
  static Scalar residue(long long v, std::uint32_t modulus);
  // "p/q" or integer text, interpreted in `spec`.
  static Scalar parse(const ScalarSpec& spec, const std::string& text);

  bool is_rational() const noexcept { return std::holds_alternative<mpq_class>(rep_); }
  bool is_zero() const;
  bool is_one() const;
  const mpq_class& as_rational() const { return std::get<mpq_class>(rep_); }
  const ModInt& as_residue() const { return std::get<ModInt>(rep_); }
  ScalarSpec spec() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  // Throws DivisionByNonUnit when `o` is not invertible.
  Scalar operator/(const Scalar& o) const;
  Scalar inverse() const;
  bool is_unit() const;

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator<(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  std::variant<ModInt, mpq_class> rep_;
};

using Vec = std::vector<Scalar>;

Vec zero_vec(const ScalarSpec& spec, std::size_t n);
Vec unit_vec(const ScalarSpec& spec, std::size_t n, std::size_t i);
bool is_zero_vec(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec neg(const Vec& a);
Vec scale(const Scalar& s, const Vec& a);
void axpy(Vec& y, const Scalar& s, const Vec& x);  // y += s*x

}  // namespace nalab
