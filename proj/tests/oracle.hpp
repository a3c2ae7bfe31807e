#pragma once

// Independent brute-force oracles for small finite rings. They only use the
// ring's element bijection and raw add/mul, never the library's spans or
// closures.

#include <cstdint>
#include <random>
#include <vector>

#include "nalab/ring.hpp"

namespace oracle {

struct Tables {
  std::size_t n = 0;
  std::vector<std::uint32_t> add, mul;  // n*n
};

inline Tables tables_of(const nalab::Ring& r) {
  Tables t;
  t.n = r.cardinality();
  t.add.resize(t.n * t.n);
  t.mul.resize(t.n * t.n);
  std::vector<nalab::Element> e;
  for (std::uint64_t i = 0; i < t.n; ++i) e.push_back(r.from_index(i));
  for (std::size_t a = 0; a < t.n; ++a)
    for (std::size_t b = 0; b < t.n; ++b) {
      t.add[a * t.n + b] = static_cast<std::uint32_t>(r.index_of(r.add(e[a], e[b])));
      t.mul[a * t.n + b] = static_cast<std::uint32_t>(r.index_of(r.mul(e[a], e[b])));
    }
  return t;
}

// Index 0 is zero (the library enumerates zero first).
inline bool is_ideal(const Tables& t, std::uint64_t mask) {
  if (!(mask & 1)) return false;
  for (std::size_t a = 0; a < t.n; ++a) {
    if (!(mask >> a & 1)) continue;
    for (std::size_t b = 0; b < t.n; ++b) {
      if ((mask >> b & 1) && !(mask >> t.add[a * t.n + b] & 1)) return false;
      if (!(mask >> t.mul[a * t.n + b] & 1)) return false;
      if (!(mask >> t.mul[b * t.n + a] & 1)) return false;
    }
  }
  return true;
}

// Every subset containing 0 is tried; feasible up to 16 elements.
inline std::vector<std::uint64_t> all_ideals(const Tables& t) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 1; m < (1ull << t.n); m += 2)
    if (is_ideal(t, m)) out.push_back(m);
  return out;
}

inline int popcount(std::uint64_t m) { return __builtin_popcountll(m); }

inline bool simple(const Tables& t) {
  bool nonzero_product = false;
  for (auto x : t.mul) nonzero_product |= x != 0;
  return nonzero_product && all_ideals(t).size() == 2;
}

// Smallest ideal containing `gens`, by fixed-point iteration on index sets.
inline std::vector<char> generated_ideal(const Tables& t, const std::vector<std::uint32_t>& gens) {
  std::vector<char> in(t.n, 0);
  in[0] = 1;
  for (auto g : gens) in[g] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t a = 0; a < t.n; ++a) {
      if (!in[a]) continue;
      for (std::size_t b = 0; b < t.n; ++b) {
        for (auto c : {in[b] ? t.add[a * t.n + b] : 0u, t.mul[a * t.n + b], t.mul[b * t.n + a]})
          if (!in[c]) in[c] = grew = 1;
      }
    }
  }
  return in;
}

// Simplicity by principal ideals: every nonzero element generates everything.
inline bool simple_by_principal(const Tables& t) {
  bool nonzero_product = false;
  for (auto x : t.mul) nonzero_product |= x != 0;
  if (!nonzero_product) return false;
  for (std::uint32_t a = 1; a < t.n; ++a) {
    auto in = generated_ideal(t, {a});
    for (auto c : in)
      if (!c) return false;
  }
  return true;
}

}  // namespace oracle
