// Exact arithmetic in small finite fields GF(p^n).
//
// Elements are dense coefficient vectors over Z/pZ, low degree first. The
// modulus of GF(p^n) is fixed: the monic irreducible degree-n polynomial
// with nonzero constant term whose coefficient vector, read as a base-p
// integer (constant term least significant), is smallest. Primitive
// elements are picked in the same value order, so identical inputs always
// produce identical fields and elements.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "singer/error.hpp"

namespace singer {

using FieldElem = std::vector<int>;  // length n, entries in [0, p)

namespace detail {

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Polynomials over Z/pZ as coefficient vectors, low degree first, no
// trailing zeros (the zero polynomial is the empty vector).

inline std::vector<int> poly_trim(std::vector<int> a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline std::vector<int> poly_mul(std::vector<int> const& a,
                                 std::vector<int> const& b, int p) {
  if (a.empty() || b.empty()) return {};
  std::vector<int> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<int>((c[i + j] + 1LL * a[i] * b[j]) % p);
  return poly_trim(std::move(c));
}

// Remainder of a modulo the monic polynomial m.
inline std::vector<int> poly_rem(std::vector<int> a, std::vector<int> const& m,
                                 int p) {
  a = poly_trim(std::move(a));
  while (a.size() >= m.size()) {
    int lead = a.back();
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      long long v = a[shift + i] - 1LL * lead * m[i];
      a[shift + i] = static_cast<int>(((v % p) + p) % p);
    }
    a = poly_trim(std::move(a));
  }
  return a;
}

inline bool poly_is_zero(std::vector<int> const& a) { return a.empty(); }

// Enumerates monic polynomials of degree d in base-p value order.
inline std::vector<int> poly_from_value(long long value, int degree, int p) {
  std::vector<int> c(degree + 1, 0);
  for (int i = 0; i < degree; ++i) {
    c[i] = static_cast<int>(value % p);
    value /= p;
  }
  c[degree] = 1;
  return c;
}

inline bool poly_irreducible(std::vector<int> const& f, int p) {
  int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return false;
  long long count = 1;
  for (int d = 1; 2 * d <= n; ++d) {
    count *= p;
    for (long long v = 0; v < count; ++v) {
      std::vector<int> g = poly_from_value(v, d, p);
      if (poly_is_zero(poly_rem(f, g, p))) return false;
    }
  }
  return true;
}

}  // namespace detail

// A finite field GF(p^n), p prime, with deterministic modulus selection.
class GaloisField {
 public:
  GaloisField(int p, int n) : p_(p), n_(n) {
    if (!detail::is_prime(p)) throw Error("NotPrime", std::to_string(p) + " is not prime");
    if (n < 1) throw Error("DegreeOutOfRange", "extension degree must be >= 1");
    long long size = 1;
    for (int i = 0; i < n; ++i) {
      size *= p;
      if (size > (1LL << 20))
        throw Error("DegreeOutOfRange", "field size exceeds 2^20");
    }
    size_ = size;
    modulus_ = choose_modulus(p, n);
  }

  int characteristic() const { return p_; }
  int degree() const { return n_; }
  long long size() const { return size_; }
  std::vector<int> const& modulus() const { return modulus_; }

  FieldElem zero() const { return FieldElem(n_, 0); }

  FieldElem one() const {
    FieldElem e(n_, 0);
    e[0] = 1;
    return e;
  }

  bool is_zero(FieldElem const& a) const {
    return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
  }

  // Element whose coefficient vector encodes `value` in base p.
  FieldElem element(long long value) const {
    FieldElem e(n_, 0);
    for (int i = 0; i < n_ && value > 0; ++i) {
      e[i] = static_cast<int>(value % p_);
      value /= p_;
    }
    return e;
  }

  long long value_of(FieldElem const& a) const {
    long long v = 0;
    for (int i = n_ - 1; i >= 0; --i) v = v * p_ + a[i];
    return v;
  }

  FieldElem add(FieldElem const& a, FieldElem const& b) const {
    FieldElem c(n_);
    for (int i = 0; i < n_; ++i) c[i] = (a[i] + b[i]) % p_;
    return c;
  }

  FieldElem neg(FieldElem const& a) const {
    FieldElem c(n_);
    for (int i = 0; i < n_; ++i) c[i] = (p_ - a[i]) % p_;
    return c;
  }

  FieldElem mul(FieldElem const& a, FieldElem const& b) const {
    auto prod = detail::poly_rem(detail::poly_mul(a, b, p_), modulus_, p_);
    prod.resize(n_, 0);
    return prod;
  }

  FieldElem pow(FieldElem a, long long e) const {
    FieldElem r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  FieldElem inv(FieldElem const& a) const {
    if (is_zero(a)) throw Error("ZeroInverse", "0 has no multiplicative inverse");
    return pow(a, size_ - 2);
  }

  // Multiplicative order of a nonzero element, via the factorization of
  // p^n - 1.
  long long order(FieldElem const& a) const {
    if (is_zero(a)) throw Error("ZeroInverse", "0 has no multiplicative order");
    long long ord = size_ - 1;
    long long m = ord;
    for (long long f = 2; f * f <= m; ++f) {
      if (m % f != 0) continue;
      while (m % f == 0) m /= f;
      while (ord % f == 0 && is_zero(sub_one(pow(a, ord / f)))) ord /= f;
    }
    if (m > 1)
      while (ord % m == 0 && is_zero(sub_one(pow(a, ord / m)))) ord /= m;
    return ord;
  }

  // Smallest element (in base-p value order) of multiplicative order p^n - 1.
  FieldElem primitive_element() const {
    for (long long v = 1; v < size_; ++v) {
      FieldElem a = element(v);
      if (order(a) == size_ - 1) return a;
    }
    throw Error("Internal", "no primitive element found");  // unreachable
  }

 private:
  FieldElem sub_one(FieldElem a) const {
    a[0] = (a[0] + p_ - 1) % p_;
    return a;
  }

  static std::vector<int> choose_modulus(int p, int n) {
    long long count = 1;
    for (int i = 0; i < n; ++i) count *= p;
    for (long long v = 0; v < count; ++v) {
      std::vector<int> f = detail::poly_from_value(v, n, p);
      if (f[0] == 0) continue;  // divisible by x; never needed as a modulus
      if (detail::poly_irreducible(f, p)) return f;
    }
    throw Error("Internal", "no irreducible polynomial found");  // unreachable
  }

  int p_;
  int n_;
  long long size_;
  std::vector<int> modulus_;
};

}  // namespace singer
