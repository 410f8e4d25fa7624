// Cyclic planar difference sets of order q: construction (Singer's, from the
// trace-zero line of PG(2,q)), verification, the r*D + x operations,
// equivalence search, and exhaustive classification at small q.

#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "singer/error.hpp"
#include "singer/fields.hpp"

namespace singer {

// A (q+1)-subset of Z/(q^2+q+1)Z whose off-diagonal differences hit every
// nonzero residue exactly once. Always constructed through difference_set(),
// so a value of this type is known valid.
struct DifferenceSet {
  int q = 0;
  int delta = 0;
  std::vector<int> elements;  // sorted residues in [0, delta)

  bool based() const {
    return !elements.empty() && elements.front() == 0;
  }

  friend bool operator==(DifferenceSet const& a, DifferenceSet const& b) {
    return a.delta == b.delta && a.elements == b.elements;
  }
};

// A difference set containing 0. D* denotes its nonzero elements.
struct BasedDifferenceSet {
  DifferenceSet set;

  std::vector<int> star() const {
    return {set.elements.begin() + 1, set.elements.end()};
  }
};

struct DiffSetReport {
  bool valid = false;
  int order = 0;  // |elements| - 1
  std::optional<int> first_duplicated;
  std::optional<int> first_missing;
};

// Checks the perfect-difference property: every nonzero residue mod delta
// occurs exactly once as d - d' over off-diagonal pairs.
inline DiffSetReport verify_difference_set(std::vector<int> const& elements,
                                           int delta) {
  DiffSetReport rep;
  rep.order = static_cast<int>(elements.size()) - 1;
  std::vector<int> count(delta, 0);
  for (int d : elements)
    for (int d2 : elements)
      if (d != d2) ++count[((d - d2) % delta + delta) % delta];
  for (int n = 1; n < delta; ++n) {
    if (count[n] > 1 && !rep.first_duplicated) rep.first_duplicated = n;
    if (count[n] == 0 && !rep.first_missing) rep.first_missing = n;
  }
  rep.valid = !rep.first_duplicated && !rep.first_missing && delta > 1;
  return rep;
}

inline DifferenceSet difference_set(std::vector<int> elements, int delta) {
  for (int& e : elements) e = ((e % delta) + delta) % delta;
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw Error("InvalidDifferenceSet", "repeated residue");
  auto rep = verify_difference_set(elements, delta);
  if (!rep.valid) {
    std::ostringstream msg;
    msg << "difference property fails mod " << delta;
    if (rep.first_duplicated) msg << " (difference " << *rep.first_duplicated << " duplicated)";
    else if (rep.first_missing) msg << " (difference " << *rep.first_missing << " missing)";
    throw Error("InvalidDifferenceSet", msg.str());
  }
  DifferenceSet d;
  d.q = rep.order;
  d.delta = delta;
  d.elements = std::move(elements);
  return d;
}

inline BasedDifferenceSet based_difference_set(DifferenceSet d) {
  if (!d.based()) throw Error("NotBased", "difference set does not contain 0");
  return BasedDifferenceSet{std::move(d)};
}

// D - min(D); the result contains 0.
inline BasedDifferenceSet rebase(DifferenceSet const& d) {
  std::vector<int> shifted;
  shifted.reserve(d.elements.size());
  int m = d.elements.front();
  for (int e : d.elements) shifted.push_back((e - m + d.delta) % d.delta);
  return based_difference_set(difference_set(std::move(shifted), d.delta));
}

// r*D + x for a unit r mod delta.
inline DifferenceSet translate_scale(DifferenceSet const& d, int r, int x) {
  if (std::gcd(((r % d.delta) + d.delta) % d.delta, d.delta) != 1)
    throw Error("NotAUnit", std::to_string(r) + " is not a unit mod " + std::to_string(d.delta));
  std::vector<int> out;
  out.reserve(d.elements.size());
  for (int e : d.elements)
    out.push_back(static_cast<int>((((1LL * r * e + x) % d.delta) + d.delta) % d.delta));
  return difference_set(std::move(out), d.delta);
}

// Exhaustive search for (r, x) with set2 = r*set1 + x, over raw residue
// lists. Returns the first witness in (r ascending, x ascending) order.
inline std::optional<std::pair<int, int>> find_equivalence(
    std::vector<int> set1, std::vector<int> set2, int delta) {
  std::sort(set1.begin(), set1.end());
  std::sort(set2.begin(), set2.end());
  if (set1.size() != set2.size()) return std::nullopt;
  std::vector<int> image(set1.size());
  for (int r = 1; r < delta; ++r) {
    if (std::gcd(r, delta) != 1) continue;
    for (int x = 0; x < delta; ++x) {
      for (std::size_t i = 0; i < set1.size(); ++i)
        image[i] = static_cast<int>((1LL * r * set1[i] + x) % delta);
      std::sort(image.begin(), image.end());
      if (image == set2) return std::make_pair(r, x);
    }
  }
  return std::nullopt;
}

inline std::optional<std::pair<int, int>> are_equivalent(
    DifferenceSet const& d1, DifferenceSet const& d2) {
  if (d1.delta != d2.delta)
    throw Error("ModulusMismatch", "difference sets live in different Z/dZ");
  return find_equivalence(d1.elements, d2.elements, d1.delta);
}

// Lexicographically smallest sorted element list in the (r, x)-orbit of d.
inline std::vector<int> canonical_form(DifferenceSet const& d) {
  std::vector<int> best = d.elements;
  std::vector<int> image(d.elements.size());
  for (int r = 1; r < d.delta; ++r) {
    if (std::gcd(r, d.delta) != 1) continue;
    for (int x = 0; x < d.delta; ++x) {
      for (std::size_t i = 0; i < d.elements.size(); ++i)
        image[i] = static_cast<int>((1LL * r * d.elements[i] + x) % d.delta);
      std::sort(image.begin(), image.end());
      if (image < best) best = image;
    }
  }
  return best;
}

namespace detail {

inline bool prime_power(int q, int& p, int& n) {
  if (q < 2) return false;
  for (int f = 2; f * f <= q; ++f) {
    if (q % f == 0) {
      int m = q;
      n = 0;
      while (m % f == 0) {
        m /= f;
        ++n;
      }
      p = f;
      return m == 1;
    }
  }
  p = q;
  n = 1;
  return true;
}

}  // namespace detail

// Singer's construction: points of PG(2,q) are the powers of a primitive
// element theta of GF(q^3) modulo scalars, and the chosen line is the
// trace-zero hyperplane over GF(q). The exponents i with Tr(theta^i) = 0,
// taken mod delta and rebased to contain 0, form a difference set of
// order q.
inline BasedDifferenceSet singer_difference_set(int q) {
  int p = 0, n = 0;
  if (!detail::prime_power(q, p, n))
    throw Error("NotPrimePower", std::to_string(q) + " is not a prime power");
  if (q > 64) throw Error("OutOfRange", "q must be at most 64");
  int delta = q * q + q + 1;
  GaloisField field(p, 3 * n);
  FieldElem theta = field.primitive_element();
  std::vector<int> exponents;
  FieldElem power = field.one();
  for (int i = 0; i < delta; ++i) {
    // Tr(a) = a + a^q + a^{q^2}, the trace from GF(q^3) to GF(q).
    FieldElem aq = field.pow(power, q);
    FieldElem trace = field.add(field.add(power, aq), field.pow(aq, q));
    if (field.is_zero(trace)) exponents.push_back(i);
    power = field.mul(power, theta);
  }
  return rebase(difference_set(std::move(exponents), delta));
}

// Exhaustively classifies all (q+1)-subsets of Z/deltaZ up to the r*D + x
// equivalence; returns one canonical representative per class, sorted, plus
// the number of subsets examined.
struct DiffSetClasses {
  std::vector<DifferenceSet> representatives;
  long long subsets_examined = 0;
};

inline DiffSetClasses enumerate_difference_sets(int q) {
  if (q < 1 || q > 5) throw Error("TooLarge", "classification supported for 1 <= q <= 5");
  int delta = q * q + q + 1;
  int k = q + 1;
  DiffSetClasses out;
  std::vector<std::vector<int>> canonicals;
  std::vector<int> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  std::vector<int> count(delta);
  auto valid = [&](std::vector<int> const& s) {
    std::fill(count.begin(), count.end(), 0);
    for (int a : s)
      for (int b : s)
        if (a != b && ++count[((a - b) % delta + delta) % delta] > 1) return false;
    return true;
  };
  while (true) {
    ++out.subsets_examined;
    if (valid(subset)) {
      auto canon = canonical_form(difference_set(subset, delta));
      if (std::find(canonicals.begin(), canonicals.end(), canon) == canonicals.end())
        canonicals.push_back(canon);
    }
    // next k-combination of {0, ..., delta-1}
    int i = k - 1;
    while (i >= 0 && subset[i] == delta - k + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  std::sort(canonicals.begin(), canonicals.end());
  for (auto& c : canonicals)
    out.representatives.push_back(difference_set(std::move(c), delta));
  return out;
}

// Serialization: `diffset q=<q> delta=<delta> : d0 d1 ... dq`.
inline std::string to_line(DifferenceSet const& d) {
  std::ostringstream os;
  os << "diffset q=" << d.q << " delta=" << d.delta << " :";
  for (int e : d.elements) os << ' ' << e;
  return os.str();
}

}  // namespace singer
