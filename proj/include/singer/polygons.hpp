// Singer cyclic polygons: the quotients of D(q) and T(D) by their standard
// cyclic panel-regular actions, realized as explicit chamber sets with
// defining suites (closed galleries based at chamber 0). Flowers determine
// the suites: a petal based at x pairs the half-gallery [x -s> y -t> z] with
// the unique [x -t> y' -s> z] satisfying y' = x - y + z in a digon, and
// analogously [C -s> x -t> y -s> z] with [C -t> x' -s> y' -t> z] where
// x' - y' = C - x + y - z in a triangle.

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "singer/chambers.hpp"
#include "singer/diffsets.hpp"
#include "singer/error.hpp"

namespace singer {

// A quotient polygon. Chambers are residue labels; for a digon they are
// 0..k-1 (arithmetic mod k), for a triangle the elements of a based
// difference set (arithmetic mod delta). Suites are chamber sequences of
// length 2m+1 starting and ending at 0, with labels alternating
// labels[0], labels[1], ...
struct SingerPolygon {
  int gonality = 2;  // m
  int q = 0;
  int modulus = 0;  // k = q+1 (digon) or delta = q^2+q+1 (triangle)
  std::vector<int> chambers;           // sorted, contains 0
  std::array<std::string, 2> labels{"s", "t"};
  std::vector<std::vector<int>> suites;
};

// The q^2 defining suites [0 -s> y -t> z -s> (z-y) -t> 0], 0 != y != z.
inline SingerPolygon quotient_digon(int q) {
  if (q < 1) throw Error("OutOfRange", "digon order must be >= 1");
  SingerPolygon p;
  p.gonality = 2;
  p.q = q;
  p.modulus = q + 1;
  for (int x = 0; x <= q; ++x) p.chambers.push_back(x);
  for (int y = 1; y <= q; ++y)
    for (int z = 0; z <= q; ++z) {
      if (z == y) continue;
      int w = ((z - y) % p.modulus + p.modulus) % p.modulus;
      p.suites.push_back({0, y, z, w, 0});
    }
  return p;
}

namespace detail {

// pair_of_diff[n] = the unique (a, b) in D x D with a - b = n, n != 0.
inline std::vector<std::pair<int, int>> difference_pairs(DifferenceSet const& d) {
  std::vector<std::pair<int, int>> pairs(d.delta, {-1, -1});
  for (int a : d.elements)
    for (int b : d.elements)
      if (a != b) pairs[((a - b) % d.delta + d.delta) % d.delta] = {a, b};
  return pairs;
}

}  // namespace detail

// The q^3 defining suites [0 -s> x -t> y -s> z -t> y' -s> x' -t> 0] over
// x, y, z in D with 0 != x != y != z, where (x', y') is the unique D-pair
// with y' - x' = x - y + z.
inline SingerPolygon quotient_triangle(BasedDifferenceSet const& d) {
  SingerPolygon p;
  p.gonality = 3;
  p.q = d.set.q;
  p.modulus = d.set.delta;
  p.chambers = d.set.elements;
  auto pairs = detail::difference_pairs(d.set);
  for (int x : d.set.elements) {
    if (x == 0) continue;
    for (int y : d.set.elements) {
      if (y == x) continue;
      for (int z : d.set.elements) {
        if (z == y) continue;
        int n = ((x - y + z) % p.modulus + p.modulus) % p.modulus;
        auto [yp, xp] = pairs[n];  // yp - xp = n
        p.suites.push_back({0, x, y, z, yp, xp, 0});
      }
    }
  }
  return p;
}

// A petal: two equivalent half-galleries from the same base chamber, the
// first labelled s,t,... and the second t,s,...
struct Petal {
  std::vector<int> half_s;  // base first
  std::vector<int> half_t;
};

inline std::vector<Petal> flower(SingerPolygon const& p, int base) {
  if (std::find(p.chambers.begin(), p.chambers.end(), base) == p.chambers.end())
    throw Error("ChamberNotFound", std::to_string(base) + " is not a chamber");
  std::vector<Petal> petals;
  int mod = p.modulus;
  if (p.gonality == 2) {
    for (int y : p.chambers) {
      if (y == base) continue;
      for (int z : p.chambers) {
        if (z == y) continue;
        int yp = ((base - y + z) % mod + mod) % mod;
        petals.push_back({{base, y, z}, {base, yp, z}});
      }
    }
  } else {
    DifferenceSet d;
    d.q = p.q;
    d.delta = p.modulus;
    d.elements = p.chambers;
    auto pairs = detail::difference_pairs(d);
    for (int x : p.chambers) {
      if (x == base) continue;
      for (int y : p.chambers) {
        if (y == x) continue;
        for (int z : p.chambers) {
          if (z == y) continue;
          int n = ((base - x + y - z) % mod + mod) % mod;
          auto [xp, yp] = pairs[n];  // xp - yp = n
          petals.push_back({{base, x, y, z}, {base, xp, yp, z}});
        }
      }
    }
  }
  return petals;
}

// Checks that a suite is a closed gallery at 0 over the polygon's chambers
// with distinct consecutive entries.
inline bool suite_well_formed(SingerPolygon const& p, std::vector<int> const& suite) {
  if (static_cast<int>(suite.size()) != 2 * p.gonality + 1) return false;
  if (suite.front() != 0 || suite.back() != 0) return false;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    if (std::find(p.chambers.begin(), p.chambers.end(), suite[i]) == p.chambers.end())
      return false;
    if (i > 0 && suite[i] == suite[i - 1]) return false;
  }
  return true;
}

// Covering verification for the standard quotients: the fiber over a
// quotient chamber v is the set of chambers (x, y) of `total` with
// y - x = v. Checks that fibers are exactly the orbits of the action, that
// every panel of `total` meets every fiber exactly once, and that each
// defining suite lifts to a closed gallery from every chamber of the fiber
// over 0.
inline bool verify_covering(ChamberSystem const& total, CyclicAction const& a,
                            SingerPolygon const& quotient) {
  if (!verify_panel_regular(total, a))
    throw Error("PreconditionViolated", "action is not panel-regular");
  if (static_cast<int>(quotient.chambers.size()) * a.order != total.size())
    throw Error("PreconditionViolated", "chamber counts do not multiply up");
  if (total.mod_first != total.mod_second || total.mod_first != quotient.modulus ||
      a.order != quotient.modulus)
    throw Error("PreconditionViolated", "moduli do not match");

  int mod = quotient.modulus;
  std::vector<int> fiber_label(total.size());
  std::map<int, std::vector<int>> fibers;
  for (int i = 0; i < total.size(); ++i) {
    int v = ((total.coords[i].second - total.coords[i].first) % mod + mod) % mod;
    fiber_label[i] = v;
    fibers[v].push_back(i);
  }
  for (int v : quotient.chambers)
    if (static_cast<int>(fibers[v].size()) != a.order) return false;
  // Orbits must respect fibers.
  for (int i = 0; i < total.size(); ++i)
    if (fiber_label[a.generator[i]] != fiber_label[i]) return false;
  // Each panel must meet each fiber exactly once.
  for (int label = 0; label < 2; ++label)
    for (auto const& panel : total.panels[label]) {
      std::vector<int> seen;
      for (int i : panel) seen.push_back(fiber_label[i]);
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
      if (seen.size() != quotient.chambers.size()) return false;
    }

  // Suite lifting. A step to quotient chamber v lifts from chamber T to the
  // unique chamber of T's panel lying in the fiber over v.
  auto lift_step = [&](int from, int label, int v) -> int {
    int found = -1;
    for (int i : total.panels[label][total.panel_of[label][from]])
      if (fiber_label[i] == v) {
        if (found >= 0) return -1;
        found = i;
      }
    return found;
  };
  for (auto const& suite : quotient.suites) {
    if (!suite_well_formed(quotient, suite)) return false;
    for (int start : fibers[0]) {
      int at = start;
      for (std::size_t step = 1; step < suite.size(); ++step) {
        at = lift_step(at, static_cast<int>((step - 1) % 2), suite[step]);
        if (at < 0) return false;
      }
      if (at != start) return false;
    }
  }
  return true;
}

// The rotation x -> x + r of the quotient digon. Checks that every defining
// suite maps to a flower-consistent closed gallery.
inline std::map<int, int> rotation_automorphism(SingerPolygon const& p, int r) {
  if (p.gonality != 2)
    throw Error("UnsupportedChamberSystem", "rotations apply to quotient digons");
  int mod = p.modulus;
  std::map<int, int> rho;
  for (int x : p.chambers) rho[x] = ((x + r) % mod + mod) % mod;
  for (auto const& suite : p.suites) {
    // Image suite [x0 -s> y -t> z -s> w -t> x0] must satisfy w = x0 - y + z.
    int x0 = rho[suite[0]], y = rho[suite[1]], z = rho[suite[2]], w = rho[suite[3]];
    if (w != ((x0 - y + z) % mod + mod) % mod)
      throw Error("Internal", "rotation image violates the flower law");
  }
  return rho;
}

// Result of normalizing a Singer cyclic polygon: the canonical quotient it
// is isomorphic to, and the chamber bijection (sending the requested
// chamber to 0) that carries suites to flower-consistent cycles.
struct NormalizedPolygon {
  SingerPolygon canonical;
  std::map<int, int> bijection;
};

namespace detail {

// The flower law transported through phi, at the image of the suite base.
// Suites of p are based at chamber 0 of p, which phi need not fix; the image
// suite must satisfy the petal law at base phi(0).
inline bool bijection_preserves_flowers(SingerPolygon const& p, int gonality,
                                        int target_mod,
                                        std::map<int, int> const& phi) {
  auto norm = [target_mod](long long v) {
    return static_cast<int>(((v % target_mod) + target_mod) % target_mod);
  };
  for (auto const& suite : p.suites) {
    if (gonality == 2) {
      long long b = phi.at(suite[0]), y = phi.at(suite[1]), z = phi.at(suite[2]);
      if (phi.at(suite[3]) != norm(b - y + z)) return false;
    } else {
      long long b = phi.at(suite[0]), x = phi.at(suite[1]), y = phi.at(suite[2]),
                z = phi.at(suite[3]), yp = phi.at(suite[4]), xp = phi.at(suite[5]);
      if (norm(xp - yp) != norm(b - x + y - z)) return false;
    }
  }
  return true;
}

}  // namespace detail

// Finds a canonical model and a flower-preserving chamber bijection sending
// c to 0. Digons first try the rotation x -> x - c; pulled-back residues
// that a rotation cannot straighten fall back to an exhaustive search over
// bijections constrained by the flower law. Triangles whose chambers
// already form a based difference set are normalized through the
// equivalence witnesses d -> r (d - c), picking the r whose image set is
// lexicographically smallest; otherwise all based difference sets of order
// q and all chamber bijections are searched in lexicographic order.
inline NormalizedPolygon normalize_polygon(SingerPolygon const& p, int c) {
  if (std::find(p.chambers.begin(), p.chambers.end(), c) == p.chambers.end())
    throw Error("ChamberNotFound", std::to_string(c) + " is not a chamber");
  for (auto const& suite : p.suites)
    if (!suite_well_formed(p, suite))
      throw Error("NotSingerCyclic", "malformed defining suite");

  if (p.gonality == 2) {
    int k = p.q + 1;
    // Rotation attempt (valid whenever p is the standard quotient).
    {
      std::map<int, int> rho;
      bool applicable = static_cast<int>(p.chambers.size()) == k && p.modulus == k;
      if (applicable) {
        for (int x : p.chambers) rho[x] = ((x - c) % k + k) % k;
        if (detail::bijection_preserves_flowers(p, 2, k, rho))
          return {quotient_digon(p.q), std::move(rho)};
      }
    }
    // Constrained exhaustive search over bijections with phi(c) = 0.
    std::vector<int> sources;
    for (int x : p.chambers)
      if (x != c) sources.push_back(x);
    std::vector<int> targets;
    for (int v = 1; v < k; ++v) targets.push_back(v);
    std::sort(targets.begin(), targets.end());
    do {
      std::map<int, int> phi;
      phi[c] = 0;
      for (std::size_t i = 0; i < sources.size(); ++i) phi[sources[i]] = targets[i];
      if (detail::bijection_preserves_flowers(p, 2, k, phi))
        return {quotient_digon(p.q), std::move(phi)};
    } while (std::next_permutation(targets.begin(), targets.end()));
    throw Error("NotSingerCyclic", "no flower-preserving digon normalization");
  }

  int delta = p.q * p.q + p.q + 1;
  // Witness path: chambers already form a based difference set and the
  // suites obey the standard law in the polygon's own coordinates.
  if (p.modulus == delta) {
    auto rep = verify_difference_set(p.chambers, delta);
    if (rep.valid && !p.chambers.empty() && p.chambers.front() == 0) {
      std::map<int, int> ident;
      for (int d : p.chambers) ident[d] = d;
      if (detail::bijection_preserves_flowers(p, 3, delta, ident)) {
        std::optional<int> best_r;
        std::vector<int> best;
        for (int r = 1; r < delta; ++r) {
          if (std::gcd(r, delta) != 1) continue;
          std::vector<int> image;
          for (int d : p.chambers)
            image.push_back(static_cast<int>(((1LL * r * (d - c)) % delta + delta) % delta));
          std::sort(image.begin(), image.end());
          if (!best_r || image < best) {
            best_r = r;
            best = image;
          }
        }
        std::map<int, int> phi;
        for (int d : p.chambers)
          phi[d] = static_cast<int>(((1LL * *best_r * (d - c)) % delta + delta) % delta);
        auto target = based_difference_set(difference_set(best, delta));
        return {quotient_triangle(target), std::move(phi)};
      }
    }
  }
  // General path: search based difference sets and bijections.
  std::vector<int> sources;
  for (int x : p.chambers)
    if (x != c) sources.push_back(x);
  std::vector<int> subset(p.q);
  std::iota(subset.begin(), subset.end(), 1);
  while (true) {
    std::vector<int> candidate{0};
    candidate.insert(candidate.end(), subset.begin(), subset.end());
    if (verify_difference_set(candidate, delta).valid) {
      std::vector<int> targets(candidate.begin() + 1, candidate.end());
      std::sort(targets.begin(), targets.end());
      do {
        std::map<int, int> phi;
        phi[c] = 0;
        for (std::size_t i = 0; i < sources.size(); ++i) phi[sources[i]] = targets[i];
        if (detail::bijection_preserves_flowers(p, 3, delta, phi)) {
          auto target = based_difference_set(difference_set(candidate, delta));
          return {quotient_triangle(target), std::move(phi)};
        }
      } while (std::next_permutation(targets.begin(), targets.end()));
    }
    int i = p.q - 1;
    while (i >= 0 && subset[i] == delta - p.q + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < p.q; ++j) subset[j] = subset[j - 1] + 1;
  }
  throw Error("NotSingerCyclic", "no flower-preserving triangle normalization");
}

// Serialization: header `polygon m=<m> q=<q>` then one `suite:` line per
// defining suite with labels interleaved.
inline std::string to_text(SingerPolygon const& p) {
  std::ostringstream os;
  os << "polygon m=" << p.gonality << " q=" << p.q << "\n";
  for (auto const& suite : p.suites) {
    os << "suite: " << suite[0];
    for (std::size_t i = 1; i < suite.size(); ++i)
      os << ' ' << p.labels[(i - 1) % 2] << ' ' << suite[i];
    os << "\n";
  }
  return os.str();
}

}  // namespace singer
