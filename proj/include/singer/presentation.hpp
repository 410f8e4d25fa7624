// Group presentations: freely reduced words over named generators, the
// universal and fundamental groups of Singer polygons and Singer graphs,
// the lattice presentation read off a gluing matrix (one generator a_<s>_<t>
// per oriented edge; power relators (a_st)^delta(st) with delta(st) = q+1
// for m_st = 2 and q^2+q+1 for m_st = 3; and, per defining-graph cycle and
// per n in {1..q}, the relator multiplying (a_st)^{n(st)} along the cycle,
// a reversed traversal contributing the inverse power), plus elementary
// Tietze simplification.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "singer/error.hpp"
#include "singer/polygons.hpp"
#include "singer/weyl.hpp"

namespace singer {

struct Syllable {
  std::string gen;
  int exp = 0;  // nonzero

  friend bool operator==(Syllable const& a, Syllable const& b) {
    return a.gen == b.gen && a.exp == b.exp;
  }
};

struct Word {
  std::vector<Syllable> syllables;

  bool empty() const { return syllables.empty(); }

  friend bool operator==(Word const& a, Word const& b) {
    return a.syllables == b.syllables;
  }
};

inline Word free_reduce(Word w) {
  std::vector<Syllable> out;
  for (auto const& s : w.syllables) {
    if (s.exp == 0) continue;
    if (!out.empty() && out.back().gen == s.gen) {
      out.back().exp += s.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return {std::move(out)};
}

inline Word inverse(Word const& w) {
  Word inv;
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
    inv.syllables.push_back({it->gen, -it->exp});
  return inv;
}

inline Word concat(Word a, Word const& b) {
  a.syllables.insert(a.syllables.end(), b.syllables.begin(), b.syllables.end());
  return free_reduce(std::move(a));
}

inline Word power(Word const& w, int e) {
  Word out;
  Word const& base = e >= 0 ? w : inverse(w);
  for (int i = 0; i < std::abs(e); ++i)
    out.syllables.insert(out.syllables.end(), base.syllables.begin(), base.syllables.end());
  return free_reduce(std::move(out));
}

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;  // freely reduced
};

namespace detail {

inline std::string gen_g(int n, std::string const& sigma) {
  return "g_" + std::to_string(n) + "_" + sigma;
}

inline std::string gen_a(std::string const& s, std::string const& t) {
  return "a_" + s + "_" + t;
}

}  // namespace detail

// Universal group of a Singer cyclic polygon: generators g_(n,s), g_(n,t)
// for n in C* (digon) or D* (triangle) and a, with relators a^K and
// a^n g_(n,t) g_(n,s)^-1, K = k or delta.
inline GroupPresentation universal_presentation_polygon(SingerPolygon const& p) {
  GroupPresentation pres;
  std::vector<int> star;
  for (int v : p.chambers)
    if (v != 0) star.push_back(v);
  for (int n : star) {
    pres.generators.push_back(detail::gen_g(n, p.labels[0]));
    pres.generators.push_back(detail::gen_g(n, p.labels[1]));
  }
  pres.generators.push_back("a");
  pres.relators.push_back(free_reduce({{{"a", p.modulus}}}));
  for (int n : star)
    pres.relators.push_back(free_reduce({{{"a", n},
                                          {detail::gen_g(n, p.labels[1]), 1},
                                          {detail::gen_g(n, p.labels[0]), -1}}}));
  return pres;
}

// Eliminates a generator that occurs exactly once, with exponent +-1, in
// some relator; the relator is solved for it and substituted everywhere.
// Deterministic choice: first eligible relator in order; within it the
// candidate with the fewest occurrences in other relators, ties broken by
// first position in the word. Runs to a fixed point. Preserves the group's
// isomorphism class (and in particular its abelianization).
inline GroupPresentation simplify(GroupPresentation pres) {
  auto occurrences = [](Word const& w, std::string const& gen) {
    int count = 0;
    for (auto const& s : w.syllables)
      if (s.gen == gen) count += std::abs(s.exp);
    return count;
  };
  for (auto& r : pres.relators) r = free_reduce(std::move(r));
  while (true) {
    // Drop trivial relators.
    pres.relators.erase(
        std::remove_if(pres.relators.begin(), pres.relators.end(),
                       [](Word const& w) { return w.empty(); }),
        pres.relators.end());
    std::optional<std::size_t> rel_index;
    std::optional<std::size_t> syl_index;
    int best_cost = 0;
    for (std::size_t ri = 0; ri < pres.relators.size() && !rel_index; ++ri) {
      auto const& syls = pres.relators[ri].syllables;
      for (std::size_t si = 0; si < syls.size(); ++si) {
        if (std::abs(syls[si].exp) != 1) continue;
        if (occurrences(pres.relators[ri], syls[si].gen) != 1) continue;
        int cost = 0;
        for (std::size_t rj = 0; rj < pres.relators.size(); ++rj)
          if (rj != ri) cost += occurrences(pres.relators[rj], syls[si].gen);
        if (!rel_index || cost < best_cost) {
          rel_index = ri;
          syl_index = si;
          best_cost = cost;
        }
      }
      if (rel_index) break;
    }
    if (!rel_index) break;

    Word relator = pres.relators[*rel_index];
    // Rotate the chosen syllable to the front: relator = x^e * rest.
    std::rotate(relator.syllables.begin(), relator.syllables.begin() + *syl_index,
                relator.syllables.end());
    std::string gen = relator.syllables.front().gen;
    int e = relator.syllables.front().exp;
    Word rest{{relator.syllables.begin() + 1, relator.syllables.end()}};
    // x^e * rest = 1  =>  x = (rest^-1)^e.
    Word replacement = e == 1 ? inverse(rest) : free_reduce(std::move(rest));

    pres.relators.erase(pres.relators.begin() + *rel_index);
    pres.generators.erase(
        std::remove(pres.generators.begin(), pres.generators.end(), gen),
        pres.generators.end());
    for (auto& r : pres.relators) {
      Word substituted;
      for (auto const& s : r.syllables) {
        if (s.gen == gen) {
          Word piece = power(replacement, s.exp);
          substituted.syllables.insert(substituted.syllables.end(),
                                       piece.syllables.begin(), piece.syllables.end());
        } else {
          substituted.syllables.push_back(s);
        }
      }
      r = free_reduce(std::move(substituted));
    }
  }
  return pres;
}

// Fundamental group: quotient the spanning tree {g_(n,t)} out of the
// universal group and simplify. For the standard quotients this reaches
// <a | a^K> mechanically.
inline GroupPresentation fundamental_presentation_polygon(SingerPolygon const& p) {
  GroupPresentation pres = universal_presentation_polygon(p);
  std::vector<std::string> tree;
  for (int v : p.chambers)
    if (v != 0) tree.push_back(detail::gen_g(v, p.labels[1]));
  pres.generators.erase(
      std::remove_if(pres.generators.begin(), pres.generators.end(),
                     [&](std::string const& g) {
                       return std::find(tree.begin(), tree.end(), g) != tree.end();
                     }),
      pres.generators.end());
  for (auto& r : pres.relators) {
    Word filtered;
    for (auto const& s : r.syllables)
      if (std::find(tree.begin(), tree.end(), s.gen) == tree.end())
        filtered.syllables.push_back(s);
    r = free_reduce(std::move(filtered));
  }
  return simplify(std::move(pres));
}

// Universal group of the Singer graph W: generators g_(n,sigma) for n in
// C*, sigma in S, and a_st per oriented edge; relators (a_st)^delta(st) and
// (a_st)^{n(st)} g_(n,t) g_(n,s)^-1.
inline GroupPresentation universal_presentation_weyl(WeylGraphData const& w) {
  GroupPresentation pres;
  int k = w.q + 1;
  int delta = w.q * w.q + w.q + 1;
  for (int n = 1; n <= w.q; ++n)
    for (auto const& sigma : w.vertices)
      pres.generators.push_back(detail::gen_g(n, sigma));
  for (auto const& r : w.residues)
    pres.generators.push_back(detail::gen_a(r.from, r.to));
  for (auto const& r : w.residues)
    pres.relators.push_back(
        free_reduce({{{detail::gen_a(r.from, r.to), r.m == 2 ? k : delta}}}));
  for (auto const& r : w.residues)
    for (int n = 1; n <= w.q; ++n)
      pres.relators.push_back(free_reduce({{{detail::gen_a(r.from, r.to), r.omega[n]},
                                            {detail::gen_g(n, r.to), 1},
                                            {detail::gen_g(n, r.from), -1}}}));
  return pres;
}

// One multiplicand of a cycle relator: the column traversed, and whether
// the traversal runs with or against its orientation.
struct CycleFactor {
  std::size_t column = 0;
  bool forward = true;
};

inline std::vector<CycleFactor> cycle_factors(GluingMatrix const& g,
                                              std::vector<std::string> const& cycle) {
  std::vector<CycleFactor> factors;
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
    bool found = false;
    for (std::size_t ci = 0; ci < g.columns.size(); ++ci) {
      auto const& c = g.columns[ci];
      if (c.from == cycle[i] && c.to == cycle[i + 1]) {
        factors.push_back({ci, true});
        found = true;
        break;
      }
      if (c.from == cycle[i + 1] && c.to == cycle[i]) {
        factors.push_back({ci, false});
        found = true;
        break;
      }
    }
    if (!found)
      throw Error("NoSuchEdge", "cycle step {" + cycle[i] + "," + cycle[i + 1] +
                                    "} is not an edge of L");
  }
  return factors;
}

inline Word cycle_relator(GluingMatrix const& g, std::vector<std::string> const& cycle,
                          int n) {
  Word w;
  for (auto const& f : cycle_factors(g, cycle)) {
    auto const& c = g.columns[f.column];
    int e = c.entries[n - 1];
    w.syllables.push_back({detail::gen_a(c.from, c.to), f.forward ? e : -e});
  }
  return free_reduce(std::move(w));
}

// The lattice presentation read off a gluing matrix. Generators follow the
// column order of the input; relators are the power relators first, then
// the cycle relators ordered by (cycle index, n). Relators that reduce to
// nothing, or duplicate an earlier relator, are dropped.
inline GroupPresentation lattice_presentation(GluingMatrix const& g) {
  auto report = validate_gluing(g);
  if (!report.valid) throw Error("InvalidGluing", report.message);
  int k = g.q + 1;
  int delta = g.q * g.q + g.q + 1;
  GroupPresentation pres;
  for (auto const& c : g.columns) pres.generators.push_back(detail::gen_a(c.from, c.to));
  auto push_unique = [&pres](Word w) {
    if (w.empty()) return;
    if (std::find(pres.relators.begin(), pres.relators.end(), w) == pres.relators.end())
      pres.relators.push_back(std::move(w));
  };
  for (auto const& c : g.columns) {
    int m = *g.edge_label(c.from, c.to);
    push_unique(free_reduce({{{detail::gen_a(c.from, c.to), m == 2 ? k : delta}}}));
  }
  for (auto const& cycle : cycle_basis(defining_graph(g)))
    for (int n = 1; n <= g.q; ++n) push_unique(cycle_relator(g, cycle, n));
  return pres;
}

// Substitutes (a_st)^{+-n(st)} -> (g_(n,s) g_(n,t)^-1)^{+-1} factor by
// factor in a cycle relator and checks that the product telescopes to the
// empty word, i.e. that the relator is derivable in the universal group.
inline bool cycle_relator_telescopes(GluingMatrix const& g,
                                     std::vector<std::string> const& cycle, int n) {
  Word substituted;
  for (auto const& f : cycle_factors(g, cycle)) {
    auto const& c = g.columns[f.column];
    Word piece{{{detail::gen_g(n, c.from), 1}, {detail::gen_g(n, c.to), -1}}};
    if (!f.forward) piece = inverse(piece);
    substituted = concat(std::move(substituted), piece);
  }
  return substituted.empty();
}

// --- presentation text format ----------------------------------------------
//
//   gen a_s_t
//   rel a_s_t^7
//   rel a_s_t^1 a_t_u^1 a_u_s^1
//
// Exponents are signed integers and always written.

inline std::string to_text(GroupPresentation const& p) {
  std::ostringstream os;
  for (auto const& g : p.generators) os << "gen " << g << "\n";
  for (auto const& r : p.relators) {
    os << "rel";
    for (auto const& s : r.syllables) os << ' ' << s.gen << '^' << s.exp;
    os << "\n";
  }
  return os.str();
}

inline GroupPresentation parse_presentation(std::istream& in) {
  GroupPresentation p;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::string word;
    if (!(is >> word)) continue;
    auto bad = [&](std::string const& why) {
      return Error("ParseError", "line " + std::to_string(lineno) + ": " + why);
    };
    if (word == "gen") {
      std::string name;
      if (!(is >> name)) throw bad("expected: gen <name>");
      if (std::find(p.generators.begin(), p.generators.end(), name) != p.generators.end())
        throw bad("generator '" + name + "' declared twice");
      p.generators.push_back(name);
    } else if (word == "rel") {
      Word w;
      std::string tok;
      while (is >> tok) {
        auto caret = tok.rfind('^');
        if (caret == std::string::npos || caret == 0 || caret + 1 == tok.size())
          throw bad("expected <name>^<exp>, got '" + tok + "'");
        Syllable s;
        s.gen = tok.substr(0, caret);
        try {
          s.exp = std::stoi(tok.substr(caret + 1));
        } catch (std::exception const&) {
          throw bad("bad exponent in '" + tok + "'");
        }
        if (std::find(p.generators.begin(), p.generators.end(), s.gen) == p.generators.end())
          throw bad("relator uses undeclared generator '" + s.gen + "'");
        w.syllables.push_back(std::move(s));
      }
      p.relators.push_back(free_reduce(std::move(w)));
    } else {
      throw bad("unknown directive '" + word + "'");
    }
  }
  return p;
}

}  // namespace singer
